//! Coset enumeration for finitely presented groups.

mod engine;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;
use crate::wordlang::{FlatWord, Presentation, WordError};
use engine::{column, Engine, Relators, UNDEF};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Definitions fill the first gap; every new entry is checked against
    /// the relator conjugates that start with it.
    #[default]
    Felsch,
    /// Relators are scanned row by row with definitions; a lookahead pass
    /// runs when the cap is reached.
    Hlt,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Felsch => "felsch",
            Strategy::Hlt => "hlt",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "felsch" => Ok(Strategy::Felsch),
            "hlt" => Ok(Strategy::Hlt),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_cosets: DEFAULT_MAX_COSETS,
            strategy: Strategy::Felsch,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EnumerationStats {
    pub strategy: Strategy,
    pub cosets_defined: usize,
    pub max_live: usize,
    pub coincidences: usize,
    pub deductions: usize,
    pub lookaheads: usize,
    pub compactions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset cap {cap} exceeded ({live} live, {total} defined)")]
    CapExceeded { cap: usize, live: usize, total: usize },
    #[error("max_cosets must be at least 1")]
    InvalidCap,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("coset {coset} out of range for index {index}")]
    CosetOutOfRange { coset: u32, index: usize },
    #[error("table fails relator {relator} at coset {coset}")]
    NotClosed { coset: u32, relator: usize },
}

/// A closed, standardized coset table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    index: usize,
    entries: Vec<u32>,
    stats: EnumerationStats,
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[FlatWord],
    opts: &EnumerationOptions,
) -> Result<CosetTable, EnumerationError> {
    if opts.max_cosets == 0 {
        return Err(EnumerationError::InvalidCap);
    }
    let ngens = p.generators.len();
    let ncols = 2 * ngens;
    for w in p.relators.iter().chain(subgroup) {
        if let Some(g) = w.max_generator().filter(|&g| g >= ngens) {
            return Err(WordError::Unassigned { generator: g }.into());
        }
    }
    let relators = Relators::new(prepare_relators(&p.relators), ncols);
    let subgroup: Vec<Vec<u32>> = subgroup
        .iter()
        .filter(|w| !w.is_empty())
        .map(|w| w.letters().iter().map(|&l| column(l)).collect())
        .collect();

    let mut e = Engine::new(ncols, opts.max_cosets, opts.strategy);
    match opts.strategy {
        Strategy::Felsch => felsch(&mut e, &relators, &subgroup)?,
        Strategy::Hlt => hlt(&mut e, &relators, &subgroup)?,
    }
    let table = CosetTable {
        generators: p.generators.clone(),
        index: e.live,
        entries: e.standardized(),
        stats: e.stats,
    };
    table.check_closed(&p.relators, &subgroup_words(&subgroup))?;
    Ok(table)
}

fn subgroup_words(cols: &[Vec<u32>]) -> Vec<FlatWord> {
    cols.iter()
        .map(|w| {
            FlatWord::from_letters(w.iter().map(|&c| {
                let l = (c / 2) as i32 + 1;
                if c % 2 == 0 {
                    l
                } else {
                    -l
                }
            }))
        })
        .collect()
}

/// Cyclically reduces, drops empty relators and removes duplicates up to
/// rotation and inversion.
fn prepare_relators(relators: &[FlatWord]) -> Vec<Vec<u32>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in relators {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        let cols: Vec<u32> = r.letters().iter().map(|&l| column(l)).collect();
        let inv: Vec<u32> = cols.iter().rev().map(|c| c ^ 1).collect();
        let canonical = [&cols, &inv]
            .iter()
            .flat_map(|w| {
                (0..w.len()).map(move |k| {
                    let mut rot = w[k..].to_vec();
                    rot.extend_from_slice(&w[..k]);
                    rot
                })
            })
            .min()
            .unwrap();
        if seen.insert(canonical) {
            out.push(cols);
        }
    }
    out
}

fn felsch(e: &mut Engine, relators: &Relators, subgroup: &[Vec<u32>]) -> Result<(), EnumerationError> {
    for s in subgroup {
        e.scan(0, s, true)?;
        e.process_deductions(relators)?;
    }
    let mut from = 0;
    loop {
        e.process_deductions(relators)?;
        if e.should_compact() {
            e.compact();
            from = 0;
        }
        match e.first_gap(from) {
            Some((c, col)) => {
                from = c;
                e.define(c, col)?;
            }
            None if from == 0 => return Ok(()),
            None => from = 0,
        }
    }
}

fn hlt(e: &mut Engine, relators: &Relators, subgroup: &[Vec<u32>]) -> Result<(), EnumerationError> {
    for s in subgroup {
        with_lookahead(e, relators, |e| e.scan(0, s, true))?;
    }
    loop {
        let mut alpha = 0u32;
        let mut defined_any = false;
        while (alpha as usize) < e.rows() {
            if !e.is_live(alpha) {
                alpha += 1;
                continue;
            }
            let before = e.stats.cosets_defined;
            with_lookahead(e, relators, |e| {
                for r in &relators.words {
                    if !e.is_live(alpha) {
                        break;
                    }
                    e.scan(alpha, r, true)?;
                }
                for col in 0..e.ncols as u32 {
                    if !e.is_live(alpha) {
                        break;
                    }
                    if e.get(alpha, col) == UNDEF {
                        e.define(alpha, col)?;
                    }
                }
                Ok(())
            })?;
            defined_any |= e.stats.cosets_defined != before;
            alpha += 1;
            if e.should_compact() {
                let map = e.compact();
                alpha = map[alpha as usize..]
                    .iter()
                    .copied()
                    .find(|&m| m != UNDEF)
                    .unwrap_or(e.rows() as u32);
            }
        }
        // A pass that defines nothing has scanned every relator at every
        // coset of a complete table.
        if !defined_any && e.first_gap(0).is_none() {
            return Ok(());
        }
    }
}

/// Runs `step`; when it hits the cap, runs a lookahead and retries once the
/// live count has dropped.
fn with_lookahead(
    e: &mut Engine,
    relators: &Relators,
    mut step: impl FnMut(&mut Engine) -> Result<(), EnumerationError>,
) -> Result<(), EnumerationError> {
    loop {
        match step(e) {
            Err(EnumerationError::CapExceeded { .. }) => {
                let live = e.live;
                e.lookahead(relators)?;
                if e.live == live {
                    return step(e);
                }
            }
            other => return other,
        }
    }
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn stats(&self) -> &EnumerationStats {
        &self.stats
    }

    fn ncols(&self) -> usize {
        2 * self.generators.len()
    }

    /// Image of `coset` under the signed letter `letter`.
    pub fn act(&self, coset: u32, letter: i32) -> u32 {
        self.entries[coset as usize * self.ncols() + column(letter) as usize]
    }

    /// Image of `coset` under the word `w`.
    pub fn trace(&self, coset: u32, w: &FlatWord) -> Result<u32, EnumerationError> {
        if coset as usize >= self.index {
            return Err(EnumerationError::CosetOutOfRange {
                coset,
                index: self.index,
            });
        }
        if let Some(g) = w.max_generator().filter(|&g| g >= self.generators.len()) {
            return Err(WordError::Unassigned { generator: g }.into());
        }
        Ok(w.letters().iter().fold(coset, |c, &l| self.act(c, l)))
    }

    /// Permutation of the cosets induced by right multiplication by `w`.
    pub fn coset_action(&self, w: &FlatWord) -> Result<Permutation, EnumerationError> {
        let images = (0..self.index as u32)
            .map(|c| self.trace(c, w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Permutation::from_images(images).expect("closed table rows are bijective"))
    }

    /// Permutations induced by each generator, in declaration order.
    pub fn generator_actions(&self) -> Vec<Permutation> {
        (0..self.generators.len())
            .map(|g| {
                self.coset_action(&FlatWord::generator(g))
                    .expect("generator in range")
            })
            .collect()
    }

    /// Verifies that every relator fixes every coset and the subgroup words
    /// fix coset 0.
    pub fn check_closed(
        &self,
        relators: &[FlatWord],
        subgroup: &[FlatWord],
    ) -> Result<(), EnumerationError> {
        for (k, r) in relators.iter().enumerate() {
            for c in 0..self.index as u32 {
                if self.trace(c, r)? != c {
                    return Err(EnumerationError::NotClosed {
                        coset: c,
                        relator: k,
                    });
                }
            }
        }
        for (k, s) in subgroup.iter().enumerate() {
            if self.trace(0, s)? != 0 {
                return Err(EnumerationError::NotClosed {
                    coset: 0,
                    relator: relators.len() + k,
                });
            }
        }
        Ok(())
    }

    /// Tab-separated table: a header, then one row per coset with the
    /// images under each generator and its inverse.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("coset");
        for g in &self.generators {
            out.push_str(&format!("\t{g}\t{g}^-1"));
        }
        out.push('\n');
        for c in 0..self.index {
            out.push_str(&c.to_string());
            for e in &self.entries[c * self.ncols()..(c + 1) * self.ncols()] {
                out.push('\t');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Raw standardized entries, row-major, columns `g, g⁻¹` per generator.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}
