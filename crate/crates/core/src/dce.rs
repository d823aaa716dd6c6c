//! Double cosets `MωN` read off a closed coset table over `M`.
//!
//! Label sequences are 1-indexed symmetric generator labels: `[7, 1, 2]`
//! stands for the coset `M·t₇t₁t₂`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, Permutation, PermutationGroup};
use crate::progenitor::{ControlAction, ProgenitorError, SymmetricGeneratorMap};
use crate::toddcoxeter::{CosetTable, EnumerationError};
use crate::wordlang::FlatWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DceError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Table(#[from] EnumerationError),
    #[error(transparent)]
    Progenitor(#[from] ProgenitorError),
    #[error("label {label} is out of range 1..={degree}")]
    BadLabel { label: usize, degree: usize },
    #[error("control group acts on cosets with order {coset_order}, on labels with order {label_order}")]
    ActionMismatch { coset_order: u64, label_order: u64 },
}

/// One outgoing edge class: a label orbit of `N^{(w)}` and where it leads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelEdge {
    pub labels: Vec<usize>,
    pub destination: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleCoset {
    /// Shortlex-least label sequence reaching this double coset.
    pub representative: Vec<usize>,
    /// Index of the representative coset in the table.
    pub coset: u32,
    /// Number of single cosets.
    pub count: usize,
    pub stabilizer_order: u64,
    /// Generators of `N^{(w)}` on labels, in 1-indexed cycle notation.
    pub stabilizer_generators: Vec<String>,
    pub label_orbits: Vec<Vec<usize>>,
    pub edges: Vec<LabelEdge>,
    #[serde(skip)]
    pub stabilizer: PermutationGroup,
}

impl DoubleCoset {
    /// `[t7t1t2]` style name; `[*]` for the subgroup itself.
    pub fn name(&self) -> String {
        label_name(&self.representative)
    }
}

pub fn label_name(labels: &[usize]) -> String {
    if labels.is_empty() {
        return "[*]".to_string();
    }
    let mut s = String::from("[");
    for l in labels {
        let _ = write!(s, "t{l}");
    }
    s.push(']');
    s
}

/// Symmetric generator labels acting on the cosets of a closed table.
#[derive(Debug, Clone)]
pub struct LabelAction {
    t_actions: Vec<Permutation>,
}

impl LabelAction {
    pub fn new(table: &CosetTable, map: &SymmetricGeneratorMap) -> Result<Self, DceError> {
        let t_actions = (1..=map.degree())
            .map(|i| Ok(table.coset_action(&map.symmetric_generator_word(i)?)?))
            .collect::<Result<Vec<_>, DceError>>()?;
        Ok(LabelAction { t_actions })
    }

    pub fn degree(&self) -> usize {
        self.t_actions.len()
    }

    /// Coset `M·t_{l₁}t_{l₂}⋯`.
    pub fn coset_of(&self, labels: &[usize]) -> Result<u32, DceError> {
        self.trace(0, labels)
    }

    pub fn trace(&self, coset: u32, labels: &[usize]) -> Result<u32, DceError> {
        let mut c = coset;
        for &l in labels {
            if l == 0 || l > self.degree() {
                return Err(DceError::BadLabel {
                    label: l,
                    degree: self.degree(),
                });
            }
            c = self.t_actions[l - 1].image(c);
        }
        Ok(c)
    }

    pub fn t_action(&self, label: usize) -> &Permutation {
        &self.t_actions[label - 1]
    }
}

/// True iff `M·w₁ = M·w₂`.
pub fn words_equivalent(
    labels: &LabelAction,
    w1: &[usize],
    w2: &[usize],
) -> Result<bool, DceError> {
    Ok(labels.coset_of(w1)? == labels.coset_of(w2)?)
}

#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    pub index: usize,
    pub control_order: u64,
    pub double_cosets: Vec<DoubleCoset>,
    orbit_of: Vec<usize>,
    labels: LabelAction,
    combined: PermutationGroup,
}

impl DoubleCosetDecomposition {
    pub fn labels(&self) -> &LabelAction {
        &self.labels
    }

    /// Double coset containing the given coset.
    pub fn double_coset_of_coset(&self, coset: u32) -> usize {
        self.orbit_of[coset as usize]
    }

    /// Double coset containing `M·t_{l₁}t_{l₂}⋯`.
    pub fn double_coset_of(&self, labels: &[usize]) -> Result<usize, DceError> {
        Ok(self.orbit_of[self.labels.coset_of(labels)? as usize])
    }

    pub fn words_equivalent(&self, w1: &[usize], w2: &[usize]) -> Result<bool, DceError> {
        words_equivalent(&self.labels, w1, w2)
    }

    /// Destination double coset counts for the `n` labels at `coset`.
    pub fn edge_profile(&self, coset: u32) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for l in 1..=self.labels.degree() {
            let d = self.orbit_of[self.labels.t_action(l).image(coset) as usize];
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// `N^{(w)}`: the label permutations in `N` fixing the coset `M·w`.
    pub fn stabilizer_of(&self, labels: &[usize]) -> Result<PermutationGroup, DceError> {
        let coset = self.labels.coset_of(labels)?;
        coset_stabilizer(&self.combined, self.labels.degree(), coset)
    }

    /// Cosets lying in double coset `k`, ascending.
    pub fn cosets_in(&self, k: usize) -> Vec<u32> {
        (0..self.index as u32)
            .filter(|&c| self.orbit_of[c as usize] == k)
            .collect()
    }
}

/// Splits the cosets of a closed table over `M ≥ N` into `N`-orbits and
/// computes representatives, coset stabilizers and edges.
pub fn decompose(
    table: &CosetTable,
    action: &ControlAction,
    map: &SymmetricGeneratorMap,
) -> Result<DoubleCosetDecomposition, DceError> {
    let index = table.index();
    let n = action.degree();
    let labels = LabelAction::new(table, map)?;
    let control_cosets = action
        .controls()
        .iter()
        .map(|c| table.coset_action(&FlatWord::generator(c.index)))
        .collect::<Result<Vec<_>, _>>()?;

    // Label action and coset action side by side; the projection to labels
    // is an isomorphism exactly when the orders agree.
    let combined_gens = action
        .controls()
        .iter()
        .zip(&control_cosets)
        .map(|(c, p)| c.permutation.direct_sum(p))
        .collect();
    let combined = PermutationGroup::new(n + index, combined_gens)?;
    let label_order = action.group().order()?;
    let coset_order = combined.order()?;
    if coset_order != label_order {
        return Err(DceError::ActionMismatch {
            coset_order,
            label_order,
        });
    }

    // Breadth-first over t-edges; the first coset reached in each N-orbit
    // represents it.
    const NONE: usize = usize::MAX;
    let mut orbit_of = vec![NONE; index];
    let mut reps: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut word_of: Vec<Option<Vec<usize>>> = vec![None; index];
    word_of[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0u32]);
    let claim = |start: u32, orbit_of: &mut Vec<usize>, k: usize| {
        let mut stack = vec![start];
        orbit_of[start as usize] = k;
        while let Some(c) = stack.pop() {
            for g in &control_cosets {
                let d = g.image(c);
                if orbit_of[d as usize] == NONE {
                    orbit_of[d as usize] = k;
                    stack.push(d);
                }
            }
        }
    };
    claim(0, &mut orbit_of, 0);
    reps.push((0, Vec::new()));
    while let Some(c) = queue.pop_front() {
        let word = word_of[c as usize].clone().unwrap();
        for l in 1..=n {
            let d = labels.t_action(l).image(c);
            if word_of[d as usize].is_some() {
                continue;
            }
            let mut w = word.clone();
            w.push(l);
            if orbit_of[d as usize] == NONE {
                claim(d, &mut orbit_of, reps.len());
                reps.push((d, w.clone()));
            }
            word_of[d as usize] = Some(w);
            queue.push_back(d);
        }
    }

    let mut counts = vec![0usize; reps.len()];
    for &k in &orbit_of {
        counts[k] += 1;
    }
    let mut double_cosets = Vec::with_capacity(reps.len());
    for (k, (coset, representative)) in reps.into_iter().enumerate() {
        let stabilizer = coset_stabilizer(&combined, n, coset)?;
        let stabilizer_order = stabilizer.order()?;
        let label_orbits: Vec<Vec<usize>> = stabilizer
            .orbits()
            .into_iter()
            .map(|o| o.into_iter().map(|p| p as usize + 1).collect())
            .collect();
        let edges = label_orbits
            .iter()
            .map(|o| LabelEdge {
                labels: o.clone(),
                destination: orbit_of[labels.t_action(o[0]).image(coset) as usize],
            })
            .collect();
        double_cosets.push(DoubleCoset {
            representative,
            coset,
            count: counts[k],
            stabilizer_order,
            stabilizer_generators: stabilizer
                .generators()
                .iter()
                .map(Permutation::to_cycle_string)
                .collect(),
            label_orbits,
            edges,
            stabilizer,
        });
    }
    Ok(DoubleCosetDecomposition {
        index,
        control_order: label_order,
        double_cosets,
        orbit_of,
        labels,
        combined,
    })
}

fn coset_stabilizer(
    combined: &PermutationGroup,
    n: usize,
    coset: u32,
) -> Result<PermutationGroup, DceError> {
    let gens: Vec<Permutation> = combined
        .point_stabilizer(n as u32 + coset)?
        .strong_generators()
        .iter()
        .map(|g| g.restrict_prefix(n))
        .filter(|g| !g.is_identity())
        .collect();
    Ok(PermutationGroup::new(n, gens)?)
}

/// An edge of the collapsed graph with the sizes of the label orbits it
/// aggregates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub source: usize,
    pub destination: usize,
    pub multiplicity: usize,
    pub orbit_sizes: Vec<usize>,
}

impl GraphEdge {
    /// Orbit sizes in ascending order joined by `+`, such as `"1+2"`.
    pub fn label(&self) -> String {
        let mut sizes = self.orbit_sizes.clone();
        sizes.sort_unstable();
        sizes
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    pub name: String,
    pub representative: Vec<usize>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapsedCayleyGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

pub fn collapsed_graph(d: &DoubleCosetDecomposition) -> CollapsedCayleyGraph {
    let nodes = d
        .double_cosets
        .iter()
        .map(|dc| GraphNode {
            name: dc.name(),
            representative: dc.representative.clone(),
            count: dc.count,
        })
        .collect();
    let mut edges = Vec::new();
    for (source, dc) in d.double_cosets.iter().enumerate() {
        let mut by_dest: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in &dc.edges {
            by_dest.entry(e.destination).or_default().push(e.labels.len());
        }
        for (destination, orbit_sizes) in by_dest {
            edges.push(GraphEdge {
                source,
                destination,
                multiplicity: orbit_sizes.iter().sum(),
                orbit_sizes,
            });
        }
    }
    CollapsedCayleyGraph { nodes, edges }
}

impl CollapsedCayleyGraph {
    pub fn out_degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.source == node)
            .map(|e| e.multiplicity)
            .sum()
    }

    pub fn multiplicity(&self, source: usize, destination: usize) -> usize {
        self.edges
            .iter()
            .find(|e| e.source == source && e.destination == destination)
            .map_or(0, |e| e.multiplicity)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        if n > 0 {
            seen[0] = true;
        }
        while let Some(v) = stack.pop() {
            for e in self.edges.iter().filter(|e| e.source == v) {
                if !seen[e.destination] {
                    seen[e.destination] = true;
                    stack.push(e.destination);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Graphviz rendering: nodes `"[w] (count)"`, one edge per
    /// (source, destination), loops as self-edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph collapsed {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{} ({})\"];", node.name, node.count);
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{}\"];",
                e.source,
                e.destination,
                e.label()
            );
        }
        s.push_str("}\n");
        s
    }
}
