//! The 22-point model of M22 built from `x`, `y`, `t`, and exhaustive checks
//! of the identities satisfied by its symmetric generators.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, Permutation, PermutationGroup};
use crate::progenitor::{verify_conjugation_action, Progenitor, ProgenitorError};
use crate::toddcoxeter::{enumerate, EnumerationError, EnumerationOptions, Strategy};
use crate::wordlang::{evaluate, parse_presentation_file, Presentation, WordError};

/// The bundled presentation of M22 over the progenitor `2^{*14}:L3(2)`.
pub const M22_PRESENTATION: &str = include_str!("../../../m22.pres");

pub const X_CYCLES: &str = "(1,12,14,10,8,17,15)(2,18,22,13,3,7,9)(5,6,19,21,20,11,16)";
pub const Y_CYCLES: &str = "(2,9)(3,4)(5,6)(7,13)(10,15)(11,19)(12,14)(18,22)";
pub const T_CYCLES: &str = "(2,10)(3,11)(4,19)(5,22)(6,18)(7,14)(9,15)(12,13)";

pub const DEGREE: usize = 22;
pub const ORDER: u64 = 443_520;

/// Live cosets allowed when enumerating the covers; the double cover peaks
/// near 10M over `⟨x,y⟩`.
pub const COVER_MAX_COSETS: usize = 16_000_000;

/// The MOG labeling as a 4×6 array.
pub const MOG: [[u32; 6]; 4] = [
    [24, 14, 17, 11, 22, 19],
    [23, 8, 4, 13, 1, 9],
    [3, 20, 16, 7, 12, 5],
    [15, 18, 10, 2, 21, 6],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Progenitor(#[from] ProgenitorError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("model invariant failed: {0}")]
    Invariant(String),
}

fn invariant(ok: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if ok {
        Ok(())
    } else {
        Err(VerifyError::Invariant(msg()))
    }
}

/// `x`, `y`, `t` on 22 points with the derived symmetric generators `t_i`,
/// the involutions `s_i = t_i t_{i+7}` and the groups `N`, `M`, `G`.
#[derive(Debug, Clone)]
pub struct ConcreteModel {
    pub x: Permutation,
    pub y: Permutation,
    pub t: Permutation,
    /// `t_1..t_14` at indices `0..14`.
    pub ts: Vec<Permutation>,
    /// `s_1..s_7` at indices `0..7`.
    pub s: Vec<Permutation>,
    pub n: PermutationGroup,
    pub m: PermutationGroup,
    pub g: PermutationGroup,
    pub progenitor: Progenitor,
}

/// Builds the model and checks its defining invariants.
pub fn build_model() -> Result<ConcreteModel, VerifyError> {
    let file = parse_presentation_file(M22_PRESENTATION)?;
    let progenitor = Progenitor::from_file(&file)?;
    let x = Permutation::from_cycles(DEGREE, X_CYCLES)?;
    let y = Permutation::from_cycles(DEGREE, Y_CYCLES)?;
    let t = Permutation::from_cycles(DEGREE, T_CYCLES)?;
    let gens = [x.clone(), y.clone(), t.clone()];
    let ts = (1..=14)
        .map(|i| Ok(evaluate(&progenitor.map.symmetric_generator_word(i)?, &gens)?))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let s: Vec<Permutation> = (0..7).map(|i| &ts[i] * &ts[i + 7]).collect();
    let n = PermutationGroup::new(DEGREE, vec![x.clone(), y.clone()])?;
    let m = PermutationGroup::new(DEGREE, vec![x.clone(), y.clone(), s[6].clone()])?;
    let g = PermutationGroup::new(DEGREE, gens.to_vec())?;
    let model = ConcreteModel {
        x,
        y,
        t,
        ts,
        s,
        n,
        m,
        g,
        progenitor,
    };
    invariant(model.n.order()? == 168, || "|N| != 168".into())?;
    invariant(model.m.order()? == 1344, || "|M| != 1344".into())?;
    invariant(model.g.order()? == ORDER, || "|G| != 443520".into())?;
    Ok(model)
}

impl ConcreteModel {
    pub fn generators(&self) -> [Permutation; 3] {
        [self.x.clone(), self.y.clone(), self.t.clone()]
    }

    pub fn presentation(&self) -> &Presentation {
        &self.progenitor.full
    }

    /// `t_i`, 1-indexed.
    pub fn t_(&self, i: usize) -> &Permutation {
        &self.ts[i - 1]
    }

    /// `s_i` for a label `1..=14`, using `s_i = s_{i+7}`.
    pub fn s_(&self, i: usize) -> &Permutation {
        &self.s[(i - 1) % 7]
    }

    /// `t_{i₁} t_{i₂} ⋯` for 1-indexed labels.
    pub fn product(&self, labels: &[usize]) -> Permutation {
        labels
            .iter()
            .fold(Permutation::identity(DEGREE), |acc, &i| &acc * self.t_(i))
    }

    /// Evaluates a word over `x`, `y`, `t`.
    pub fn word(&self, text: &str) -> Result<Permutation, VerifyError> {
        let w = self.presentation().parse(text)?;
        Ok(evaluate(&w, &self.generators())?)
    }

    /// The permutation of labels induced by conjugation,
    /// `t_i^g = t_{i^g}`, or `None` when `g` does not normalize `{t_i}`.
    pub fn label_action(&self, g: &Permutation) -> Option<Permutation> {
        let images = self
            .ts
            .iter()
            .map(|t| {
                let c = t.conjugate_by(g);
                self.ts.iter().position(|u| *u == c).map(|j| j as u32)
            })
            .collect::<Option<Vec<_>>>()?;
        Permutation::from_images(images).ok()
    }

    pub fn in_n(&self, g: &Permutation) -> Result<bool, VerifyError> {
        Ok(self.n.contains(g)?)
    }
}

/// `ī`: the label paired with `i`.
pub fn bar(i: usize) -> usize {
    (i + 6) % 14 + 1
}

/// The Fano point under a label.
pub fn project(i: usize) -> usize {
    (i - 1) % 7 + 1
}

/// Lines of the Fano plane on points `1..=7`, read off from `s_i s_j = s_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanoStructure {
    pub lines: Vec<[usize; 3]>,
}

impl FanoStructure {
    pub fn is_line(&self, points: [usize; 3]) -> bool {
        let mut p = points;
        p.sort_unstable();
        self.lines.contains(&p)
    }

    /// Whether three labels project to three distinct collinear points.
    pub fn collinear(&self, i: usize, j: usize, k: usize) -> bool {
        self.is_line([project(i), project(j), project(k)])
    }

    /// The third point on the line through two distinct points.
    pub fn third(&self, a: usize, b: usize) -> usize {
        let l = self
            .lines
            .iter()
            .find(|l| l.contains(&a) && l.contains(&b))
            .expect("two points lie on a line");
        l.iter().copied().find(|&p| p != a && p != b).unwrap()
    }
}

/// Checks the `s_i` and derives the line set.
pub fn verify_s_structure(m: &ConcreteModel) -> Result<FanoStructure, VerifyError> {
    let id = Permutation::identity(DEGREE);
    for i in 1..=7 {
        let s = m.s_(i);
        invariant(!s.is_identity() && (s * s) == id, || format!("s{i} is not an involution"))?;
        invariant(&m.ts[i + 6] * &m.ts[i - 1] == *s, || format!("s{i} != s{}", i + 7))?;
    }
    for i in 1..=7 {
        for j in i + 1..=7 {
            invariant(m.s_(i).commutes_with(m.s_(j)), || format!("s{i}, s{j} do not commute"))?;
        }
    }
    let e = PermutationGroup::new(DEGREE, m.s.clone())?;
    invariant(e.order()? == 8, || "|<s1..s7>| != 8".into())?;

    let mut lines = BTreeSet::new();
    for i in 1..=7 {
        for j in i + 1..=7 {
            let p = m.s_(i) * m.s_(j);
            let k = (1..=7)
                .find(|&k| *m.s_(k) == p)
                .ok_or_else(|| VerifyError::Invariant(format!("s{i}s{j} is no s_k")))?;
            let mut l = [i, j, k];
            l.sort_unstable();
            lines.insert(l);
        }
    }
    let f = FanoStructure {
        lines: lines.into_iter().collect(),
    };
    invariant(f.lines.len() == 7, || format!("{} lines", f.lines.len()))?;
    for p in 1..=7 {
        let on = f.lines.iter().filter(|l| l.contains(&p)).count();
        invariant(on == 3, || format!("point {p} on {on} lines"))?;
    }
    for (a, la) in f.lines.iter().enumerate() {
        for lb in &f.lines[a + 1..] {
            let meet = la.iter().filter(|p| lb.contains(p)).count();
            invariant(meet == 1, || format!("{la:?} and {lb:?} meet in {meet} points"))?;
        }
    }
    for i in 1..=7 {
        for j in i + 1..=7 {
            let on = f.lines.iter().filter(|l| l.contains(&i) && l.contains(&j)).count();
            invariant(on == 1, || format!("{i}, {j} on {on} lines"))?;
        }
    }
    // Four points with no three collinear pair up into equal products.
    for q in quadruples() {
        let no_three = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .all(|c| !f.is_line([q[c[0]], q[c[1]], q[c[2]]]));
        if !no_three {
            continue;
        }
        for (a, b, c, d) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            let lhs = m.s_(q[a]) * m.s_(q[b]);
            let rhs = m.s_(q[c]) * m.s_(q[d]);
            invariant(lhs == rhs, || {
                format!("s{}s{} != s{}s{}", q[a], q[b], q[c], q[d])
            })?;
        }
    }
    // N permutes the lines transitively.
    let mut orbit = BTreeSet::from([f.lines[0]]);
    let mut frontier = vec![f.lines[0]];
    let moves = [&m.x, &m.y]
        .into_iter()
        .map(|g| {
            m.label_action(g)
                .ok_or_else(|| VerifyError::Invariant("control does not permute the t_i".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    while let Some(l) = frontier.pop() {
        for g in &moves {
            let mut img = l.map(|p| project(g.image(p as u32 - 1) as usize + 1));
            img.sort_unstable();
            invariant(f.is_line(img), || format!("{l:?} maps to non-line {img:?}"))?;
            if orbit.insert(img) {
                frontier.push(img);
            }
        }
    }
    invariant(orbit.len() == 7, || "N is not transitive on lines".into())?;
    Ok(f)
}

fn quadruples() -> impl Iterator<Item = [usize; 4]> {
    (1..=7).flat_map(|a| {
        (a + 1..=7).flat_map(move |b| {
            (b + 1..=7).flat_map(move |c| (c + 1..=7).map(move |d| [a, b, c, d]))
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Alpha,
    Beta,
    Delta,
    Gamma,
    Sigma,
    Epsilon,
}

/// One evaluated member of a relation family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationFamilyWitness {
    pub family: Family,
    pub indices: Vec<usize>,
    pub element: Permutation,
    pub order: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FamilyReport {
    pub witnesses: Vec<RelationFamilyWitness>,
    /// Triples `(i, j, k)` of distinct, non-collinear points for which
    /// `t_i t_j t_k t_i t_j` was tested and found outside `N`.
    pub gamma_separated: usize,
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&self, family: Family) -> usize {
        self.witnesses.iter().filter(|w| w.family == family).count()
    }

    pub fn find(&self, family: Family, indices: &[usize]) -> Option<&RelationFamilyWitness> {
        self.witnesses
            .iter()
            .find(|w| w.family == family && w.indices == indices)
    }
}

/// Ordered label pairs `(i, j)` with `j ∉ {i, ī}`.
fn label_pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=14).flat_map(|i| (1..=14).filter(move |&j| j != i && j != bar(i)).map(move |j| (i, j)))
}

/// Ordered label triples over three distinct points.
fn label_triples() -> impl Iterator<Item = (usize, usize, usize)> {
    label_pairs().flat_map(|(i, j)| {
        (1..=14)
            .filter(move |&k| {
                let pk = project(k);
                pk != project(i) && pk != project(j)
            })
            .map(move |k| (i, j, k))
    })
}

/// Evaluates every relation family over all valid index tuples.
pub fn verify_relation_families(
    m: &ConcreteModel,
    f: &FanoStructure,
) -> Result<FamilyReport, VerifyError> {
    let mut r = FamilyReport::default();
    let record = |r: &mut FamilyReport,
                      family: Family,
                      indices: Vec<usize>,
                      element: Permutation,
                      problems: Vec<String>|
     -> Result<(), VerifyError> {
        let order = element.order();
        if !m.in_n(&element)? {
            r.failures.push(format!("{family:?}{indices:?} not in N"));
        }
        for p in problems {
            r.failures.push(format!("{family:?}{indices:?}: {p}"));
        }
        r.witnesses.push(RelationFamilyWitness {
            family,
            indices,
            element,
            order,
        });
        Ok(())
    };
    let check = |ok: bool, msg: &str| (!ok).then(|| msg.to_string());

    let mut alpha = BTreeMap::new();
    for (i, j) in label_pairs() {
        let a = m.product(&[i, j, i, j, i]);
        let problems = [check(a.order() == 2, "not an involution")];
        alpha.insert((i, j), a.clone());
        record(&mut r, Family::Alpha, vec![i, j], a, problems.into_iter().flatten().collect())?;
    }
    for (&(i, j), a) in &alpha {
        if alpha[&(j, i)] != *a {
            r.failures.push(format!("Alpha[{i}, {j}] != Alpha[{j}, {i}]"));
        }
    }

    for (i, j) in label_pairs() {
        let (ib, jb) = (bar(i), bar(j));
        let b = m.product(&[i, j, ib, jb, i]);
        let problems = [
            check(b.order() == 4, "order is not 4"),
            check(b == m.product(&[jb, i, j, ib, jb]), "second spelling differs"),
        ];
        record(&mut r, Family::Beta, vec![i, j, ib], b, problems.into_iter().flatten().collect())?;
    }

    for (i, j) in label_pairs() {
        let jb = bar(j);
        let d = &(&(m.t_(jb) * m.s_(i)) * m.t_(j)) * m.s_(i);
        let lab = m.label_action(&d);
        let fixes = lab.as_ref().is_some_and(|p| {
            p.fixes(j as u32 - 1)
                && p.fixes(jb as u32 - 1)
                && p.image(i as u32 - 1) == bar(i) as u32 - 1
        });
        let problems = [
            check(d.order() == 2, "not an involution"),
            check(fixes, "does not fix j, j̄ and swap i, ī"),
        ];
        record(&mut r, Family::Delta, vec![i, j], d, problems.into_iter().flatten().collect())?;
    }

    for (i, j, k) in label_triples() {
        let g = m.product(&[i, j, k, i, j]);
        if f.collinear(i, j, k) {
            record(&mut r, Family::Gamma, vec![i, j, k], g, Vec::new())?;
        } else if m.in_n(&g)? {
            r.failures.push(format!("Gamma[{i}, {j}, {k}] in N for a non-collinear triple"));
        } else {
            r.gamma_separated += 1;
        }
    }

    for (i, j, k) in label_triples().filter(|&(i, j, k)| f.collinear(i, j, k)) {
        let e = &m.product(&[i, j, k]) * &m.product(&[i, j, bar(k)]).inverse();
        record(&mut r, Family::Sigma, vec![i, j, k], e, Vec::new())?;
    }

    // t7t1t2t3 = x·t7t6t5t4 and its conjugates under N.
    let mut heads = BTreeSet::new();
    for g in m.n.elements(168)? {
        let lab = m
            .label_action(&g)
            .ok_or_else(|| VerifyError::Invariant("N does not permute the t_i".into()))?;
        let l = |i: usize| lab.image(i as u32 - 1) as usize + 1;
        let lhs = m.product(&[l(7), l(1), l(2), l(3)]);
        let rhs = m.product(&[l(7), l(6), l(5), l(4)]);
        let e = &lhs * &rhs.inverse();
        let problems = [check(e == m.x.conjugate_by(&g), "differs from the conjugate of x")];
        if !heads.insert((l(7), l(6))) {
            r.failures.push(format!("Epsilon head ({}, {}) repeats", l(7), l(6)));
        }
        let indices = vec![l(7), l(1), l(2), l(3), l(6), l(5), l(4)];
        record(&mut r, Family::Epsilon, indices, e, problems.into_iter().flatten().collect())?;
    }
    Ok(r)
}

/// Centralizer and orbit data for `t` under `N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop21Report {
    pub centralizer_order: u64,
    pub class_size: usize,
    pub symmetric_generated_order: u64,
    pub with_t1t8_order: u64,
    pub failures: Vec<String>,
}

impl Prop21Report {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_prop21(m: &ConcreteModel) -> Result<Prop21Report, VerifyError> {
    let elements = m.n.elements(168)?;
    let centralizer_order = elements.iter().filter(|g| g.commutes_with(&m.t)).count() as u64;
    let class: BTreeSet<Permutation> = elements.iter().map(|g| m.t.conjugate_by(g)).collect();
    let all_t: BTreeSet<Permutation> = m.ts.iter().cloned().collect();
    let symmetric_generated_order = PermutationGroup::new(DEGREE, m.ts.clone())?.order()?;
    let mut gens = vec![m.x.clone(), m.y.clone()];
    gens.push(m.t_(1) * m.t_(8));
    let with_t1t8_order = PermutationGroup::new(DEGREE, gens)?.order()?;
    let mut failures = Vec::new();
    if centralizer_order != 12 {
        failures.push(format!("|C_N(t)| = {centralizer_order}"));
    }
    if class.len() != 14 || class != all_t {
        failures.push(format!("t has {} conjugates under N", class.len()));
    }
    if symmetric_generated_order != ORDER {
        failures.push(format!("|<t_i>| = {symmetric_generated_order}"));
    }
    if with_t1t8_order != 1344 {
        failures.push(format!("|<N, t1t8>| = {with_t1t8_order}"));
    }
    Ok(Prop21Report {
        centralizer_order,
        class_size: class.len(),
        symmetric_generated_order,
        with_t1t8_order,
        failures,
    })
}

/// A generating set and the point set its group is claimed to stabilize.
#[derive(Debug, Clone, Copy)]
pub struct MaximalSubgroupSpec {
    pub name: &'static str,
    pub words: &'static [&'static str],
    pub order: u64,
    pub kind: &'static str,
    pub set: &'static [u32],
    /// The set as originally printed, when it differs from `set`.
    pub printed_set: Option<&'static [u32]>,
}

pub const MAXIMAL_SUBGROUPS: [MaximalSubgroupSpec; 8] = [
    MaximalSubgroupSpec {
        name: "L3(4)",
        words: &["x", "t^(x^6*t)"],
        order: 20_160,
        kind: "point",
        set: &[4],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "2^4:A6",
        words: &["x*t", "y^(x^3)"],
        order: 5760,
        kind: "hexad",
        set: &[5, 8, 9, 10, 17, 18],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "A7",
        words: &["x", "t^(x*t*x^4*t)"],
        order: 2520,
        kind: "heptad",
        set: &[1, 8, 10, 12, 14, 15, 17],
        printed_set: Some(&[1, 8, 12, 14, 15, 17, 20]),
    },
    MaximalSubgroupSpec {
        name: "A7",
        words: &["x", "t^(x^3*t*x^6*t)"],
        order: 2520,
        kind: "heptad",
        set: &[5, 6, 11, 16, 19, 20, 21],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "2^4:S5",
        words: &["x*t", "t^(x*y*x^4)"],
        order: 1920,
        kind: "pair",
        set: &[5, 18],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "2^3:L3(2)",
        words: &["x", "y", "t*t^(x^6*y*x)"],
        order: 1344,
        kind: "octad",
        set: &[2, 3, 4, 7, 9, 13, 18, 22],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "M10",
        words: &["x^2*t", "y^(x^4)"],
        order: 720,
        // Called a dodecad, but the set has ten points.
        kind: "decad",
        set: &[2, 4, 5, 11, 12, 16, 18, 19, 20, 22],
        printed_set: None,
    },
    MaximalSubgroupSpec {
        name: "L2(11)",
        words: &["x*y", "t"],
        order: 660,
        kind: "endecad",
        set: &[1, 2, 5, 7, 8, 9, 10, 14, 15, 17, 22],
        printed_set: None,
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSubgroupRow {
    pub name: String,
    pub words: Vec<String>,
    pub expected_order: u64,
    pub order: u64,
    pub kind: String,
    pub set: Vec<u32>,
    pub set_in_mog: bool,
    pub stabilizes: bool,
    pub printed_set: Option<Vec<u32>>,
    pub printed_stabilized: Option<bool>,
}

impl MaximalSubgroupRow {
    pub fn holds(&self) -> bool {
        self.order == self.expected_order && self.stabilizes && self.set_in_mog
    }
}

fn stabilizes(gens: &[Permutation], set: &[u32]) -> bool {
    let zero: Vec<u32> = set.iter().map(|p| p - 1).collect();
    gens.iter().all(|g| g.stabilizes_set(&zero))
}

pub fn verify_maximal_subgroups(m: &ConcreteModel) -> Result<Vec<MaximalSubgroupRow>, VerifyError> {
    let mog: BTreeSet<u32> = MOG.iter().flatten().copied().collect();
    MAXIMAL_SUBGROUPS
        .iter()
        .map(|spec| {
            let gens = spec
                .words
                .iter()
                .map(|w| m.word(w))
                .collect::<Result<Vec<_>, _>>()?;
            let order = PermutationGroup::new(DEGREE, gens.clone())?.order()?;
            Ok(MaximalSubgroupRow {
                name: spec.name.to_string(),
                words: spec.words.iter().map(|w| w.to_string()).collect(),
                expected_order: spec.order,
                order,
                kind: spec.kind.to_string(),
                set: spec.set.to_vec(),
                set_in_mog: spec.set.iter().all(|p| *p as usize <= DEGREE && mog.contains(p)),
                stabilizes: stabilizes(&gens, spec.set),
                printed_set: spec.printed_set.map(|s| s.to_vec()),
                printed_stabilized: spec.printed_set.map(|s| stabilizes(&gens, s)),
            })
        })
        .collect()
}

/// The M22 presentation without one of its relators.
pub fn reduced_presentation(drop: &str) -> Result<Presentation, VerifyError> {
    let mut p = parse_presentation_file(M22_PRESENTATION)?.presentation();
    let target = p.parse(drop)?;
    let before = p.relators.len();
    p.relators.retain(|r| *r != target);
    invariant(p.relators.len() + 1 == before, || format!("no relator {drop}"))?;
    Ok(p)
}

/// Relator dropped for the double cover.
pub const DOUBLE_COVER_DROP: &str = "(y*t^(x^2))^5";
/// Relator dropped for the triple cover.
pub const TRIPLE_COVER_DROP: &str = "(x*t)^8";

fn index_over_n(p: &Presentation, max_cosets: usize) -> Result<usize, VerifyError> {
    let opts = EnumerationOptions {
        strategy: Strategy::Felsch,
        max_cosets,
    };
    let n = p
        .subgroup("N")
        .ok_or_else(|| VerifyError::Invariant("no subgroup N".into()))?;
    Ok(enumerate(p, n, &opts)?.index())
}

/// Indices over `⟨x,y⟩` of the double and triple cover presentations.
pub fn verify_covers(max_cosets: usize) -> Result<(usize, usize), VerifyError> {
    let double = index_over_n(&reduced_presentation(DOUBLE_COVER_DROP)?, max_cosets)?;
    let triple = index_over_n(&reduced_presentation(TRIPLE_COVER_DROP)?, max_cosets)?;
    Ok((double, triple))
}

/// Index over `⟨x,y⟩` of the full presentation.
pub fn control_index(max_cosets: usize) -> Result<usize, VerifyError> {
    index_over_n(&parse_presentation_file(M22_PRESENTATION)?.presentation(), max_cosets)
}

/// Whether the involutions of `N` form a single conjugacy class.
pub fn involutions_conjugate(m: &ConcreteModel) -> Result<(usize, usize), VerifyError> {
    let elements = m.n.elements(168)?;
    let involutions: Vec<&Permutation> = elements.iter().filter(|g| g.order() == 2).collect();
    let class: BTreeSet<Permutation> = elements
        .iter()
        .map(|g| involutions[0].conjugate_by(g))
        .collect();
    Ok((involutions.len(), class.len()))
}

/// One verified statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

/// Runs every check; covers are enumerated when `covers` is set.
pub fn run_all(covers: bool, max_cosets: usize) -> Result<VerificationReport, VerifyError> {
    let mut claims = Vec::new();
    let mut push = |id: &str, statement: &str, pass: bool, detail: String| {
        claims.push(Claim {
            id: id.into(),
            statement: statement.into(),
            pass,
            detail,
        })
    };

    let m = build_model()?;
    let (n, mo, g) = (m.n.order()?, m.m.order()?, m.g.order()?);
    push(
        "model.orders",
        "|<x,y>| = 168, |<x,y,s7>| = 1344, |<x,y,t>| = 443520",
        n == 168 && mo == 1344 && g == ORDER,
        format!("{n}, {mo}, {g}"),
    );
    let m1 = PermutationGroup::new(DEGREE, vec![m.x.clone(), m.y.clone(), m.s[0].clone()])?.order()?;
    push("model.m_via_s1", "|<x,y,s1>| = 1344", m1 == 1344, m1.to_string());
    push(
        "model.transitive",
        "<x,y,t> is transitive on 22 points",
        m.g.is_transitive(),
        String::new(),
    );
    push(
        "model.simple_by_order",
        "a simple group of order 443520 is unique up to isomorphism, so |G| identifies M22 once G is simple",
        g == ORDER,
        "uses the known classification fact".into(),
    );

    let failing: Vec<String> = m
        .presentation()
        .relators
        .iter()
        .filter_map(|r| {
            let v = evaluate(r, &m.generators()).ok()?;
            (!v.is_identity()).then(|| r.to_text(&m.presentation().generators))
        })
        .collect();
    push(
        "model.relators",
        "every relator evaluates to the identity",
        failing.is_empty(),
        failing.join(", "),
    );
    let conj = verify_conjugation_action(&m.progenitor.action, &m.progenitor.map, &m.generators());
    push(
        "model.label_action",
        "x and y permute the fourteen t_i by the control action",
        conj.holds,
        conj.mismatch.unwrap_or_default(),
    );

    let p = verify_prop21(&m)?;
    push(
        "t.centralizer",
        "|C_N(t)| = 12",
        p.centralizer_order == 12,
        p.centralizer_order.to_string(),
    );
    push(
        "t.class",
        "t has 14 conjugates under N, the t_i",
        !p.failures.iter().any(|f| f.contains("conjugates")),
        p.class_size.to_string(),
    );
    push(
        "t.generate",
        "the t_i generate a group of order 443520",
        p.symmetric_generated_order == ORDER,
        p.symmetric_generated_order.to_string(),
    );
    push(
        "t.t1t8",
        "<N, t1t8> has order 1344",
        p.with_t1t8_order == 1344,
        p.with_t1t8_order.to_string(),
    );

    let f = verify_s_structure(&m);
    push(
        "s.structure",
        "s_i = t_i t_{i+7} are commuting involutions generating 2^3, with lines s_i s_j = s_k forming a Fano plane permuted transitively by N",
        f.is_ok(),
        f.as_ref().map_or_else(|e| e.to_string(), |f| format!("{:?}", f.lines)),
    );
    let f = f?;
    push(
        "s.lines",
        "{1,5,7} and {2,3,7} are lines",
        f.is_line([1, 5, 7]) && f.is_line([2, 3, 7]),
        String::new(),
    );

    let r = verify_relation_families(&m, &f)?;
    push(
        "relations.families",
        "alpha, beta, delta, gamma, sigma and epsilon lie in N with the stated orders and fixed points",
        r.holds(),
        r.failures.join("; "),
    );
    push(
        "relations.gamma_separation",
        "t_i t_j t_k t_i t_j lies in N exactly for collinear i, j, k",
        r.holds() && r.gamma_separated == 1344,
        format!("{} non-collinear triples outside N", r.gamma_separated),
    );
    let alpha23 = m.product(&[2, 3, 2, 3, 2]);
    push("relations.alpha23", "t2t3t2t3t2 = y", alpha23 == m.y, String::new());
    let beta = m.product(&[1, 12, 8, 5, 1]);
    push(
        "relations.beta_1_12_8",
        "t1t12t8t5t1 = (xyx^2)^-1, of order 4",
        beta == m.word("(x*y*x^2)^-1")? && beta.order() == 4,
        String::new(),
    );
    let delta = &(&(m.t_(5) * m.s_(1)) * m.t_(12)) * m.s_(1);
    push(
        "relations.delta_1_12",
        "delta_{1,12} = beta_{1,12,8}^-1 alpha_{1,12}",
        delta == &beta.inverse() * &m.product(&[1, 12, 1, 12, 1]),
        String::new(),
    );
    let w = &m.product(&[14, 6, 3, 11]) * &m.product(&[5, 3, 8, 14]).inverse();
    push(
        "relations.t14t6t3t11",
        "t14t6t3t11 (t5t3t8t14)^-1 lies in N",
        m.in_n(&w)?,
        w.to_cycle_string(),
    );
    let sigma = &m.product(&[1, 6, 4, 2]) * &m.product(&[1, 3, 5, 7]).inverse();
    let sigma_labels = m.label_action(&sigma);
    push(
        "relations.sigma_1642",
        "t1t6t4t2 (t1t3t5t7)^-1 lies in N; its label action is reported",
        m.in_n(&sigma)? && sigma_labels.is_some(),
        sigma_labels.map(|p| p.to_cycle_string()).unwrap_or_default(),
    );

    let (count, class) = involutions_conjugate(&m)?;
    push(
        "n.involutions",
        "all involutions of N are conjugate",
        count == class,
        format!("{count} involutions, class of size {class}"),
    );
    let s7 = m.word("t*t^(x^6*y*x)")?;
    push(
        "m.membership",
        "t t^(x^6 y x) lies in M and t does not",
        m.m.contains(&s7)? && !m.m.contains(&m.t)?,
        String::new(),
    );

    for row in verify_maximal_subgroups(&m)? {
        let id = format!("maximal.{}.{}", row.name, row.words.join(","));
        let mut detail = format!("order {}", row.order);
        if let (Some(s), Some(held)) = (&row.printed_set, row.printed_stabilized) {
            detail.push_str(&format!("; printed set {s:?} stabilized: {held}"));
        }
        push(
            &id,
            &format!(
                "<{}> has order {} and stabilizes the {} {:?}",
                row.words.join(", "),
                row.expected_order,
                row.kind,
                row.set
            ),
            row.holds(),
            detail,
        );
    }

    if covers {
        let c = control_index(max_cosets)?;
        push("covers.control", "the full presentation has index 2640 over <x,y>", c == 2640, c.to_string());
        let (d, t) = verify_covers(max_cosets)?;
        push(
            "covers.double",
            &format!("dropping {DOUBLE_COVER_DROP} gives index 5280 over <x,y>"),
            d == 5280,
            d.to_string(),
        );
        push(
            "covers.triple",
            &format!("dropping {TRIPLE_COVER_DROP} gives index 7920 over <x,y>"),
            t == 7920,
            t.to_string(),
        );
    }
    Ok(VerificationReport { claims })
}
