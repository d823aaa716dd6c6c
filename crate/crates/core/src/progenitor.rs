//! Involutory progenitors `2^{*n}:N`: a transitive control group `N` of
//! degree `n` extended by an involution `t` whose conjugates `t_i` are
//! permuted by `N` like the points `i`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::perm::{PermError, Permutation, PermutationGroup};
use crate::wordlang::{
    evaluate, flatten, FlatWord, Presentation, PresentationFile, WordError, WordExpr,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgenitorError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("the control group is not transitive")]
    NotTransitive,
    #[error("no 'progenitor' directive")]
    MissingDirective,
    #[error("no 'action' line for control generator {0:?}")]
    MissingAction(String),
    #[error("expected exactly one non-control generator, found {0}")]
    SymmetricGeneratorCount(usize),
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("word {0:?} uses a non-control generator")]
    NotAControlWord(String),
    #[error("witness {index}: {element} does not fix point {point}")]
    WitnessNotFixing {
        index: usize,
        element: String,
        point: usize,
    },
    #[error("witnesses generate a stabilizer of order {achieved}, need {required}")]
    InsufficientWitnesses { achieved: u64, required: u64 },
}

/// A control generator: its presentation index and its permutation of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlGenerator {
    pub name: String,
    pub index: usize,
    pub permutation: Permutation,
}

/// Transitive action of the control group, with a 0-indexed base point.
#[derive(Debug, Clone)]
pub struct ControlAction {
    generator_names: Vec<String>,
    t_index: usize,
    controls: Vec<ControlGenerator>,
    basepoint: u32,
    group: PermutationGroup,
}

impl ControlAction {
    /// `generator_names` lists every presentation generator; all but the one
    /// at `t_index` must appear among `controls`.
    pub fn new(
        generator_names: Vec<String>,
        t_index: usize,
        controls: Vec<ControlGenerator>,
        basepoint: u32,
    ) -> Result<Self, ProgenitorError> {
        let non_control = generator_names.len() - controls.len();
        if non_control != 1 || controls.iter().any(|c| c.index == t_index) {
            return Err(ProgenitorError::SymmetricGeneratorCount(non_control));
        }
        let degree = controls.first().map_or(0, |c| c.permutation.degree());
        if basepoint as usize >= degree {
            return Err(ProgenitorError::PointOutOfRange {
                point: basepoint as usize + 1,
                degree,
            });
        }
        let perms = controls.iter().map(|c| c.permutation.clone()).collect();
        let group = PermutationGroup::new(degree, perms)?;
        if !group.is_transitive() {
            return Err(ProgenitorError::NotTransitive);
        }
        Ok(ControlAction {
            generator_names,
            t_index,
            controls,
            basepoint,
            group,
        })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn controls(&self) -> &[ControlGenerator] {
        &self.controls
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Presentation index of the symmetric generator `t`.
    pub fn t_index(&self) -> usize {
        self.t_index
    }

    pub fn is_control_word(&self, w: &FlatWord) -> bool {
        w.letters()
            .iter()
            .all(|&l| l.unsigned_abs() as usize - 1 != self.t_index)
    }

    /// Image of a control word in the point action.
    pub fn control_element(&self, w: &FlatWord) -> Result<Permutation, ProgenitorError> {
        if !self.is_control_word(w) {
            return Err(ProgenitorError::NotAControlWord(
                w.to_text(&self.generator_names),
            ));
        }
        let mut assignment = vec![Permutation::identity(self.degree()); self.generator_names.len()];
        for c in &self.controls {
            assignment[c.index] = c.permutation.clone();
        }
        Ok(evaluate(w, &assignment)?)
    }
}

/// A commutator relator `[t^c, h]`: `h` must fix the point `i₀^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerWitness {
    pub conjugator: FlatWord,
    pub element: FlatWord,
}

impl StabilizerWitness {
    pub fn relator(&self, t_index: usize) -> FlatWord {
        FlatWord::generator(t_index)
            .conjugate(&self.conjugator)
            .commutator(&self.element)
    }
}

/// Assembles `control relators + t² + [t^c, h]` after checking that the
/// witnesses account for the whole stabilizer of the base point.
pub fn build_progenitor_presentation(
    action: &ControlAction,
    control_relators: &[FlatWord],
    stabilizer_witnesses: &[StabilizerWitness],
) -> Result<Presentation, ProgenitorError> {
    let degree = action.degree();
    let i0 = action.basepoint();
    let mut pulled_back = Vec::new();
    for (index, w) in stabilizer_witnesses.iter().enumerate() {
        let c = action.control_element(&w.conjugator)?;
        let h = action.control_element(&w.element)?;
        let point = c.image(i0);
        if !h.fixes(point) {
            return Err(ProgenitorError::WitnessNotFixing {
                index,
                element: w.element.to_text(action.generator_names()),
                point: point as usize + 1,
            });
        }
        // c h c⁻¹ fixes i₀.
        pulled_back.push(&(&c * &h) * &c.inverse());
    }
    let required = action.group().order()? / degree as u64;
    let achieved = PermutationGroup::new(degree, pulled_back)?.order()?;
    if achieved != required {
        return Err(ProgenitorError::InsufficientWitnesses { achieved, required });
    }
    for r in control_relators {
        action.control_element(r)?;
    }
    let t = action.t_index();
    let mut relators = control_relators.to_vec();
    relators.push(FlatWord::generator(t).pow(2));
    relators.extend(stabilizer_witnesses.iter().map(|w| w.relator(t)));
    Ok(Presentation::new(
        action.generator_names().to_vec(),
        relators,
        Default::default(),
    )?)
}

/// Transversal words `w_i` with `i₀^{w_i} = i`.
#[derive(Debug, Clone)]
pub struct SymmetricGeneratorMap {
    t_index: usize,
    basepoint: u32,
    words: Vec<FlatWord>,
    elements: Vec<Permutation>,
}

impl SymmetricGeneratorMap {
    /// Breadth-first search from the base point, trying each control
    /// generator and then its inverse, in declaration order. Each `w_i` is
    /// therefore shortlex-least among words reaching `i`.
    pub fn new(action: &ControlAction) -> Self {
        let n = action.degree();
        let mut steps: Vec<(i32, Permutation)> = Vec::new();
        for c in action.controls() {
            let letter = c.index as i32 + 1;
            steps.push((letter, c.permutation.clone()));
            steps.push((-letter, c.permutation.inverse()));
        }
        let mut words: Vec<Option<FlatWord>> = vec![None; n];
        let mut elements: Vec<Option<Permutation>> = vec![None; n];
        let i0 = action.basepoint();
        words[i0 as usize] = Some(FlatWord::empty());
        elements[i0 as usize] = Some(Permutation::identity(n));
        let mut queue = VecDeque::from([i0]);
        while let Some(p) = queue.pop_front() {
            for (letter, g) in &steps {
                let q = g.image(p) as usize;
                if words[q].is_none() {
                    let w = words[p as usize].as_ref().unwrap();
                    words[q] = Some(w.concat(&FlatWord::from_letters([*letter])));
                    elements[q] = Some(elements[p as usize].as_ref().unwrap() * g);
                    queue.push_back(q as u32);
                }
            }
        }
        SymmetricGeneratorMap {
            t_index: action.t_index(),
            basepoint: i0,
            words: words.into_iter().map(Option::unwrap).collect(),
            elements: elements.into_iter().map(Option::unwrap).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.words.len()
    }

    pub fn basepoint(&self) -> u32 {
        self.basepoint
    }

    /// Transversal word for the 1-indexed point `i`.
    pub fn transversal_word(&self, i: usize) -> Result<&FlatWord, ProgenitorError> {
        self.check(i)?;
        Ok(&self.words[i - 1])
    }

    /// Control element sending the base point to the 1-indexed point `i`.
    pub fn transversal_element(&self, i: usize) -> Result<&Permutation, ProgenitorError> {
        self.check(i)?;
        Ok(&self.elements[i - 1])
    }

    fn check(&self, i: usize) -> Result<(), ProgenitorError> {
        if i == 0 || i > self.degree() {
            return Err(ProgenitorError::PointOutOfRange {
                point: i,
                degree: self.degree(),
            });
        }
        Ok(())
    }

    /// The word `t_i = w_i⁻¹·t·w_i` for the 1-indexed point `i`.
    pub fn symmetric_generator_word(&self, i: usize) -> Result<FlatWord, ProgenitorError> {
        let w = self.transversal_word(i)?;
        Ok(FlatWord::generator(self.t_index).conjugate(w))
    }

    /// Word for `t_{i₁} t_{i₂} ⋯`, 1-indexed labels.
    pub fn labels_word(&self, labels: &[usize]) -> Result<FlatWord, ProgenitorError> {
        let mut out = FlatWord::empty();
        for &i in labels {
            out = out.concat(&self.symmetric_generator_word(i)?);
        }
        Ok(out)
    }
}

/// Outcome of checking a concrete model against the label action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationCheck {
    pub holds: bool,
    pub mismatch: Option<String>,
}

/// Checks that the `t_i` evaluated in `model` are distinct involutions and
/// that each control generator conjugates `t_i` to `t_{i^g}`.
pub fn verify_conjugation_action(
    action: &ControlAction,
    map: &SymmetricGeneratorMap,
    model: &[Permutation],
) -> ConjugationCheck {
    let fail = |msg: String| ConjugationCheck {
        holds: false,
        mismatch: Some(msg),
    };
    let n = map.degree();
    let mut ts = Vec::with_capacity(n);
    for i in 1..=n {
        let w = map.symmetric_generator_word(i).expect("label in range");
        match evaluate(&w, model) {
            Ok(p) => ts.push(p),
            Err(e) => return fail(format!("t{i}: {e}")),
        }
    }
    for (i, t) in ts.iter().enumerate() {
        if t.is_identity() || !(t * t).is_identity() {
            return fail(format!("t{} is not an involution", i + 1));
        }
        if let Some(j) = ts[..i].iter().position(|s| s == t) {
            return fail(format!("t{} = t{}", j + 1, i + 1));
        }
    }
    for c in action.controls() {
        let Some(g) = model.get(c.index) else {
            return fail(format!("no model permutation for {}", c.name));
        };
        for (i, t) in ts.iter().enumerate() {
            let j = c.permutation.image(i as u32) as usize;
            if t.conjugate_by(g) != ts[j] {
                return fail(format!(
                    "t{}^{} != t{}",
                    i + 1,
                    c.name,
                    j + 1
                ));
            }
        }
    }
    ConjugationCheck {
        holds: true,
        mismatch: None,
    }
}

/// A presentation file split into its progenitor and the extra relators.
#[derive(Debug, Clone)]
pub struct Progenitor {
    pub action: ControlAction,
    pub map: SymmetricGeneratorMap,
    pub control_relators: Vec<FlatWord>,
    pub witnesses: Vec<StabilizerWitness>,
    /// Relators beyond those defining the progenitor.
    pub additional_relators: Vec<FlatWord>,
    /// The progenitor's own presentation.
    pub progenitor: Presentation,
    /// The progenitor presentation with the additional relators and the
    /// file's subgroups.
    pub full: Presentation,
}

impl Progenitor {
    pub fn from_file(file: &PresentationFile) -> Result<Self, ProgenitorError> {
        let directive = file
            .progenitor
            .as_ref()
            .ok_or(ProgenitorError::MissingDirective)?;
        let mut controls = Vec::new();
        for &g in &directive.control_generators {
            let name = &file.generators[g];
            let (_, line, cycles) = file
                .actions
                .iter()
                .find(|a| a.0 == g)
                .ok_or_else(|| ProgenitorError::MissingAction(name.clone()))?;
            let permutation = Permutation::from_cycles(directive.degree, cycles).map_err(|e| {
                WordError::File {
                    line: *line,
                    msg: e.to_string(),
                }
            })?;
            controls.push(ControlGenerator {
                name: name.clone(),
                index: g,
                permutation,
            });
        }
        let others: Vec<usize> = (0..file.generators.len())
            .filter(|g| !directive.control_generators.contains(g))
            .collect();
        if others.len() != 1 {
            return Err(ProgenitorError::SymmetricGeneratorCount(others.len()));
        }
        let t = others[0];
        let action = ControlAction::new(
            file.generators.clone(),
            t,
            controls,
            directive.basepoint as u32 - 1,
        )?;

        let t_squared = FlatWord::generator(t).pow(2);
        let mut control_relators = Vec::new();
        let mut witnesses = Vec::new();
        let mut additional_relators = Vec::new();
        for r in &file.relators {
            let flat = flatten(&r.expr);
            if action.is_control_word(&flat) {
                control_relators.push(flat);
            } else if flat == t_squared {
                // Carried by the progenitor itself.
            } else if let Some(w) = witness_shape(&r.expr, &action) {
                witnesses.push(w);
            } else {
                additional_relators.push(flat);
            }
        }
        let progenitor = build_progenitor_presentation(&action, &control_relators, &witnesses)?;
        let mut full = file.presentation();
        full.relators = progenitor.relators.clone();
        full.relators.extend(additional_relators.iter().cloned());
        let map = SymmetricGeneratorMap::new(&action);
        Ok(Progenitor {
            action,
            map,
            control_relators,
            witnesses,
            additional_relators,
            progenitor,
            full,
        })
    }
}

/// Recognizes `[t^c, h]` or `[t, h]` with `c`, `h` control words.
fn witness_shape(e: &WordExpr, action: &ControlAction) -> Option<StabilizerWitness> {
    let WordExpr::Commutator(a, b) = e else {
        return None;
    };
    let t = action.t_index();
    let conjugator = match a.as_ref() {
        WordExpr::Gen(g) if *g == t => FlatWord::empty(),
        WordExpr::Conjugate(base, by) if **base == WordExpr::Gen(t) => flatten(by),
        _ => return None,
    };
    let element = flatten(b);
    (action.is_control_word(&conjugator) && action.is_control_word(&element)).then_some(
        StabilizerWitness {
            conjugator,
            element,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordlang::parse_presentation_file;

    const M22: &str = include_str!("../../../m22.pres");

    fn m22() -> Progenitor {
        Progenitor::from_file(&parse_presentation_file(M22).unwrap()).unwrap()
    }

    fn model() -> Vec<Permutation> {
        let p = |s| Permutation::from_cycles(22, s).unwrap();
        vec![
            p("(1,12,14,10,8,17,15)(2,18,22,13,3,7,9)(5,6,19,21,20,11,16)"),
            p("(2,9)(3,4)(5,6)(7,13)(10,15)(11,19)(12,14)(18,22)"),
            p("(2,10)(3,11)(4,19)(5,22)(6,18)(7,14)(9,15)(12,13)"),
        ]
    }

    #[test]
    fn m22_file_splits_into_progenitor_and_extras() {
        let p = m22();
        assert_eq!(p.control_relators.len(), 4);
        assert_eq!(p.witnesses.len(), 2);
        assert_eq!(p.additional_relators.len(), 3);
        assert_eq!(p.progenitor.relators.len(), 7);
        assert_eq!(p.full.relators.len(), 10);
        assert_eq!(p.action.group().order().unwrap(), 168);
        assert_eq!(p.full.subgroups.len(), 2);
    }

    #[test]
    fn missing_witnesses_are_reported() {
        let p = m22();
        let err = build_progenitor_presentation(&p.action, &p.control_relators, &[]).unwrap_err();
        assert_eq!(
            err,
            ProgenitorError::InsufficientWitnesses {
                achieved: 1,
                required: 12
            }
        );
        let one = build_progenitor_presentation(&p.action, &p.control_relators, &p.witnesses[1..]);
        assert!(matches!(
            one,
            Err(ProgenitorError::InsufficientWitnesses { achieved: 2, .. })
        ));
    }

    #[test]
    fn witness_must_fix_its_point() {
        let p = m22();
        // x moves 7.
        let bad = StabilizerWitness {
            conjugator: FlatWord::empty(),
            element: FlatWord::generator(0),
        };
        let err = build_progenitor_presentation(&p.action, &p.control_relators, &[bad]);
        assert!(matches!(
            err,
            Err(ProgenitorError::WitnessNotFixing { point: 7, .. })
        ));
    }

    #[test]
    fn transversal_words() {
        let p = m22();
        let names = p.action.generator_names();
        assert_eq!(p.map.symmetric_generator_word(7).unwrap().to_text(names), "t");
        assert_eq!(
            p.map.symmetric_generator_word(1).unwrap().to_text(names),
            "x^-1*t*x"
        );
        for i in 1..=14 {
            let g = p.map.transversal_element(i).unwrap();
            assert_eq!(g.image(6) as usize, i - 1);
        }
        assert!(p.map.symmetric_generator_word(0).is_err());
        assert!(p.map.symmetric_generator_word(15).is_err());
    }

    #[test]
    fn t14_is_well_defined() {
        let p = m22();
        let m = model();
        let via_map = evaluate(&p.map.symmetric_generator_word(14).unwrap(), &m).unwrap();
        let direct = evaluate(&p.full.parse("t^(x^6*y*x)").unwrap(), &m).unwrap();
        assert_eq!(via_map, direct);
    }

    #[test]
    fn model_realizes_the_label_action() {
        let p = m22();
        let check = verify_conjugation_action(&p.action, &p.map, &model());
        assert!(check.holds, "{:?}", check.mismatch);
        let mut broken = model();
        broken[2] = Permutation::identity(22);
        let check = verify_conjugation_action(&p.action, &p.map, &broken);
        assert!(!check.holds);
    }

    #[test]
    fn intransitive_control_is_rejected() {
        let c = ControlGenerator {
            name: "a".into(),
            index: 0,
            permutation: Permutation::from_cycles(3, "(1,2)").unwrap(),
        };
        let err = ControlAction::new(vec!["a".into(), "t".into()], 1, vec![c], 0).unwrap_err();
        assert_eq!(err, ProgenitorError::NotTransitive);
    }
}
