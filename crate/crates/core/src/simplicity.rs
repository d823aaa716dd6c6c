//! Simplicity of a transitive coset-action image via Iwasawa's lemma: a
//! perfect primitive group with an abelian normal subgroup `K` of a point
//! stabilizer, whose conjugates generate the group, is simple.

use serde::Serialize;
use thiserror::Error;

use crate::perm::{PermError, PermutationGroup};
use crate::toddcoxeter::{CosetTable, EnumerationError};
use crate::wordlang::{FlatWord, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicityError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Table(#[from] EnumerationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Simple,
    NotSimple,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IwasawaReport {
    pub degree: usize,
    pub image_order: u64,
    pub expected_order: u64,
    pub stabilizer_order: u64,
    /// `degree × stabilizer_order`, the order bound for a transitive image.
    pub order_bound: u64,
    pub faithful: bool,
    pub derived_order: u64,
    pub perfect: bool,
    pub primitive: bool,
    pub k_words: Vec<String>,
    pub k_order: u64,
    pub k_abelian: bool,
    pub k_in_stabilizer: bool,
    pub k_normal_in_stabilizer: bool,
    pub k_normal_closure_order: u64,
    pub k_conjugates_generate: bool,
    pub verdict: Verdict,
    pub reason: String,
}

/// Runs every check on the action of the presented group on the cosets of
/// `table`, with `K` generated by `k_words`.
pub fn iwasawa_check(
    table: &CosetTable,
    presentation: &Presentation,
    k_words: &[FlatWord],
    expected_order: u64,
) -> Result<IwasawaReport, SimplicityError> {
    let degree = table.index();
    let image = PermutationGroup::new(degree, table.generator_actions())?;
    let image_order = image.order()?;
    let stabilizer = image.point_stabilizer(0)?;
    let stabilizer_order = stabilizer.order()?;
    let order_bound = degree as u64 * stabilizer_order;
    let faithful = image_order == expected_order && image_order == order_bound;

    let derived_order = image.derived_subgroup()?.order()?;
    let perfect = derived_order == image_order;
    let primitive = image.is_primitive()?;

    let k_gens = k_words
        .iter()
        .map(|w| table.coset_action(w))
        .collect::<Result<Vec<_>, _>>()?;
    let k = PermutationGroup::new(degree, k_gens.clone())?;
    let k_order = k.order()?;
    let k_abelian = k.is_abelian();
    let k_in_stabilizer = k_gens.iter().all(|g| g.fixes(0));
    let mut k_normal_in_stabilizer = k_in_stabilizer;
    'outer: for s in stabilizer.strong_generators() {
        for g in &k_gens {
            if !k.contains(&g.conjugate_by(&s))? {
                k_normal_in_stabilizer = false;
                break 'outer;
            }
        }
    }
    let k_normal_closure_order = image.normal_closure(&k_gens)?.order()?;
    let k_conjugates_generate = k_normal_closure_order == image_order;

    let (verdict, reason) = if faithful
        && perfect
        && primitive
        && k_abelian
        && k_normal_in_stabilizer
        && k_conjugates_generate
    {
        (Verdict::Simple, "all Iwasawa conditions hold".to_string())
    } else if image_order > 1 && image_order < expected_order {
        (
            Verdict::NotSimple,
            format!("nontrivial image of order {image_order} is a proper quotient of a group of order {expected_order}"),
        )
    } else if !perfect && !is_prime(image_order) {
        (
            Verdict::NotSimple,
            format!("derived subgroup has order {derived_order} < {image_order}"),
        )
    } else if !k_abelian {
        (Verdict::Inconclusive, "K is not abelian".to_string())
    } else {
        (Verdict::Inconclusive, "some condition fails".to_string())
    };

    Ok(IwasawaReport {
        degree,
        image_order,
        expected_order,
        stabilizer_order,
        order_bound,
        faithful,
        derived_order,
        perfect,
        primitive,
        k_words: k_words
            .iter()
            .map(|w| w.to_text(&presentation.generators))
            .collect(),
        k_order,
        k_abelian,
        k_in_stabilizer,
        k_normal_in_stabilizer,
        k_normal_closure_order,
        k_conjugates_generate,
        verdict,
        reason,
    })
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
