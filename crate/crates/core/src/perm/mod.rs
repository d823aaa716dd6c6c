//! Permutations and permutation groups.
//!
//! Everything here uses 0-indexed points internally; the 1-indexed cycle
//! notation only appears at the text boundary ([`Permutation::from_cycles`],
//! [`Permutation::to_cycle_string`]).

mod blocks;
mod group;
mod permutation;

pub use group::{PermutationGroup, DEFAULT_ENUMERATION_CAP};
pub use permutation::Permutation;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image list is not a bijection")]
    NotABijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cycle notation: {0}")]
    Parse(String),
    #[error("group order overflows 64 bits")]
    OrderOverflow,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
}
