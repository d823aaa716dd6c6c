//! Permutation groups, coset enumeration, double coset enumeration and the
//! 22-point model of M22.

pub mod dce;
pub mod perm;
pub mod progenitor;
pub mod simplicity;
pub mod toddcoxeter;
mod union_find;
pub mod verify_m22;
pub mod wordlang;

pub use perm::{PermError, Permutation, PermutationGroup};
pub use wordlang::{FlatWord, Presentation, WordError, WordExpr};
