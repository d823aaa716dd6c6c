//! Group words: parsing, free reduction, evaluation and presentation files.

mod expr;
mod flat;
mod parser;
mod presentation;

use thiserror::Error;

pub use expr::WordExpr;
pub use flat::{evaluate, flatten, FlatWord};
pub use parser::parse_word;
pub use presentation::{
    parse_presentation_file, Presentation, PresentationFile, ProgenitorDirective, RelatorEntry,
    SubgroupEntry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator {name:?} at offset {pos}")]
    UnknownGenerator { name: String, pos: usize },
    #[error("zero exponent at offset {pos}")]
    ZeroExponent { pos: usize },
    #[error("generator {generator} has no assigned permutation")]
    Unassigned { generator: usize },
    #[error("assignment mixes degrees {expected} and {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    File { line: usize, msg: String },
}
