//! CCS terms, their parser, and their semantics as decorated labelled
//! precubical sets.

mod ast;
mod parse;
mod semantics;

pub use ast::Term;
pub use parse::{parse, ParseError};
pub use semantics::{semantics, Semantics, SemanticsError, DEFAULT_UNFOLD_DEPTH};
