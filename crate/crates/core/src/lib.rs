//! Higher dimensional transition systems and labelled symmetric precubical sets.
//!
//! - [`hdts`]: weak HDTS, axiom checks, coherence closure, cubes, colimits,
//!   morphism enumeration.
//! - [`precube`]: labelled symmetric precubical sets, cube encodings, colimits,
//!   the HDA paradigm, fibered products and the synchronized tensor product.
//! - [`realize`]: the realization functor into weak HDTS and cubification.
//! - [`ccs`]: a CCS parser and its precubical semantics.

pub mod ccs;
pub mod dot;
pub mod fixtures;
pub mod hdts;
pub mod json;
pub mod label;
pub mod precube;
pub mod realize;
mod util;

pub use label::{Alphabet, Label};
