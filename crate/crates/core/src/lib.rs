//! Interpolation and forgetting for description-logic ontologies and
//! answer-set programs.

pub mod bench;
pub mod craig;
pub mod error;
pub mod gen;
pub mod lp;
pub mod reasoner;
pub mod semantics;
pub mod syntax;
pub mod uinterp;

pub use error::{Error, Result};
