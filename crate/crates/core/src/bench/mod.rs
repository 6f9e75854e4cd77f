//! Stored examples and the binary counter family.

pub mod counter;
pub mod registry;

pub use counter::{counter_goal_family, counter_ontology, sample_goal};
pub use registry::{lookup, examples, Example};
