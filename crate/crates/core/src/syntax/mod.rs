//! Concepts, inclusions, ontologies and signatures, with the text DSL.

pub mod concept;
pub mod ontology;
pub mod ops;
pub mod parser;
pub mod render;
pub mod simplify;

pub use concept::{name, Concept, Inclusion, Name, Node};
pub use ontology::{Ontology, Signature};
pub use ops::{
    closure_gamma, negate, nnf, rename_outside_concept, rename_outside_ontology, role_depth, sig_and_depth, sig_concept,
    sig_inclusion, sig_ontology, Renaming, Source,
};
pub use parser::{parse_concept, parse_ontology, split_names};
pub use render::{render_concept, render_inclusion, render_ontology};
pub use simplify::simplify;
