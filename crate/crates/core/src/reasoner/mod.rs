//! ALC reasoning under ontologies.
//!
//! Two independent routes decide entailment: type elimination over the
//! closure (`types`) and a SAT-guided tableau (`tableau`). The tableau is the
//! default; the type route backs the mosaic algorithms and cross-checks it.

pub mod closure;
pub mod diff;
pub mod tableau;
pub mod types;

pub use closure::{Closure, Kind};
pub use diff::{conservative_extension_bounded, logical_diff_bounded, CandidateGrammar};
pub use tableau::Reasoner;
pub use types::{realizable_types, TypeSet};

use crate::error::Result;
use crate::syntax::{Concept, Inclusion, Ontology};

pub fn entails(o: &Ontology, ci: &Inclusion) -> Result<bool> {
    Reasoner::new(o)?.entails(ci)
}

pub fn subsumes(o: &Ontology, c: &Concept, d: &Concept) -> Result<bool> {
    Reasoner::new(o)?.subsumes(c, d)
}

pub fn entails_ontology(o1: &Ontology, o2: &Ontology) -> Result<bool> {
    Reasoner::new(o1)?.entails_all(o2)
}

pub fn equivalent(o1: &Ontology, o2: &Ontology) -> Result<bool> {
    Ok(entails_ontology(o1, o2)? && entails_ontology(o2, o1)?)
}

/// Equivalence of two concepts under an ontology.
pub fn equivalent_concepts(o: &Ontology, c: &Concept, d: &Concept) -> Result<bool> {
    let mut r = Reasoner::new(o)?;
    Ok(r.subsumes(c, d)? && r.subsumes(d, c)?)
}

/// Entailment decided by type elimination: no realisable type over the
/// closure contains `lhs and not rhs`.
pub fn entails_by_types(o: &Ontology, ci: &Inclusion) -> Result<bool> {
    let q = Concept::and2(ci.lhs.clone(), Concept::not(ci.rhs.clone()));
    let ts = realizable_types(o, std::slice::from_ref(&q))?;
    Ok(ts.with(&q).is_empty())
}
