//! Finite interpretations: evaluation, bisimulation and bounded model search.

pub mod bisim;
pub mod countermodel;
pub mod eval;
pub mod interpretation;
pub mod joint;

pub use bisim::{greatest_bisimulation, is_bisimulation, Flavor};
pub use countermodel::{bounded_countermodel, brute_force_countermodel, domain_cap, DEFAULT_DOMAIN_CAP};
pub use eval::{extension_eval, is_model, Evaluator};
pub use interpretation::Interpretation;
pub use joint::{bisimilar_models, JointWitness};
