//! Uniform interpolation of ALC ontologies: clausification with definers,
//! saturation by resolution and role propagation, and definer elimination
//! with Ackermann's lemma and its fixpoint generalisation.

pub mod calculus;
pub mod clause;
pub mod definers;

pub use calculus::{eliminate_symbols, infer_step, Inference};
pub use clause::{clausify, Clause, DefinerContext, Literal};
pub use definers::{apply_policy, definer_elimination, fixpoints_to_aux, Policy, UIResult};

use crate::error::{Error, Result};
use crate::reasoner::Reasoner;
use crate::syntax::ops::unroll;
use crate::syntax::{sig_ontology, Concept, Inclusion, Ontology, Signature};

/// Unfolding depth used to check results that contain fixpoints.
pub const CHECK_UNFOLDING: usize = 3;
/// Largest unfolded concept handed to the reasoner during that check.
const CHECK_SIZE: usize = 4000;

/// Clause sets larger than this skip the redundancy pass.
const PRUNE_CAP: usize = 400;

/// A uniform interpolant of `o` for `sigma`. The result is entailed by `o`
/// (checked before returning) and uses only `sigma` plus, under the
/// auxiliary policy, fresh `_def` names.
pub fn uniform_interpolant(o: &Ontology, sigma: &Signature, policy: Policy) -> Result<UIResult> {
    if o.has_fixpoint() {
        return Err(Error::Unsupported("the input ontology must be fixpoint-free".into()));
    }
    if o.has_nominal() {
        return Err(Error::Unsupported("uniform interpolation is implemented for ALC without nominals".into()));
    }
    let sig = sig_ontology(o);
    let forget = sig.difference(sigma);
    let mut reasoner = Reasoner::new(o)?;
    if !reasoner.is_consistent()? {
        let rhs = match sigma.concepts.iter().next() {
            Some(a) => Concept::and2(Concept::name(a), Concept::not(Concept::name(a))),
            None => Concept::bottom(),
        };
        let out = Ontology::from_axioms([Inclusion::new(Concept::top(), rhs)]);
        return Ok(UIResult { ontology: out, used_fixpoints: false, auxiliary_names: Default::default(), policy });
    }
    if forget.is_empty() {
        return Ok(UIResult { ontology: o.clone(), used_fixpoints: false, auxiliary_names: Default::default(), policy });
    }
    let (clauses, ctx) = clausify(o)?;
    let (clauses, ctx) = eliminate_symbols(clauses, ctx, &forget)?;
    let clauses = definers::prune_redundant(clauses, &ctx, PRUNE_CAP)?;
    let fix = definer_elimination(&clauses, &ctx, Policy::Fixpoint)?;
    verify_entailed(&mut reasoner, &fix.ontology)?;
    let out_sig = sig_ontology(&fix.ontology);
    if !out_sig.is_subset(sigma) {
        return Err(Error::Verification(format!("result mentions symbols outside the signature: {}", out_sig.difference(sigma))));
    }
    apply_policy(fix, policy, &sig.union(sigma))
}

/// `o |= result`, with fixpoints checked through their unfoldings.
fn verify_entailed(reasoner: &mut Reasoner, result: &Ontology) -> Result<()> {
    for ax in result.iter() {
        let ax = if ax.rhs.has_fixpoint() || ax.lhs.has_fixpoint() {
            // nested fixpoints unfold exponentially; use the deepest unfolding that stays small
            let rhs = (0..=CHECK_UNFOLDING)
                .rev()
                .map(|k| unroll(&ax.rhs, k))
                .find(|c| c.size() <= CHECK_SIZE)
                .unwrap_or_else(Concept::top);
            Inclusion::new(unroll(&ax.lhs, 0), rhs)
        } else {
            ax.clone()
        };
        if !reasoner.entails(&ax)? {
            return Err(Error::Verification(format!("result axiom {} is not entailed by the input", ax)));
        }
    }
    Ok(())
}

/// A fixpoint-free ontology with the same consequences over the original
/// names: fixpoints become `_def` names with their defining axioms.
pub fn for_reasoning(r: &UIResult, avoid: &Signature) -> Ontology {
    if r.ontology.has_fixpoint() {
        fixpoints_to_aux(&r.ontology, avoid).0
    } else {
        r.ontology.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::registry as bench;
    use crate::reasoner::equivalent;
    use crate::syntax::parse_ontology;

    #[test]
    fn worked_example() {
        let o = parse_ontology(bench::LETHE).unwrap();
        let sigma = Signature::from_lists(&["A", "B", "D", "E"], &["r"], &[]);
        let r = uniform_interpolant(&o, &sigma, Policy::Fixpoint).unwrap();
        let want = parse_ontology(bench::LETHE_RESULT).unwrap();
        assert!(equivalent(&r.ontology, &want).unwrap(), "got\n{}", r.ontology);
    }

    #[test]
    fn cyclic_case() {
        let o = parse_ontology(bench::CYCLIC).unwrap();
        let sigma = Signature::from_lists(&["A"], &["r"], &[]);
        let r = uniform_interpolant(&o, &sigma, Policy::Fixpoint).unwrap();
        assert_eq!(r.ontology.to_string(), "A [= nu X. some r.X.\n");
        assert!(r.used_fixpoints);
        let aux = uniform_interpolant(&o, &sigma, Policy::Auxiliary).unwrap();
        assert_eq!(aux.ontology.to_string(), "A [= D1_def.\nD1_def [= some r.D1_def.\n");
    }

    #[test]
    fn nothing_to_forget() {
        let o = parse_ontology(bench::LETHE).unwrap();
        let r = uniform_interpolant(&o, &sig_ontology(&o), Policy::Fixpoint).unwrap();
        assert!(equivalent(&r.ontology, &o).unwrap());
    }

    #[test]
    fn inconsistent_input() {
        let o = parse_ontology("top [= some r.A. A [= bot.").unwrap();
        let r = uniform_interpolant(&o, &Signature::from_lists(&["B"], &[], &[]), Policy::Fixpoint).unwrap();
        assert_eq!(r.ontology.to_string(), "top [= B and not B.\n");
    }
}
