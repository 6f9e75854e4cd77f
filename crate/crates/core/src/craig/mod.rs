//! Craig and Σ-interpolants between concepts by mosaic elimination, ALCO
//! interpolant existence, and explicit definitions.

pub mod alco;
pub mod mosaic;
pub mod tidy;

pub use alco::{alco_existence, interpolant_exists_alco, AlcoExistence, AlcoOptions};
pub use mosaic::{interpolant_from_trace, joint_consistency_alc, joint_consistency_split, Cause, EliminationTrace};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reasoner::Reasoner;
use crate::syntax::ops::Renaming;
use crate::syntax::{sig_concept, sig_ontology, Concept, Ontology, Signature};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Found,
    NoneExists,
    NotEntailed,
}

/// Signature scan and the two entailments an interpolant must pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub signature: bool,
    pub left: bool,
    pub right: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.signature && self.left && self.right
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InterpolantReport {
    pub status: Status,
    pub interpolant: Option<String>,
    #[serde(skip)]
    pub concept: Option<Concept>,
    pub verification: Verification,
    pub signature: Signature,
    pub rounds: usize,
    pub mosaics: usize,
    pub survivors: usize,
}

impl InterpolantReport {
    fn empty(status: Status, sigma: &Signature) -> Self {
        InterpolantReport {
            status,
            interpolant: None,
            concept: None,
            verification: Verification::default(),
            signature: sigma.clone(),
            rounds: 0,
            mosaics: 0,
            survivors: 0,
        }
    }

    fn from_trace(status: Status, trace: &EliminationTrace) -> Self {
        InterpolantReport {
            rounds: trace.rounds(),
            mosaics: trace.mosaics(),
            survivors: trace.survivors(),
            ..InterpolantReport::empty(status, &trace.sigma)
        }
    }
}

/// `sig(i) ⊆ Σ`, `o |= c1 [= i` and `o |= i [= c2`.
pub fn verify_interpolant(o: &Ontology, c1: &Concept, c2: &Concept, sigma: &Signature, i: &Concept) -> Result<Verification> {
    let mut r = Reasoner::new(o)?;
    Ok(Verification { signature: sig_concept(i).is_subset(sigma), left: r.subsumes(c1, i)?, right: r.subsumes(i, c2)? })
}

fn reject_fixpoints(o: &Ontology, cs: &[&Concept]) -> Result<()> {
    if o.has_fixpoint() || cs.iter().any(|c| c.has_fixpoint()) {
        return Err(Error::Unsupported("interpolation needs fixpoint-free input".into()));
    }
    Ok(())
}

/// Interpolant of `c1 [= c2` under `o1 ∪ o2`. Without `sigma` the shared
/// signature of `(o1, c1)` and `(o2, c2)` is used and an interpolant exists
/// whenever the inclusion holds. With `sigma`, everything outside it on the
/// right-hand side is renamed apart first, and there may be none.
pub fn craig_or_sigma_interpolant(
    o1: &Ontology,
    o2: &Ontology,
    c1: &Concept,
    c2: &Concept,
    sigma: Option<&Signature>,
) -> Result<InterpolantReport> {
    let o = o1.union(o2);
    reject_fixpoints(&o, &[c1, c2])?;
    let (sig, explicit) = match sigma {
        Some(s) => (s.clone(), true),
        None => (sig_ontology(o1).union(&sig_concept(c1)).intersection(&sig_ontology(o2).union(&sig_concept(c2))), false),
    };
    if !Reasoner::new(&o)?.subsumes(c1, c2)? {
        return Ok(InterpolantReport::empty(Status::NotEntailed, &sig));
    }
    // the right-hand side is renamed apart outside Σ; its elements then live
    // in models of the renamed copy and the two sides share only Σ
    let (o2r, right) = if explicit {
        let all = sig_ontology(&o).union(&sig_concept(c1)).union(&sig_concept(c2));
        let ren = Renaming::outside(&all, &sig, "r", &all);
        (ren.ontology(&o), ren.concept(c2))
    } else {
        (o.clone(), c2.clone())
    };
    let (consistent, trace) = joint_consistency_split(&o, c1, &o2r, &Concept::not(right), &sig)?;
    if consistent {
        if !explicit {
            return Err(Error::Verification("jointly consistent although the inclusion holds over the shared signature".into()));
        }
        return Ok(InterpolantReport::from_trace(Status::NoneExists, &trace));
    }
    let raw = interpolant_from_trace(&trace)?;
    let i = tidy::tidy(&o, &raw)?;
    let v = verify_interpolant(&o, c1, c2, &sig, &i)?;
    if !v.all() {
        return Err(Error::Verification(format!("extracted concept {} fails {:?}", i, v)));
    }
    let mut rep = InterpolantReport::from_trace(Status::Found, &trace);
    rep.interpolant = Some(i.to_string());
    rep.concept = Some(i);
    rep.verification = v;
    Ok(rep)
}

/// An explicit Σ-definition `D` of `target` under `o` within `context`:
/// `o |= context [= (target <-> D)`. Fails with `NotDefinable` unless the
/// target is implicitly definable, which is checked by renaming every symbol
/// outside Σ and asking whether the copy agrees with the original.
pub fn explicit_definition(o: &Ontology, context: &Concept, target: &Concept, sigma: &Signature) -> Result<InterpolantReport> {
    reject_fixpoints(o, &[context, target])?;
    let check = |d: &Concept| -> Result<Verification> {
        let mut r = Reasoner::new(o)?;
        Ok(Verification {
            signature: sig_concept(d).is_subset(sigma),
            left: r.subsumes(&Concept::and2(context.clone(), target.clone()), d)?,
            right: r.subsumes(&Concept::and2(context.clone(), d.clone()), target)?,
        })
    };
    let found = |d: Concept, v: Verification, trace: Option<&EliminationTrace>| {
        let mut rep = match trace {
            Some(t) => InterpolantReport::from_trace(Status::Found, t),
            None => InterpolantReport::empty(Status::Found, sigma),
        };
        rep.interpolant = Some(d.to_string());
        rep.concept = Some(d);
        rep.verification = v;
        rep
    };
    if sig_concept(target).is_subset(sigma) {
        let v = check(target)?;
        return Ok(found(target.clone(), v, None));
    }
    let all = sig_ontology(o).union(&sig_concept(context)).union(&sig_concept(target));
    let ren = Renaming::outside(&all, sigma, "s", &all);
    let copy = ren.ontology(o);
    let both = o.union(&copy);
    let lhs = Concept::and2(context.clone(), target.clone());
    // C_Σ -> C0_Σ
    let rhs = Concept::or2(Concept::not(ren.concept(context)), ren.concept(target));
    if !Reasoner::new(&both)?.subsumes(&lhs, &rhs)? {
        return Err(Error::NotDefinable(format!("{} is not implicitly definable from the given signature", target)));
    }
    let (consistent, trace) = joint_consistency_split(o, &lhs, &copy, &Concept::not(rhs), sigma)?;
    if consistent {
        return Err(Error::Verification("implicitly definable but no interpolant found".into()));
    }
    let d = tidy::tidy(o, &interpolant_from_trace(&trace)?)?;
    let v = check(&d)?;
    if !v.all() {
        return Err(Error::Verification(format!("definition {} fails {:?}", d, v)));
    }
    Ok(found(d, v, Some(&trace)))
}

/// `⊓_{m≤n} ⊓_{r1..rm} ∀r1…∀rm.⊓_{C⊑D∈o}(¬C ⊔ D)` over the role names of `o`.
/// Built bottom-up so that every level shares the one below.
pub fn phi_depth(o: &Ontology, n: usize) -> Concept {
    let roles: Vec<String> = sig_ontology(o).roles.into_iter().collect();
    phi_over(o, &roles, n)
}

fn phi_over(o: &Ontology, roles: &[String], n: usize) -> Concept {
    let g = Concept::and(o.iter().map(|ax| Concept::or2(Concept::not(ax.lhs.clone()), ax.rhs.clone())).collect());
    if g.is_top() {
        return g;
    }
    let mut p = g.clone();
    for _ in 0..n {
        let mut parts = vec![g.clone()];
        parts.extend(roles.iter().map(|r| Concept::forall(r, p.clone())));
        p = Concept::and(parts);
    }
    p
}

/// The ontology-free pair `(Φ ⊓ c1, Φ → c2)` with `Φ` materialised to
/// `depth`. Paths run over the roles of `o`, `c1` and `c2`: a role used only
/// in the concepts still leads to elements the ontology constrains.
pub fn ontology_free_reduction(o: &Ontology, c1: &Concept, c2: &Concept, depth: usize) -> (Concept, Concept) {
    let roles: Vec<String> = sig_ontology(o).union(&sig_concept(c1)).union(&sig_concept(c2)).roles.into_iter().collect();
    let phi = phi_over(o, &roles, depth);
    (Concept::and2(phi.clone(), c1.clone()), Concept::or2(Concept::not(phi), c2.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reasoner::equivalent_concepts;
    use crate::syntax::{parse_concept, parse_ontology};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn chain_with_middle_signature() {
        let o = parse_ontology("A1 [= A2. A2 [= A3.").unwrap();
        let sigma = Signature::from_lists(&["A2"], &[], &[]);
        let rep = craig_or_sigma_interpolant(&o, &Ontology::new(), &c("A1"), &c("A3"), Some(&sigma)).unwrap();
        assert_eq!(rep.status, Status::Found);
        assert_eq!(rep.interpolant.as_deref(), Some("A2"));
    }

    #[test]
    fn not_entailed() {
        let e = Ontology::new();
        let rep = craig_or_sigma_interpolant(&e, &e, &c("A"), &c("B"), None).unwrap();
        assert_eq!(rep.status, Status::NotEntailed);
        assert!(!rep.verification.all());
    }

    #[test]
    fn none_exists_for_a_too_small_signature() {
        let o = parse_ontology("A [= B. B [= C.").unwrap();
        let rep = craig_or_sigma_interpolant(&o, &Ontology::new(), &c("A"), &c("C"), Some(&Signature::new())).unwrap();
        assert_eq!(rep.status, Status::NoneExists);
    }

    #[test]
    fn phi_shapes() {
        let o = parse_ontology("A [= some r.B.").unwrap();
        assert!(equivalent_concepts(&Ontology::new(), &phi_depth(&o, 0), &c("not A or some r.B")).unwrap());
        let two = c("(not A or some r.B) and all r.(not A or some r.B) and all r.all r.(not A or some r.B)");
        assert!(equivalent_concepts(&Ontology::new(), &phi_depth(&o, 2), &two).unwrap());
        assert!(phi_depth(&Ontology::new(), 3).is_top());
    }

    #[test]
    fn target_in_signature_defines_itself() {
        let o = parse_ontology("A [= B.").unwrap();
        let rep = explicit_definition(&o, &Concept::top(), &c("A"), &Signature::from_lists(&["A"], &[], &[])).unwrap();
        assert_eq!(rep.interpolant.as_deref(), Some("A"));
    }

    #[test]
    fn independent_name_is_not_definable() {
        let r = explicit_definition(&Ontology::new(), &Concept::top(), &c("A"), &Signature::new());
        assert!(matches!(r, Err(Error::NotDefinable(_))));
    }
}
