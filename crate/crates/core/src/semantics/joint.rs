use std::collections::{BTreeSet, HashSet};

use varisat::{ExtendFormula, Lit, Solver};

use super::bisim::{greatest_bisimulation, Flavor};
use super::countermodel::{solve, Encoder};
use super::eval::Evaluator;
use super::interpretation::Interpretation;
use crate::error::{Error, Result};
use crate::syntax::{sig_concept, sig_ontology, Concept, Ontology, Signature};

/// Two models of an ontology with Σ-bisimilar elements `0` satisfying `c1`
/// and `c2` respectively.
#[derive(Debug, Clone)]
pub struct JointWitness {
    pub i1: Interpretation,
    pub i2: Interpretation,
    pub bisimulation: BTreeSet<(usize, usize)>,
}

/// Bounded search for a witness of joint consistency: both domains have at
/// most `max_domain` elements. `None` says nothing beyond the bound.
pub fn bisimilar_models(
    o: &Ontology,
    c1: &Concept,
    c2: &Concept,
    sigma: &Signature,
    flavor: Flavor,
    max_domain: usize,
) -> Result<Option<JointWitness>> {
    if o.has_fixpoint() || c1.has_fixpoint() || c2.has_fixpoint() {
        return Err(Error::Unsupported("model-pair search needs fixpoint-free input".into()));
    }
    let sig = sig_ontology(o).union(&sig_concept(c1)).union(&sig_concept(c2)).union(sigma);
    let sigma = sigma.intersection(&sig);
    // sizes by increasing maximum, then by first size
    let mut sizes: Vec<(usize, usize)> = (1..=max_domain).flat_map(|a| (1..=max_domain).map(move |b| (a, b))).collect();
    sizes.sort_by_key(|&(a, b)| (a.max(b), a, b));
    for (n1, n2) in sizes {
        if let Some(w) = search(o, c1, c2, &sig, &sigma, flavor, n1, n2)? {
            let (e1, e2) = (Evaluator::new(&w.i1), Evaluator::new(&w.i2));
            let ok = e1.satisfies(o)?
                && e2.satisfies(o)?
                && e1.eval(c1)?.contains(0)
                && e2.eval(c2)?.contains(0)
                && w.bisimulation.contains(&(0, 0));
            if !ok {
                return Err(Error::Verification(format!("model pair of sizes {}/{} fails re-evaluation", n1, n2)));
            }
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn search(
    o: &Ontology,
    c1: &Concept,
    c2: &Concept,
    sig: &Signature,
    sigma: &Signature,
    flavor: Flavor,
    n1: usize,
    n2: usize,
) -> Result<Option<JointWitness>> {
    let mut s: Solver<'static> = Solver::new();
    let mut a = Encoder::new(sig, n1, &mut s);
    let mut b = Encoder::new(sig, n2, &mut s);
    a.assert_ontology(&mut s, o);
    b.assert_ontology(&mut s, o);
    let l1 = a.lit(&mut s, c1, 0);
    let l2 = b.lit(&mut s, c2, 0);
    s.add_clause(&[l1]);
    s.add_clause(&[l2]);
    let z: Vec<Vec<Lit>> = (0..n1).map(|_| (0..n2).map(|_| s.new_lit()).collect()).collect();
    s.add_clause(&[z[0][0]]);
    for d in 0..n1 {
        for e in 0..n2 {
            let mut pairs: Vec<(Lit, Lit)> = sigma
                .concepts
                .iter()
                .map(|n| (a.concept_bit(n, d).unwrap(), b.concept_bit(n, e).unwrap()))
                .collect();
            if flavor == Flavor::Alco {
                pairs.extend(sigma.individuals.iter().map(|n| (a.individual_bit(n, d).unwrap(), b.individual_bit(n, e).unwrap())));
            }
            for (p, q) in pairs {
                s.add_clause(&[!z[d][e], !p, q]);
                s.add_clause(&[!z[d][e], p, !q]);
            }
        }
    }
    for r in &sigma.roles {
        // forth
        for d in 0..n1 {
            for d2 in 0..n1 {
                for e in 0..n2 {
                    let mut cl = vec![!z[d][e], !a.role_bit(r, d, d2).unwrap()];
                    for e2 in 0..n2 {
                        let w = s.new_lit();
                        s.add_clause(&[!w, b.role_bit(r, e, e2).unwrap()]);
                        s.add_clause(&[!w, z[d2][e2]]);
                        cl.push(w);
                    }
                    s.add_clause(&cl);
                }
            }
        }
        // back
        for e in 0..n2 {
            for e2 in 0..n2 {
                for d in 0..n1 {
                    let mut cl = vec![!z[d][e], !b.role_bit(r, e, e2).unwrap()];
                    for d2 in 0..n1 {
                        let w = s.new_lit();
                        s.add_clause(&[!w, a.role_bit(r, d, d2).unwrap()]);
                        s.add_clause(&[!w, z[d2][e2]]);
                        cl.push(w);
                    }
                    s.add_clause(&cl);
                }
            }
        }
    }
    if !solve(&mut s, &[])? {
        return Ok(None);
    }
    let model: HashSet<Lit> = s.model().unwrap_or_default().into_iter().collect();
    let (i1, i2) = (a.decode(&model), b.decode(&model));
    // the relation found by the solver is only a witness; report the largest one
    let bisimulation = greatest_bisimulation(&i1, &i2, sigma, flavor);
    Ok(Some(JointWitness { i1, i2, bisimulation }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_concept;

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn empty_signature_relates_anything() {
        let w = bisimilar_models(&Ontology::new(), &c("A"), &c("not A"), &Signature::new(), Flavor::Alc, 2).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn shared_name_separates() {
        let sigma = Signature::from_lists(&["A"], &[], &[]);
        let w = bisimilar_models(&Ontology::new(), &c("A"), &c("not A"), &sigma, Flavor::Alc, 3).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn doctor_pair_is_separated() {
        let sigma = Signature::from_lists(&["Doctor"], &["child"], &[]);
        let c1 = c("some child.top and all child.Doctor");
        let c2 = c("not some child.(Doctor or Rich)");
        assert!(bisimilar_models(&Ontology::new(), &c1, &c2, &sigma, Flavor::Alc, 3).unwrap().is_none());
        let sigma = Signature::from_lists(&["Doctor"], &[], &[]);
        assert!(bisimilar_models(&Ontology::new(), &c1, &c2, &sigma, Flavor::Alc, 3).unwrap().is_some());
    }
}
