use std::collections::{BTreeSet, HashMap};

use super::tableau::Reasoner;
use crate::error::Result;
use crate::syntax::{sig_ontology, Concept, Inclusion, Ontology, Signature};

/// Candidate Σ-inclusions in a fixed order: left sides are conjunctions of
/// Σ concept names, right sides are disjunctions of at most two items, where
/// an item is a Σ literal or `some r.F` / `all r.F` and a filler `F` is an
/// item or a binary conjunction or disjunction of items one level down.
/// Candidates are ordered by size, then by rendering.
pub struct CandidateGrammar {
    names: Vec<String>,
    roles: Vec<String>,
    items: HashMap<(usize, usize), Vec<(usize, Concept)>>,
    fillers: HashMap<(usize, usize), Vec<(usize, Concept)>>,
}

impl CandidateGrammar {
    pub fn new(sigma: &Signature) -> Self {
        CandidateGrammar {
            names: sigma.concepts.iter().cloned().collect(),
            roles: sigma.roles.iter().cloned().collect(),
            items: HashMap::new(),
            fillers: HashMap::new(),
        }
    }

    fn items(&mut self, depth: usize, max: usize) -> Vec<(usize, Concept)> {
        if let Some(v) = self.items.get(&(depth, max)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for a in &self.names {
            if max >= 1 {
                out.push((1, Concept::name(a)));
            }
            if max >= 2 {
                out.push((2, Concept::not(Concept::name(a))));
            }
        }
        if depth > 0 && max >= 2 {
            let inner = self.fillers(depth - 1, max - 1);
            for r in self.roles.clone() {
                for (c, f) in &inner {
                    out.push((c + 1, Concept::exists(&r, f.clone())));
                    out.push((c + 1, Concept::forall(&r, f.clone())));
                }
            }
        }
        self.items.insert((depth, max), out.clone());
        out
    }

    fn fillers(&mut self, depth: usize, max: usize) -> Vec<(usize, Concept)> {
        if let Some(v) = self.fillers.get(&(depth, max)) {
            return v.clone();
        }
        let items = self.items(depth, max);
        let mut out = items.clone();
        for (i, (ca, a)) in items.iter().enumerate() {
            for (cb, b) in &items[i + 1..] {
                if ca + cb + 1 <= max {
                    out.push((ca + cb + 1, Concept::and2(a.clone(), b.clone())));
                    out.push((ca + cb + 1, Concept::or2(a.clone(), b.clone())));
                }
            }
        }
        self.fillers.insert((depth, max), out.clone());
        out
    }

    fn right_sides(&mut self, depth: usize, max: usize) -> Vec<(usize, Concept)> {
        let items = self.items(depth, max);
        let mut out = vec![(0, Concept::bottom())];
        out.extend(items.iter().cloned());
        for (i, (ca, a)) in items.iter().enumerate() {
            for (cb, b) in &items[i + 1..] {
                if ca + cb + 1 <= max {
                    out.push((ca + cb + 1, Concept::or2(a.clone(), b.clone())));
                }
            }
        }
        out
    }

    fn left_sides(&self) -> Vec<(usize, Concept)> {
        let n = self.names.len().min(16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let parts: Vec<Concept> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| Concept::name(&self.names[i])).collect();
            out.push((parts.len(), Concept::and(parts)));
        }
        out
    }

    /// The first `budget` candidates of role depth at most `depth`.
    pub fn candidates(&mut self, depth: usize, budget: usize) -> Vec<Inclusion> {
        let lefts = self.left_sides();
        let mut max = 1;
        let mut last = 0;
        let mut all;
        loop {
            let rights = self.right_sides(depth, max);
            all = Vec::with_capacity(lefts.len() * rights.len());
            for (cl, l) in &lefts {
                for (cr, r) in &rights {
                    all.push((cl + cr, l.clone(), r.clone()));
                }
            }
            // stop once the budget is covered or the grammar is exhausted
            if all.len() >= budget || (all.len() == last && max > 4 * (depth + 2)) {
                break;
            }
            last = all.len();
            max += 1;
        }
        let mut keyed: Vec<(usize, String, String, Inclusion)> = all
            .into_iter()
            .map(|(c, l, r)| (c, l.to_string(), r.to_string(), Inclusion::new(l, r)))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
        let mut seen = BTreeSet::new();
        keyed
            .into_iter()
            .filter(|k| seen.insert((k.1.clone(), k.2.clone())))
            .take(budget)
            .map(|k| k.3)
            .collect()
    }
}

/// Σ-inclusions from the candidate grammar entailed by `o1` but not by `o2`.
/// An empty answer only means that no witness exists within the bound.
pub fn logical_diff_bounded(
    o1: &Ontology,
    o2: &Ontology,
    sigma: &Signature,
    depth: usize,
    budget: usize,
) -> Result<Vec<Inclusion>> {
    let mut r1 = Reasoner::new(o1)?;
    let mut r2 = Reasoner::new(o2)?;
    let mut out = Vec::new();
    for ci in CandidateGrammar::new(sigma).candidates(depth, budget) {
        if r1.entails(&ci)? && !r2.entails(&ci)? {
            out.push(ci);
        }
    }
    Ok(out)
}

/// `o1` is contained in `o2` and no bounded witness separates them over sig(o1).
pub fn conservative_extension_bounded(o1: &Ontology, o2: &Ontology, depth: usize, budget: usize) -> Result<bool> {
    let contained = o1.iter().all(|a| o2.iter().any(|b| b == a));
    Ok(contained && logical_diff_bounded(o2, o1, &sig_ontology(o1), depth, budget)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_ontology;

    #[test]
    fn missing_axiom_is_found() {
        let o1 = parse_ontology("A [= B.").unwrap();
        let sigma = Signature::from_lists(&["A", "B"], &[], &[]);
        let d = logical_diff_bounded(&o1, &Ontology::new(), &sigma, 0, 100).unwrap();
        assert!(d.iter().any(|ci| ci.to_string() == "A [= B."));
        assert!(logical_diff_bounded(&o1, &o1, &sigma, 2, 500).unwrap().is_empty());
    }

    #[test]
    fn candidate_order_is_deterministic() {
        let sigma = Signature::from_lists(&["A", "B"], &["r"], &[]);
        let a = CandidateGrammar::new(&sigma).candidates(2, 300);
        let b = CandidateGrammar::new(&sigma).candidates(2, 300);
        assert_eq!(a.len(), 300);
        assert_eq!(a, b);
    }

    #[test]
    fn conservative_extensions() {
        let o1 = parse_ontology("A [= B.").unwrap();
        let o2 = parse_ontology("A [= B. B [= C.").unwrap();
        assert!(conservative_extension_bounded(&o1, &o2, 1, 300).unwrap());
        let o3 = parse_ontology("A [= B. B [= A.").unwrap();
        assert!(!conservative_extension_bounded(&o1, &o3, 1, 300).unwrap());
    }
}
