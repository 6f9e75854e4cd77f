use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::concept::{Concept, Inclusion, Name, Node};
use super::ontology::{Ontology, Signature};
use crate::error::{Error, Result};

/// Negation normal form. Negated fixpoints are left as `not (nu X. …)`, the
/// language has no least fixpoint to dualise them into.
pub fn nnf(c: &Concept) -> Concept {
    let mut memo = HashMap::new();
    nnf_pol(c, true, &mut memo)
}

/// `nnf(not c)`
pub fn negate(c: &Concept) -> Concept {
    let mut memo = HashMap::new();
    nnf_pol(c, false, &mut memo)
}

fn addr(c: &Concept) -> usize {
    c.node() as *const Node as usize
}

fn nnf_pol(c: &Concept, pos: bool, memo: &mut HashMap<(usize, bool), Concept>) -> Concept {
    if let Some(r) = memo.get(&(addr(c), pos)) {
        return r.clone();
    }
    let r = match &**c {
        Node::Top => {
            if pos {
                c.clone()
            } else {
                Concept::bottom()
            }
        }
        Node::Bottom => {
            if pos {
                c.clone()
            } else {
                Concept::top()
            }
        }
        Node::Name(_) | Node::Nominal(_) | Node::Var(_) => {
            if pos {
                c.clone()
            } else {
                Concept::not(c.clone())
            }
        }
        Node::Not(d) => nnf_pol(d, !pos, memo),
        Node::And(cs) | Node::Or(cs) => {
            let kids: Vec<Concept> = cs.iter().map(|k| nnf_pol(k, pos, memo)).collect();
            let conj = matches!(&**c, Node::And(_)) == pos;
            if conj {
                Concept::new(Node::And(kids))
            } else {
                Concept::new(Node::Or(kids))
            }
        }
        Node::Exists(r, d) => {
            if pos {
                Concept::exists_n(r.clone(), nnf_pol(d, true, memo))
            } else {
                Concept::forall_n(r.clone(), nnf_pol(d, false, memo))
            }
        }
        Node::Forall(r, d) => {
            if pos {
                Concept::forall_n(r.clone(), nnf_pol(d, true, memo))
            } else {
                Concept::exists_n(r.clone(), nnf_pol(d, false, memo))
            }
        }
        Node::Nu(x, d) => {
            let n = Concept::nu_n(x.clone(), nnf_pol(d, true, memo));
            if pos {
                n
            } else {
                Concept::not(n)
            }
        }
    };
    memo.insert((addr(c), pos), r.clone());
    r
}

/// Single negation with `not not C` collapsed to `C`.
pub fn single_negation(c: &Concept) -> Concept {
    match &**c {
        Node::Not(d) => d.clone(),
        _ => Concept::not(c.clone()),
    }
}

pub fn subconcepts_into(c: &Concept, out: &mut BTreeSet<Concept>) {
    if out.insert(c.clone()) {
        for k in c.children() {
            subconcepts_into(k, out);
        }
    }
}

pub fn subconcepts(c: &Concept) -> BTreeSet<Concept> {
    let mut s = BTreeSet::new();
    subconcepts_into(c, &mut s);
    s
}

/// Input to the structural utilities that accept either kind of object.
#[derive(Clone, Copy)]
pub enum Source<'a> {
    Ontology(&'a Ontology),
    Concept(&'a Concept),
}

impl<'a> Source<'a> {
    fn concepts(&self) -> Vec<&'a Concept> {
        match self {
            Source::Ontology(o) => o.iter().flat_map(|a| [&a.lhs, &a.rhs]).collect(),
            Source::Concept(c) => vec![*c],
        }
    }
}

/// All subconcepts of the sources, closed under single negation.
pub fn closure_gamma(sources: &[Source<'_>]) -> Result<BTreeSet<Concept>> {
    let mut subs = BTreeSet::new();
    for s in sources {
        for c in s.concepts() {
            if c.has_fixpoint() {
                return Err(Error::Unsupported(format!("fixpoint concept in closure: {}", c)));
            }
            subconcepts_into(c, &mut subs);
        }
    }
    let mut out = subs.clone();
    for c in subs {
        out.insert(single_negation(&c));
    }
    Ok(out)
}

fn collect_sig(c: &Concept, sig: &mut Signature) {
    fn go(c: &Concept, sig: &mut Signature, seen: &mut HashSet<usize>) {
        if !seen.insert(addr(c)) {
            return;
        }
        match &**c {
            Node::Name(n) => {
                sig.concepts.insert(n.to_string());
            }
            Node::Nominal(a) => {
                sig.individuals.insert(a.to_string());
            }
            Node::Exists(r, d) | Node::Forall(r, d) => {
                sig.roles.insert(r.to_string());
                go(d, sig, seen);
            }
            _ => {
                for k in c.children() {
                    go(k, sig, seen);
                }
            }
        }
    }
    go(c, sig, &mut HashSet::new())
}

pub fn role_depth(c: &Concept) -> usize {
    fn go(c: &Concept, memo: &mut HashMap<usize, usize>) -> usize {
        if let Some(&d) = memo.get(&addr(c)) {
            return d;
        }
        let d = match &**c {
            Node::Exists(_, d) | Node::Forall(_, d) => 1 + go(d, memo),
            _ => c.children().into_iter().map(|k| go(k, memo)).max().unwrap_or(0),
        };
        memo.insert(addr(c), d);
        d
    }
    go(c, &mut HashMap::new())
}

pub fn sig_concept(c: &Concept) -> Signature {
    let mut s = Signature::new();
    collect_sig(c, &mut s);
    s
}

pub fn sig_ontology(o: &Ontology) -> Signature {
    let mut s = Signature::new();
    for a in o.iter() {
        collect_sig(&a.lhs, &mut s);
        collect_sig(&a.rhs, &mut s);
    }
    s
}

pub fn sig_inclusion(a: &Inclusion) -> Signature {
    let mut s = Signature::new();
    collect_sig(&a.lhs, &mut s);
    collect_sig(&a.rhs, &mut s);
    s
}

/// Signature and role depth of an ontology (maximum over axiom sides) or concept.
pub fn sig_and_depth(x: Source<'_>) -> (Signature, usize) {
    let cs = x.concepts();
    let mut s = Signature::new();
    for c in &cs {
        collect_sig(c, &mut s);
    }
    (s, cs.iter().map(|c| role_depth(c)).max().unwrap_or(0))
}

/// A uniform symbol renaming; unmapped symbols stay as they are.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Renaming {
    pub map: BTreeMap<String, String>,
}

impl Renaming {
    /// Maps every symbol of `sig` outside `keep` to `name_suffix`, adding a
    /// counter while the candidate clashes with `sig`, `avoid` or an earlier image.
    pub fn outside(sig: &Signature, keep: &Signature, suffix: &str, avoid: &Signature) -> Renaming {
        let used: BTreeSet<String> = sig.all_names().union(&avoid.all_names()).cloned().collect();
        let mut taken = used.clone();
        let mut map = BTreeMap::new();
        let kinds = [(&sig.concepts, &keep.concepts), (&sig.roles, &keep.roles), (&sig.individuals, &keep.individuals)];
        for (names, kept) in kinds {
            for n in names {
                if kept.contains(n) {
                    continue;
                }
                let base = format!("{}_{}", n, suffix);
                let mut fresh = base.clone();
                let mut k = 1;
                while taken.contains(&fresh) {
                    k += 1;
                    fresh = format!("{}{}", base, k);
                }
                taken.insert(fresh.clone());
                map.insert(n.clone(), fresh);
            }
        }
        Renaming { map }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    fn get(&self, n: &Name) -> Option<Name> {
        self.map.get(&**n).map(|s| Name::from(s.as_str()))
    }

    pub fn concept(&self, c: &Concept) -> Concept {
        if self.map.is_empty() {
            return c.clone();
        }
        match &**c {
            Node::Name(n) => self.get(n).map(Concept::atom).unwrap_or_else(|| c.clone()),
            Node::Nominal(a) => self.get(a).map(|b| Concept::new(Node::Nominal(b))).unwrap_or_else(|| c.clone()),
            Node::Exists(r, d) => Concept::exists_n(self.get(r).unwrap_or_else(|| r.clone()), self.concept(d)),
            Node::Forall(r, d) => Concept::forall_n(self.get(r).unwrap_or_else(|| r.clone()), self.concept(d)),
            _ => {
                let kids: Vec<Concept> = c.children().into_iter().map(|k| self.concept(k)).collect();
                if kids.is_empty() {
                    c.clone()
                } else {
                    c.with_children(kids)
                }
            }
        }
    }

    pub fn ontology(&self, o: &Ontology) -> Ontology {
        o.map(|c| self.concept(c))
    }

    pub fn signature(&self, s: &Signature) -> Signature {
        let f = |set: &BTreeSet<String>| set.iter().map(|n| self.map.get(n).cloned().unwrap_or_else(|| n.clone())).collect();
        Signature { concepts: f(&s.concepts), roles: f(&s.roles), individuals: f(&s.individuals) }
    }

    pub fn inverse(&self) -> Renaming {
        Renaming { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }
}

/// Renames every symbol of an ontology not in `keep`.
pub fn rename_outside_ontology(o: &Ontology, keep: &Signature, suffix: &str) -> (Ontology, Renaming) {
    let r = Renaming::outside(&sig_ontology(o), keep, suffix, &Signature::new());
    (r.ontology(o), r)
}

/// Renames every symbol of a concept not in `keep`.
pub fn rename_outside_concept(c: &Concept, keep: &Signature, suffix: &str) -> (Concept, Renaming) {
    let r = Renaming::outside(&sig_concept(c), keep, suffix, &Signature::new());
    (r.concept(c), r)
}

/// Replaces free occurrences of variable `x` by `by`.
pub fn substitute_var(c: &Concept, x: &str, by: &Concept) -> Concept {
    // only unshadowed positions are ever visited, so sharing by address is safe
    fn go(c: &Concept, x: &str, by: &Concept, memo: &mut HashMap<usize, Concept>) -> Concept {
        let key = addr(c);
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let r = match &**c {
            Node::Var(y) if &**y == x => by.clone(),
            Node::Nu(y, _) if &**y == x => c.clone(),
            _ => {
                let kids: Vec<Concept> = c.children().into_iter().map(|k| go(k, x, by, memo)).collect();
                if kids.is_empty() {
                    c.clone()
                } else {
                    c.with_children(kids)
                }
            }
        };
        memo.insert(key, r.clone());
        r
    }
    go(c, x, by, &mut HashMap::new())
}

/// Replaces concept name `a` by `by`. Shared subterms are visited once.
pub fn substitute_name(c: &Concept, a: &str, by: &Concept) -> Concept {
    fn go(c: &Concept, a: &str, by: &Concept, memo: &mut HashMap<usize, Concept>) -> Concept {
        let key = addr(c);
        if let Some(r) = memo.get(&key) {
            return r.clone();
        }
        let r = match &**c {
            Node::Name(n) if &**n == a => by.clone(),
            _ => {
                let kids: Vec<Concept> = c.children().into_iter().map(|k| go(k, a, by, memo)).collect();
                if kids.is_empty() || kids.iter().zip(c.children()).all(|(x, y)| x.ptr_eq(y)) {
                    c.clone()
                } else {
                    c.with_children(kids)
                }
            }
        };
        memo.insert(key, r.clone());
        r
    }
    go(c, a, by, &mut HashMap::new())
}

/// Whether concept name `a` occurs; shared subterms are visited once.
pub fn mentions_name(c: &Concept, a: &str) -> bool {
    fn go(c: &Concept, a: &str, seen: &mut std::collections::HashSet<usize>) -> bool {
        if !seen.insert(addr(c)) {
            return false;
        }
        match &**c {
            Node::Name(n) => &**n == a,
            _ => c.children().into_iter().any(|k| go(k, a, seen)),
        }
    }
    go(c, a, &mut std::collections::HashSet::new())
}

/// Replaces every `nu X. B` by its `k`-fold unfolding with `top` at the leaves.
pub fn unroll(c: &Concept, k: usize) -> Concept {
    match &**c {
        Node::Nu(x, body) => {
            let body = unroll(body, k);
            let mut acc = Concept::top();
            for _ in 0..k {
                acc = substitute_var(&body, x, &acc);
            }
            acc
        }
        _ => {
            let kids: Vec<Concept> = c.children().into_iter().map(|ch| unroll(ch, k)).collect();
            if kids.is_empty() {
                c.clone()
            } else {
                c.with_children(kids)
            }
        }
    }
}

pub fn unroll_ontology(o: &Ontology, k: usize) -> Ontology {
    o.map(|c| unroll(c, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::{parse_concept, parse_ontology};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn nnf_examples() {
        assert_eq!(nnf(&c("not (A and some r.B)")), c("not A or all r.not B"));
        assert_eq!(nnf(&c("not not A")), c("A"));
        assert_eq!(nnf(&c("not all r.A")), c("some r.not A"));
        assert_eq!(nnf(&c("not top")), c("bot"));
    }

    #[test]
    fn closure_example() {
        let o = parse_ontology("A [= some r.B.").unwrap();
        let g = closure_gamma(&[Source::Ontology(&o)]).unwrap();
        let want: BTreeSet<Concept> =
            ["A", "B", "some r.B", "not A", "not B", "not some r.B"].iter().map(|s| c(s)).collect();
        assert_eq!(g, want);
        assert!(closure_gamma(&[]).unwrap().is_empty());
        assert!(closure_gamma(&[Source::Concept(&c("nu X. some r.X"))]).is_err());
    }

    #[test]
    fn signature_and_depth() {
        let o = parse_ontology("Car [= some hasPart.PrimeMover.").unwrap();
        let (s, d) = sig_and_depth(Source::Ontology(&o));
        assert_eq!(s, Signature::from_lists(&["Car", "PrimeMover"], &["hasPart"], &[]));
        assert_eq!(d, 1);
        assert_eq!(role_depth(&c("some r.all s.A")), 2);
        assert_eq!(role_depth(&c("A")), 0);
    }

    #[test]
    fn rename_chain() {
        let o = parse_ontology("A1 [= A2. A2 [= A3.").unwrap();
        let keep = Signature::from_lists(&["A1", "A3"], &[], &[]);
        let (r, m) = rename_outside_ontology(&o, &keep, "s");
        assert_eq!(r, parse_ontology("A1 [= A2_s. A2_s [= A3.").unwrap());
        assert_eq!(m.map.get("A2").map(|s| s.as_str()), Some("A2_s"));
        let (r2, m2) = rename_outside_ontology(&r, &keep, "t");
        assert_eq!(r2, parse_ontology("A1 [= A2_s_t. A2_s_t [= A3.").unwrap());
        assert_eq!(m2.map.len(), 1);
        let all = sig_ontology(&o);
        let (same, m3) = rename_outside_ontology(&o, &all, "s");
        assert_eq!(same, o);
        assert!(m3.is_empty());
    }

    #[test]
    fn rename_avoids_collisions() {
        let o = parse_ontology("A [= A_s.").unwrap();
        let (r, _) = rename_outside_ontology(&o, &Signature::new(), "s");
        assert_eq!(r, parse_ontology("A_s2 [= A_s_s.").unwrap());
    }

    #[test]
    fn unrolling() {
        assert_eq!(unroll(&c("nu X. some r.X"), 2), c("some r.some r.top"));
        assert_eq!(unroll(&c("A and nu X. B and all r.X"), 1), c("A and (B and all r.top)"));
    }
}
