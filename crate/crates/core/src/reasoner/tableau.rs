use std::collections::{BTreeSet, HashMap, HashSet};

use varisat::{ExtendFormula, Lit, Solver};

use crate::error::{Error, Result};
use crate::syntax::{negate, nnf, Concept, Inclusion, Name, Node, Ontology};

pub const DEFAULT_CALL_CAP: u64 = 2_000_000;

#[derive(Debug, Clone)]
enum RKind {
    Top,
    Bottom,
    Atom,
    NegAtom,
    And(Vec<u32>),
    Or(Vec<u32>),
    Exists { role: Name, body: u32, neg_body: u32 },
    Forall { dual: u32 },
}

#[derive(Debug, Clone)]
struct RNode {
    kind: RKind,
    lit: Lit,
}

/// ALC satisfiability under a fixed ontology.
///
/// Each node label is a set of NNF concepts. Its Boolean part, together with
/// the internalised axioms, is handed to a SAT solver in which existential
/// restrictions are opaque atoms. A model is accepted once every existential
/// restriction it needs has a satisfiable successor label; otherwise the
/// failure is learnt as a clause `not some r.D or some r.E1 or …` that holds
/// at every element, and the solver is asked again. Labels repeated on the
/// current path are assumed satisfiable (the model loops back).
pub struct Reasoner {
    solver: Solver<'static>,
    tru: Lit,
    ids: HashMap<Concept, u32>,
    nodes: Vec<RNode>,
    axioms: Vec<u32>,
    unsat: HashSet<Vec<u32>>,
    sat: HashSet<Vec<u32>>,
    stack: HashMap<Vec<u32>, usize>,
    calls: u64,
    cap: u64,
}

impl Reasoner {
    pub fn new(o: &Ontology) -> Result<Reasoner> {
        if o.has_fixpoint() {
            return Err(Error::Unsupported("the reasoner needs fixpoint-free ontologies".into()));
        }
        if o.has_nominal() {
            return Err(Error::Unsupported("the ALC reasoner does not handle nominals".into()));
        }
        let mut solver = Solver::new();
        let tru = solver.new_lit();
        solver.add_clause(&[tru]);
        let cap = std::env::var("INTERPOL_CALL_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CALL_CAP);
        let mut r = Reasoner {
            solver,
            tru,
            ids: HashMap::new(),
            nodes: Vec::new(),
            axioms: Vec::new(),
            unsat: HashSet::new(),
            sat: HashSet::new(),
            stack: HashMap::new(),
            calls: 0,
            cap,
        };
        for ax in o.iter() {
            let c = nnf(&Concept::or2(Concept::not(ax.lhs.clone()), ax.rhs.clone()));
            let id = r.intern(&c);
            let l = r.nodes[id as usize].lit;
            r.solver.add_clause(&[l]);
            if !r.axioms.contains(&id) {
                r.axioms.push(id);
            }
        }
        Ok(r)
    }

    fn push(&mut self, c: &Concept, kind: RKind, lit: Lit) -> u32 {
        let id = self.nodes.len() as u32;
        self.nodes.push(RNode { kind, lit });
        self.ids.insert(c.clone(), id);
        id
    }

    fn intern(&mut self, c: &Concept) -> u32 {
        if let Some(&i) = self.ids.get(c) {
            return i;
        }
        match &**c {
            Node::Top => self.push(c, RKind::Top, self.tru),
            Node::Bottom => self.push(c, RKind::Bottom, !self.tru),
            Node::Name(_) | Node::Nominal(_) => {
                let l = self.solver.new_lit();
                self.push(c, RKind::Atom, l)
            }
            Node::Not(d) => {
                let p = self.intern(d);
                let l = !self.nodes[p as usize].lit;
                self.push(c, RKind::NegAtom, l)
            }
            Node::And(cs) | Node::Or(cs) => {
                let conj = matches!(&**c, Node::And(_));
                let kids: Vec<u32> = cs.iter().map(|k| self.intern(k)).collect();
                let v = self.solver.new_lit();
                let kl: Vec<Lit> = kids.iter().map(|&k| self.nodes[k as usize].lit).collect();
                if conj {
                    for &k in &kl {
                        self.solver.add_clause(&[!v, k]);
                    }
                    let mut big: Vec<Lit> = kl.iter().map(|&k| !k).collect();
                    big.push(v);
                    self.solver.add_clause(&big);
                    self.push(c, RKind::And(kids), v)
                } else {
                    for &k in &kl {
                        self.solver.add_clause(&[!k, v]);
                    }
                    let mut big = kl.clone();
                    big.push(!v);
                    self.solver.add_clause(&big);
                    self.push(c, RKind::Or(kids), v)
                }
            }
            Node::Exists(r, d) => {
                let body = self.intern(d);
                let neg_body = self.intern(&negate(d));
                let l = self.solver.new_lit();
                self.push(c, RKind::Exists { role: r.clone(), body, neg_body }, l)
            }
            Node::Forall(r, d) => {
                let dual = self.intern(&Concept::exists_n(r.clone(), negate(d)));
                let l = !self.nodes[dual as usize].lit;
                self.push(c, RKind::Forall { dual }, l)
            }
            Node::Nu(..) | Node::Var(_) => unreachable!("fixpoints rejected"),
        }
    }

    fn model_values(&self) -> Vec<bool> {
        let model = self.solver.model().unwrap_or_default();
        let mut vals = vec![false; model.len() + 1];
        for l in model {
            let i = l.var().index();
            if i >= vals.len() {
                vals.resize(i + 1, false);
            }
            vals[i] = l.is_positive();
        }
        vals
    }

    fn value(vals: &[bool], l: Lit) -> bool {
        let v = vals.get(l.var().index()).copied().unwrap_or(false);
        v == l.is_positive()
    }

    /// Existential restrictions that must hold (`pos`) or fail (`neg`) for the
    /// model to satisfy `id`, choosing one true disjunct per disjunction.
    fn justify(&self, id: u32, vals: &[bool], pos: &mut BTreeSet<u32>, neg: &mut BTreeSet<u32>, seen: &mut HashSet<u32>) {
        if !seen.insert(id) {
            return;
        }
        match &self.nodes[id as usize].kind {
            RKind::Top | RKind::Bottom | RKind::Atom | RKind::NegAtom => {}
            RKind::Exists { .. } => {
                pos.insert(id);
            }
            RKind::Forall { dual } => {
                neg.insert(*dual);
            }
            RKind::And(ks) => {
                for &k in ks {
                    self.justify(k, vals, pos, neg, seen);
                }
            }
            RKind::Or(ks) => {
                let is_true = |k: u32| Self::value(vals, self.nodes[k as usize].lit);
                let local = |k: u32| matches!(self.nodes[k as usize].kind, RKind::Top | RKind::Atom | RKind::NegAtom);
                let pick = ks
                    .iter()
                    .copied()
                    .find(|&k| is_true(k) && local(k))
                    .or_else(|| ks.iter().copied().find(|&k| is_true(k) && seen.contains(&k)))
                    .or_else(|| ks.iter().copied().find(|&k| is_true(k)));
                if let Some(k) = pick {
                    self.justify(k, vals, pos, neg, seen);
                }
            }
        }
    }

    fn successor_label(&self, body: u32, negs: &[u32]) -> Vec<u32> {
        let mut l: Vec<u32> = negs
            .iter()
            .map(|&e| match &self.nodes[e as usize].kind {
                RKind::Exists { neg_body, .. } => *neg_body,
                _ => unreachable!(),
            })
            .collect();
        l.push(body);
        l.sort_unstable();
        l.dedup();
        l
    }

    fn solve(&mut self, label: &[u32]) -> Result<bool> {
        let lits: Vec<Lit> = label.iter().map(|&i| self.nodes[i as usize].lit).collect();
        self.solver.assume(&lits);
        self.solver.solve().map_err(|e| Error::Verification(format!("sat solver failure: {}", e)))
    }

    /// Returns satisfiability and the shallowest stack depth the answer relied on.
    fn sat_label(&mut self, label: Vec<u32>, depth: usize) -> Result<(bool, usize)> {
        if self.unsat.contains(&label) {
            return Ok((false, usize::MAX));
        }
        if self.sat.contains(&label) {
            return Ok((true, usize::MAX));
        }
        if let Some(&d) = self.stack.get(&label) {
            return Ok((true, d));
        }
        self.calls += 1;
        if self.calls > self.cap {
            return Err(Error::ResourceLimit(format!("more than {} tableau node expansions", self.cap)));
        }
        self.stack.insert(label.clone(), depth);
        let result = self.expand(&label, depth);
        self.stack.remove(&label);
        let (ok, dep) = result?;
        if !ok {
            self.unsat.insert(label);
        } else if dep >= depth {
            self.sat.insert(label);
        }
        Ok((ok, if ok { dep } else { usize::MAX }))
    }

    fn expand(&mut self, label: &[u32], depth: usize) -> Result<(bool, usize)> {
        loop {
            if !self.solve(label)? {
                return Ok((false, usize::MAX));
            }
            let vals = self.model_values();
            let (mut pos, mut neg, mut seen) = (BTreeSet::new(), BTreeSet::new(), HashSet::new());
            for &i in label.iter().chain(self.axioms.clone().iter()) {
                self.justify(i, &vals, &mut pos, &mut neg, &mut seen);
            }
            let mut min_dep = usize::MAX;
            let mut failed = None;
            for &e in &pos {
                let (role, body) = match &self.nodes[e as usize].kind {
                    RKind::Exists { role, body, .. } => (role.clone(), *body),
                    _ => unreachable!(),
                };
                let negs: Vec<u32> = neg
                    .iter()
                    .copied()
                    .filter(|&f| matches!(&self.nodes[f as usize].kind, RKind::Exists { role: r, .. } if *r == role))
                    .collect();
                let (ok, dep) = self.sat_label(self.successor_label(body, &negs), depth + 1)?;
                if !ok {
                    failed = Some((e, body, negs));
                    break;
                }
                min_dep = min_dep.min(dep);
            }
            match failed {
                None => return Ok((true, min_dep)),
                Some((e, body, negs)) => {
                    let core = self.shrink(body, negs, depth + 1)?;
                    let mut clause = vec![!self.nodes[e as usize].lit];
                    clause.extend(core.iter().map(|&f| self.nodes[f as usize].lit));
                    self.solver.add_clause(&clause);
                }
            }
        }
    }

    /// Drops universal constraints that are not needed for the successor to be unsatisfiable.
    fn shrink(&mut self, body: u32, mut negs: Vec<u32>, depth: usize) -> Result<Vec<u32>> {
        let mut i = 0;
        while i < negs.len() {
            let mut trial = negs.clone();
            trial.remove(i);
            let (ok, _) = self.sat_label(self.successor_label(body, &trial), depth)?;
            if ok {
                i += 1;
            } else {
                negs = trial;
            }
        }
        Ok(negs)
    }

    fn check(c: &Concept) -> Result<()> {
        if c.has_fixpoint() {
            return Err(Error::Unsupported("the reasoner needs fixpoint-free concepts".into()));
        }
        if c.has_nominal() {
            return Err(Error::Unsupported("the ALC reasoner does not handle nominals".into()));
        }
        Ok(())
    }

    pub fn satisfiable(&mut self, c: &Concept) -> Result<bool> {
        Self::check(c)?;
        let id = self.intern(&nnf(c));
        Ok(self.sat_label(vec![id], 0)?.0)
    }

    pub fn is_consistent(&mut self) -> Result<bool> {
        self.satisfiable(&Concept::top())
    }

    pub fn subsumes(&mut self, c: &Concept, d: &Concept) -> Result<bool> {
        Ok(!self.satisfiable(&Concept::and2(c.clone(), Concept::not(d.clone())))?)
    }

    pub fn entails(&mut self, ci: &Inclusion) -> Result<bool> {
        self.subsumes(&ci.lhs, &ci.rhs)
    }

    pub fn entails_all(&mut self, o: &Ontology) -> Result<bool> {
        for ax in o.iter() {
            if !self.entails(ax)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Node expansions performed so far.
    pub fn expansions(&self) -> u64 {
        self.calls
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_concept, parse_ontology};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn basic_subsumptions() {
        let mut r = Reasoner::new(&parse_ontology("A [= B. B [= some r.C. C [= D.").unwrap()).unwrap();
        assert!(r.subsumes(&c("A"), &c("some r.D")).unwrap());
        assert!(!r.subsumes(&c("some r.D"), &c("A")).unwrap());
        assert!(r.subsumes(&c("A"), &c("top")).unwrap());
        assert!(r.subsumes(&c("bot"), &c("A")).unwrap());
    }

    #[test]
    fn universal_interaction() {
        let mut r = Reasoner::new(&Ontology::new()).unwrap();
        assert!(r.subsumes(&c("some r.A and all r.B"), &c("some r.(A and B)")).unwrap());
        assert!(!r.subsumes(&c("some r.A and all s.B"), &c("some r.(A and B)")).unwrap());
        assert!(r.subsumes(&c("some child.top and all child.Doctor"), &c("some child.(Doctor or Rich)")).unwrap());
    }

    #[test]
    fn cyclic_axioms_terminate() {
        let mut r = Reasoner::new(&parse_ontology("top [= some r.top. A [= all r.A.").unwrap()).unwrap();
        assert!(r.subsumes(&c("A"), &c("some r.some r.some r.A")).unwrap());
        assert!(!r.subsumes(&c("top"), &c("A")).unwrap());
        let mut r = Reasoner::new(&parse_ontology("A [= some r.A. A [= all r.not A.").unwrap()).unwrap();
        assert!(!r.satisfiable(&c("A")).unwrap());
        assert!(r.is_consistent().unwrap());
    }

    #[test]
    fn inconsistent_ontology_entails_everything() {
        let mut r = Reasoner::new(&parse_ontology("top [= A and not A.").unwrap()).unwrap();
        assert!(!r.is_consistent().unwrap());
        assert!(r.subsumes(&c("top"), &c("B")).unwrap());
    }

    #[test]
    fn uni_consequence() {
        let o = parse_ontology(crate::bench::registry::UNI).unwrap();
        let mut r = Reasoner::new(&o).unwrap();
        assert!(r.subsumes(&c("Uni"), &c("some hasEnrolled.(not Undergrad and not Uni)")).unwrap());
        assert!(!r.subsumes(&c("Uni"), &c("Grad")).unwrap());
    }
}
