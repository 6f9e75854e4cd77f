use std::collections::{HashMap, HashSet};

use varisat::{ExtendFormula, Lit, Solver};

use super::eval::Evaluator;
use super::interpretation::Interpretation;
use crate::error::{Error, Result};
use crate::syntax::{sig_concept, sig_ontology, Concept, Node, Ontology, Signature};

pub const DEFAULT_DOMAIN_CAP: usize = 8;

/// Domain cap, overridable through `INTERPOL_DOMAIN_CAP`.
pub fn domain_cap() -> usize {
    std::env::var("INTERPOL_DOMAIN_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_DOMAIN_CAP)
}

fn relevant_signature(o: &Ontology, c: &Concept, d: &Concept) -> Signature {
    sig_ontology(o).union(&sig_concept(c)).union(&sig_concept(d))
}

fn check_inputs(o: &Ontology, c: &Concept, d: &Concept, max_domain: usize) -> Result<()> {
    if o.has_fixpoint() || c.has_fixpoint() || d.has_fixpoint() {
        return Err(Error::Unsupported("countermodel search needs fixpoint-free input".into()));
    }
    if max_domain == 0 || max_domain > domain_cap() {
        return Err(Error::Precondition(format!("domain bound must be within 1..={}", domain_cap())));
    }
    Ok(())
}

/// Finite model search for `o` with element 0 in `c and not d`. Domain sizes
/// are tried in increasing order; within a size the lexicographically least
/// assignment (concept bits, then individual bits, then role bits) is returned.
/// `None` only means no countermodel up to the bound.
pub fn bounded_countermodel(
    o: &Ontology,
    c: &Concept,
    d: &Concept,
    max_domain: usize,
) -> Result<Option<(Interpretation, usize)>> {
    check_inputs(o, c, d, max_domain)?;
    let sig = relevant_signature(o, c, d);
    for n in 1..=max_domain {
        if let Some(i) = SizeSearch::new(&sig, n).search(o, c, d)? {
            let ev = Evaluator::new(&i);
            let ok = ev.satisfies(o)? && ev.eval(c)?.contains(0) && !ev.eval(d)?.contains(0);
            if !ok {
                return Err(Error::Verification(format!("countermodel of size {} fails re-evaluation", n)));
            }
            return Ok(Some((i, 0)));
        }
    }
    Ok(None)
}

/// Propositional encoding of one interpretation of size `n` over `sig`.
/// Several encoders can share a solver.
pub(crate) struct Encoder<'s> {
    sig: &'s Signature,
    n: usize,
    tru: Lit,
    concept_bits: HashMap<(String, usize), Lit>,
    individual_bits: HashMap<(String, usize), Lit>,
    role_bits: HashMap<(String, usize, usize), Lit>,
    /// minimisation order: concept bits, then individual bits, then role bits
    pub(crate) order: Vec<Lit>,
    cache: HashMap<(Concept, usize), Lit>,
}

impl<'s> Encoder<'s> {
    pub(crate) fn new(sig: &'s Signature, n: usize, solver: &mut Solver<'static>) -> Self {
        let tru = solver.new_lit();
        solver.add_clause(&[tru]);
        let mut s = Encoder {
            sig,
            n,
            tru,
            concept_bits: HashMap::new(),
            individual_bits: HashMap::new(),
            role_bits: HashMap::new(),
            order: Vec::new(),
            cache: HashMap::new(),
        };
        for a in &sig.concepts {
            for x in 0..n {
                let l = solver.new_lit();
                s.concept_bits.insert((a.clone(), x), l);
                s.order.push(l);
            }
        }
        for a in &sig.individuals {
            let lits: Vec<Lit> = (0..n).map(|_| solver.new_lit()).collect();
            solver.add_clause(&lits);
            for x in 0..n {
                for y in x + 1..n {
                    solver.add_clause(&[!lits[x], !lits[y]]);
                }
                s.individual_bits.insert((a.clone(), x), lits[x]);
            }
            s.order.extend(lits);
        }
        for r in &sig.roles {
            for x in 0..n {
                for y in 0..n {
                    let l = solver.new_lit();
                    s.role_bits.insert((r.clone(), x, y), l);
                    s.order.push(l);
                }
            }
        }
        s
    }

    pub(crate) fn concept_bit(&self, a: &str, x: usize) -> Option<Lit> {
        self.concept_bits.get(&(a.to_string(), x)).copied()
    }
    pub(crate) fn individual_bit(&self, a: &str, x: usize) -> Option<Lit> {
        self.individual_bits.get(&(a.to_string(), x)).copied()
    }
    pub(crate) fn role_bit(&self, r: &str, x: usize, y: usize) -> Option<Lit> {
        self.role_bits.get(&(r.to_string(), x, y)).copied()
    }
    pub(crate) fn lit(&mut self, solver: &mut Solver<'static>, c: &Concept, x: usize) -> Lit {
        if let Some(&l) = self.cache.get(&(c.clone(), x)) {
            return l;
        }
        let l = match &**c {
            Node::Top => self.tru,
            Node::Bottom => !self.tru,
            Node::Name(a) => self.concept_bits[&(a.to_string(), x)],
            Node::Nominal(a) => self.individual_bits[&(a.to_string(), x)],
            Node::Not(d) => !self.lit(solver, d, x),
            Node::And(cs) | Node::Or(cs) => {
                let conj = matches!(&**c, Node::And(_));
                let kids: Vec<Lit> = cs.iter().map(|k| self.lit(solver, k, x)).collect();
                let v = solver.new_lit();
                // conjunction of kids (or of their negations for Or, by duality)
                let (v, kids): (Lit, Vec<Lit>) = if conj { (v, kids) } else { (!v, kids.into_iter().map(|k| !k).collect()) };
                for &k in &kids {
                    solver.add_clause(&[!v, k]);
                }
                let mut big: Vec<Lit> = kids.iter().map(|&k| !k).collect();
                big.push(v);
                solver.add_clause(&big);
                if conj {
                    v
                } else {
                    !v
                }
            }
            Node::Exists(r, d) => {
                let v = solver.new_lit();
                let mut any = vec![!v];
                for y in 0..self.n {
                    let e = self.role_bits[&(r.to_string(), x, y)];
                    let inner = self.lit(solver, d, y);
                    let a = solver.new_lit();
                    solver.add_clause(&[!a, e]);
                    solver.add_clause(&[!a, inner]);
                    solver.add_clause(&[a, !e, !inner]);
                    solver.add_clause(&[!a, v]);
                    any.push(a);
                }
                solver.add_clause(&any);
                v
            }
            Node::Forall(r, d) => {
                let dual = Concept::exists_n(r.clone(), Concept::not(d.clone()));
                !self.lit(solver, &dual, x)
            }
            Node::Nu(..) | Node::Var(_) => unreachable!("fixpoints rejected before encoding"),
        };
        self.cache.insert((c.clone(), x), l);
        l
    }

    pub(crate) fn assert_ontology(&mut self, solver: &mut Solver<'static>, o: &Ontology) {
        for ax in o.iter() {
            for x in 0..self.n {
                let l = self.lit(solver, &ax.lhs, x);
                let r = self.lit(solver, &ax.rhs, x);
                solver.add_clause(&[!l, r]);
            }
        }
    }

    pub(crate) fn decode(&self, fixed: &HashSet<Lit>) -> Interpretation {
        let mut i = Interpretation::new(self.n);
        for ((a, x), l) in &self.concept_bits {
            if fixed.contains(l) {
                i.add_concept(a, *x);
            }
        }
        for a in &self.sig.concepts {
            i.concepts.entry(a.clone()).or_default();
        }
        for ((a, x), l) in &self.individual_bits {
            if fixed.contains(l) {
                i.set_individual(a, *x);
            }
        }
        for ((r, x, y), l) in &self.role_bits {
            if fixed.contains(l) {
                i.add_role(r, *x, *y);
            }
        }
        for r in &self.sig.roles {
            i.roles.entry(r.clone()).or_default();
        }
        i
    }
}

pub(crate) fn solve(solver: &mut Solver<'static>, assumptions: &[Lit]) -> Result<bool> {
    solver.assume(assumptions);
    solver.solve().map_err(|e| Error::Verification(format!("sat solver failure: {}", e)))
}

/// Fixes the literals of `order` one by one, preferring false; the solver
/// must be satisfiable on entry.
pub(crate) fn lex_least(solver: &mut Solver<'static>, order: &[Lit]) -> Result<HashSet<Lit>> {
    let mut fixed = Vec::with_capacity(order.len());
    for &l in order {
        fixed.push(!l);
        if !solve(solver, &fixed)? {
            fixed.pop();
            fixed.push(l);
        }
    }
    Ok(fixed.into_iter().collect())
}

struct SizeSearch<'s> {
    solver: Solver<'static>,
    enc: Encoder<'s>,
}

impl<'s> SizeSearch<'s> {
    fn new(sig: &'s Signature, n: usize) -> Self {
        let mut solver = Solver::new();
        let enc = Encoder::new(sig, n, &mut solver);
        SizeSearch { solver, enc }
    }

    fn search(mut self, o: &Ontology, c: &Concept, d: &Concept) -> Result<Option<Interpretation>> {
        self.enc.assert_ontology(&mut self.solver, o);
        let lc = self.enc.lit(&mut self.solver, c, 0);
        let ld = self.enc.lit(&mut self.solver, d, 0);
        self.solver.add_clause(&[lc]);
        self.solver.add_clause(&[!ld]);
        if !solve(&mut self.solver, &[])? {
            return Ok(None);
        }
        let fixed = lex_least(&mut self.solver, &self.enc.order)?;
        Ok(Some(self.enc.decode(&fixed)))
    }
}

/// Plain enumeration in the same bit order as `bounded_countermodel`; only
/// usable for tiny signatures. Kept as an independent cross-check.
pub fn brute_force_countermodel(
    o: &Ontology,
    c: &Concept,
    d: &Concept,
    max_domain: usize,
) -> Result<Option<(Interpretation, usize)>> {
    check_inputs(o, c, d, max_domain)?;
    let sig = relevant_signature(o, c, d);
    for n in 1..=max_domain {
        let nc = sig.concepts.len() * n;
        let ni = sig.individuals.len() * n;
        let nr = sig.roles.len() * n * n;
        let bits = nc + ni + nr;
        if bits > 26 {
            return Err(Error::ResourceLimit(format!("{} bits is too many for brute force", bits)));
        }
        'next: for k in 0u64..(1u64 << bits) {
            let bit = |j: usize| (k >> (bits - 1 - j)) & 1 == 1;
            let mut i = Interpretation::new(n);
            let mut j = 0;
            for a in &sig.concepts {
                i.concepts.entry(a.clone()).or_default();
                for x in 0..n {
                    if bit(j) {
                        i.add_concept(a, x);
                    }
                    j += 1;
                }
            }
            for a in &sig.individuals {
                let set: Vec<usize> = (0..n).filter(|&x| bit(j + x)).collect();
                j += n;
                if set.len() != 1 {
                    continue 'next;
                }
                i.set_individual(a, set[0]);
            }
            for r in &sig.roles {
                i.roles.entry(r.clone()).or_default();
                for x in 0..n {
                    for y in 0..n {
                        if bit(j) {
                            i.add_role(r, x, y);
                        }
                        j += 1;
                    }
                }
            }
            let ev = Evaluator::new(&i);
            if ev.satisfies(o)? && ev.eval(c)?.contains(0) && !ev.eval(d)?.contains(0) {
                return Ok(Some((i, 0)));
            }
        }
    }
    Ok(None)
}
