use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::clause::{clauses_to_ontology, is_definer, Clause, DefinerContext, Literal};
use crate::error::{Error, Result};
use crate::reasoner::Reasoner;
use crate::syntax::{Concept, Name, Signature};

pub const DEFAULT_CLAUSE_CAP: usize = 100_000;

pub fn clause_cap() -> usize {
    std::env::var("INTERPOL_CLAUSE_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CLAUSE_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inference {
    /// resolution on a concept name
    Resolution(Name),
    /// role propagation on a role name
    RolePropagation(Name),
}

fn rename_definer(c: &Clause, from: &Name, to: &Name) -> Clause {
    Clause::new(c.literals().map(|l| match l {
        Literal::Neg(d) if d == from => Literal::Neg(to.clone()),
        _ => l.clone(),
    }))
}

fn admissible(c: &Clause) -> bool {
    !c.is_tautology() && c.respects_invariant()
}

fn resolve(c1: &Clause, c2: &Clause, a: &Name) -> Option<Clause> {
    let r = c1.without(&Literal::Pos(a.clone())).union(&c2.without(&Literal::Neg(a.clone())));
    admissible(&r).then_some(r)
}

/// Role propagation of `all r.d1` in `c1` against `lit2` in `c2`. Returns
/// the conclusion and the combined definer, or `None` if inadmissible.
fn propagate(c1: &Clause, lit1: &Literal, c2: &Clause, lit2: &Literal, ctx: &mut DefinerContext) -> Option<(Clause, Name, bool)> {
    let (Literal::Forall(r, d1), Some(d2)) = (lit1, lit2.filler()) else { return None };
    if d1 == d2 || lit2.role() != Some(r) {
        return None;
    }
    let rest = c1.without(lit1).union(&c2.without(lit2));
    // decide admissibility before creating a definer
    if !admissible(&rest) {
        return None;
    }
    let (d12, fresh) = ctx.combine(d1, d2);
    let q = match lit2 {
        Literal::Exists(..) => Literal::Exists(r.clone(), d12.clone()),
        _ => Literal::Forall(r.clone(), d12.clone()),
    };
    let mut out = rest;
    out.0.insert(q);
    admissible(&out).then_some((out, d12, fresh))
}

/// One inference between two clauses. For role propagation the definition
/// clauses of the combined definer (obtained by resolving `not D12 or D1`
/// and `not D12 or D2` against the clauses of `D1` and `D2` in `clauses`)
/// are returned as well. Inadmissible inferences yield nothing.
pub fn infer_step(c1: &Clause, c2: &Clause, mode: &Inference, clauses: &[Clause], ctx: &mut DefinerContext) -> Result<Vec<Clause>> {
    match mode {
        Inference::Resolution(a) => {
            if !c1.contains(&Literal::Pos(a.clone())) || !c2.contains(&Literal::Neg(a.clone())) {
                return Err(Error::Precondition(format!("resolution on {} needs {} positive in the first and negative in the second clause", a, a)));
            }
            Ok(resolve(c1, c2, a).into_iter().collect())
        }
        Inference::RolePropagation(r) => {
            let foralls: Vec<&Literal> = c1.literals().filter(|l| matches!(l, Literal::Forall(x, _) if x == r)).collect();
            let others: Vec<&Literal> = c2.literals().filter(|l| l.role() == Some(r)).collect();
            if foralls.is_empty() || others.is_empty() {
                return Err(Error::Precondition(format!("role propagation on {} needs all {}.D in the first clause and a {}-restriction in the second", r, r, r)));
            }
            let mut out = Vec::new();
            for l1 in &foralls {
                for l2 in &others {
                    if let Some((k, d12, _)) = propagate(c1, l1, c2, l2, ctx) {
                        out.push(k);
                        for d in [l1.filler().unwrap(), l2.filler().unwrap()] {
                            for c in clauses.iter().filter(|c| c.negative_definer() == Some(d)) {
                                let k = rename_definer(c, d, &d12);
                                if admissible(&k) && !out.contains(&k) {
                                    out.push(k);
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Signed names reachable from each definer through its clauses.
#[derive(Default, Clone)]
struct Reach {
    pos: bool,
    neg: bool,
}

/// The saturation state: every clause ever derived is interned; `active`
/// holds the current, subsumption-reduced set.
pub struct Saturation {
    pub ctx: DefinerContext,
    all: Vec<Clause>,
    ids: HashMap<Clause, usize>,
    active: BTreeSet<usize>,
    done: HashSet<(usize, usize, Name, Name)>,
    synced: HashSet<(usize, Name)>,
    cap: usize,
}

impl Saturation {
    pub fn new(clauses: Vec<Clause>, ctx: DefinerContext) -> Result<Saturation> {
        let mut s = Saturation {
            ctx,
            all: Vec::new(),
            ids: HashMap::new(),
            active: BTreeSet::new(),
            done: HashSet::new(),
            synced: HashSet::new(),
            cap: clause_cap(),
        };
        for c in clauses {
            s.insert(c)?;
        }
        Ok(s)
    }

    pub fn clauses(&self) -> Vec<Clause> {
        self.active.iter().map(|&i| self.all[i].clone()).collect()
    }

    /// Number of distinct clauses seen so far.
    pub fn derived(&self) -> usize {
        self.all.len()
    }

    /// Adds a clause unless it is redundant; removes clauses it subsumes.
    fn insert(&mut self, c: Clause) -> Result<bool> {
        if c.is_tautology() {
            return Ok(false);
        }
        assert!(c.respects_invariant(), "clause {} has two negative definers", c);
        if let Some(&i) = self.ids.get(&c) {
            if self.active.contains(&i) {
                return Ok(false);
            }
        }
        if self.active.iter().any(|&i| self.all[i].subsumes(&c)) {
            return Ok(false);
        }
        let id = match self.ids.get(&c) {
            Some(&i) => i,
            None => {
                if self.all.len() >= self.cap {
                    return Err(Error::ResourceLimit(format!("more than {} derived clauses", self.cap)));
                }
                self.all.push(c.clone());
                self.ids.insert(c.clone(), self.all.len() - 1);
                self.all.len() - 1
            }
        };
        let gone: Vec<usize> = self.active.iter().copied().filter(|&i| c.subsumes(&self.all[i])).collect();
        for i in gone {
            self.active.remove(&i);
        }
        self.active.insert(id);
        Ok(true)
    }

    fn snapshot(&self) -> Vec<usize> {
        self.active.iter().copied().collect()
    }

    /// Occurrences of a concept or role name in the active clauses.
    pub fn occurrences(&self, n: &str) -> usize {
        self.active
            .iter()
            .map(|&i| {
                self.all[i]
                    .literals()
                    .filter(|l| match l {
                        Literal::Pos(a) | Literal::Neg(a) => &**a == n,
                        Literal::Exists(r, _) | Literal::Forall(r, _) => &**r == n,
                    })
                    .count()
            })
            .sum()
    }

    fn reach(&self, a: &Name) -> HashMap<Name, Reach> {
        let mut direct: BTreeMap<Name, (Reach, Vec<Name>)> = BTreeMap::new();
        for &i in &self.active {
            let c = &self.all[i];
            if let Some(d) = c.negative_definer() {
                let e = direct.entry(d.clone()).or_default();
                for l in c.literals() {
                    match l {
                        Literal::Pos(x) if x == a => e.0.pos = true,
                        Literal::Neg(x) if x == a => e.0.neg = true,
                        Literal::Exists(_, f) | Literal::Forall(_, f) => e.1.push(f.clone()),
                        _ => {}
                    }
                }
            }
        }
        let mut out = HashMap::new();
        for d in direct.keys() {
            let mut r = Reach::default();
            let mut seen = HashSet::new();
            let mut stack = vec![d.clone()];
            while let Some(x) = stack.pop() {
                if !seen.insert(x.clone()) {
                    continue;
                }
                if let Some((rx, next)) = direct.get(&x) {
                    r.pos |= rx.pos;
                    r.neg |= rx.neg;
                    stack.extend(next.iter().cloned());
                }
            }
            out.insert(d.clone(), r);
        }
        out
    }

    /// Role propagation over active pairs; `only` restricts to one role and
    /// to existential second premises, `want` filters definer pairs.
    fn propagation_round(&mut self, only: Option<&Name>, want: &dyn Fn(&Name, &Name) -> bool) -> Result<bool> {
        let mut changed = false;
        let act = self.snapshot();
        for &i in &act {
            let foralls: Vec<Literal> = self.all[i].literals().filter(|l| matches!(l, Literal::Forall(..))).cloned().collect();
            for l1 in foralls {
                let r = l1.role().unwrap().clone();
                if only.is_some_and(|o| *o != r) {
                    continue;
                }
                let d1 = l1.filler().unwrap().clone();
                for &j in &act {
                    if i == j || !self.active.contains(&i) || !self.active.contains(&j) {
                        continue;
                    }
                    let lits2: Vec<Literal> = self.all[j]
                        .literals()
                        .filter(|l| l.role() == Some(&r) && (only.is_none() || matches!(l, Literal::Exists(..))))
                        .cloned()
                        .collect();
                    for l2 in lits2 {
                        let d2 = l2.filler().unwrap().clone();
                        if d1 == d2 || !want(&d1, &d2) || self.done.contains(&(i, j, d1.clone(), d2.clone())) {
                            continue;
                        }
                        self.done.insert((i, j, d1.clone(), d2.clone()));
                        let (c1, c2) = (self.all[i].clone(), self.all[j].clone());
                        if let Some((k, _, _)) = propagate(&c1, &l1, &c2, &l2, &mut self.ctx) {
                            changed |= self.insert(k)?;
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    /// Copies the clauses of every definer to the combined definers that
    /// include it, and drops `some r.D` when `not D` has been derived.
    fn housekeeping(&mut self) -> Result<bool> {
        let mut changed = false;
        let combined: Vec<Name> = self.ctx.definers.iter().filter(|d| self.ctx.base_of[*d].len() > 1).cloned().collect();
        for i in self.snapshot() {
            let c = self.all[i].clone();
            let Some(d) = c.negative_definer().cloned() else { continue };
            for k in &combined {
                if *k != d && self.ctx.implies(k, &d) && self.synced.insert((i, k.clone())) {
                    changed |= self.insert(rename_definer(&c, &d, k))?;
                }
            }
        }
        let unsat: Vec<Name> = self
            .active
            .iter()
            .filter_map(|&i| {
                let c = &self.all[i];
                match c.literals().next() {
                    Some(Literal::Neg(d)) if c.len() == 1 && is_definer(d) => Some(d.clone()),
                    _ => None,
                }
            })
            .collect();
        if !unsat.is_empty() {
            for i in self.snapshot() {
                let c = self.all[i].clone();
                for l in c.literals() {
                    if let Literal::Exists(_, d) = l {
                        if unsat.contains(d) {
                            changed |= self.insert(c.without(l))?;
                            break;
                        }
                    }
                }
            }
        }
        Ok(changed)
    }

    fn remove_where(&mut self, f: impl Fn(&Clause) -> bool) {
        let gone: Vec<usize> = self.active.iter().copied().filter(|&i| f(&self.all[i])).collect();
        for i in gone {
            self.active.remove(&i);
        }
    }

    /// Saturates resolution on `a`, then deletes every clause mentioning it.
    pub fn forget_concept(&mut self, a: &Name) -> Result<()> {
        let pos = Literal::Pos(a.clone());
        let neg = Literal::Neg(a.clone());
        let has_pos = self.active.iter().any(|&i| self.all[i].contains(&pos));
        let has_neg = self.active.iter().any(|&i| self.all[i].contains(&neg));
        // pure names: substitute top or bot, which deletes their clauses
        if !(has_pos && has_neg) {
            self.remove_where(|c| c.mentions(a));
            return Ok(());
        }
        loop {
            let mut changed = false;
            let act = self.snapshot();
            let ps: Vec<usize> = act.iter().copied().filter(|&i| self.all[i].contains(&pos)).collect();
            let ns: Vec<usize> = act.iter().copied().filter(|&i| self.all[i].contains(&neg)).collect();
            for &p in &ps {
                for &n in &ns {
                    if !self.done.insert((p, n, a.clone(), a.clone())) {
                        continue;
                    }
                    if let Some(r) = resolve(&self.all[p], &self.all[n], a) {
                        changed |= self.insert(r)?;
                    }
                }
            }
            let reach = self.reach(a);
            let want = |d1: &Name, d2: &Name| {
                let (x, y) = (reach.get(d1).cloned().unwrap_or_default(), reach.get(d2).cloned().unwrap_or_default());
                (x.pos && y.neg) || (x.neg && y.pos)
            };
            changed |= self.propagation_round(None, &want)?;
            changed |= self.housekeeping()?;
            if !changed {
                break;
            }
        }
        self.remove_where(|c| c.mentions(a));
        Ok(())
    }

    /// Forgets role `r`. From `C or some r.D` and `Ci or all r.Di`
    /// (i = 1..n, all clauses sharing at most one negative definer) the
    /// conclusion `C or C1 or ... or Cn` is added whenever the current
    /// clauses make `D and D1 and ... and Dn` unsatisfiable; only minimal
    /// sets are used. Saturated, the clauses mentioning `r` are dropped.
    pub fn forget_role(&mut self, r: &Name) -> Result<()> {
        loop {
            let act = self.snapshot();
            let mut reasoner = Reasoner::new(&clauses_to_ontology(act.iter().map(|&i| &self.all[i])))?;
            let foralls: Vec<(usize, Name)> = act
                .iter()
                .flat_map(|&i| {
                    self.all[i].literals().filter_map(move |l| match l {
                        Literal::Forall(x, d) if x == r => Some((i, d.clone())),
                        _ => None,
                    })
                })
                .collect();
            let mut new = Vec::new();
            for &i in &act {
                let c = self.all[i].clone();
                let owner = c.negative_definer().cloned();
                for l in c.literals() {
                    let Literal::Exists(x, d) = l else { continue };
                    if x != r {
                        continue;
                    }
                    let cands: Vec<(usize, Name)> = foralls
                        .iter()
                        .filter(|(j, _)| {
                            *j != i && match (&owner, self.all[*j].negative_definer()) {
                                (Some(a), Some(b)) => a == b,
                                _ => true,
                            }
                        })
                        .cloned()
                        .collect();
                    let mut sets = Vec::new();
                    minimal_unsat(&mut reasoner, d, &cands, &mut Vec::new(), 0, &mut sets, &self.all)?;
                    for set in sets {
                        let mut k = c.without(l);
                        for &j in &set {
                            let (ci, di) = &cands[j];
                            k = k.union(&self.all[*ci].without(&Literal::Forall(r.clone(), di.clone())));
                        }
                        if admissible(&k) {
                            new.push(k);
                        }
                    }
                }
            }
            let mut changed = false;
            for k in new {
                changed |= self.insert(k)?;
            }
            if !changed {
                break;
            }
        }
        self.remove_where(|c| c.literals().any(|l| l.role() == Some(r)));
        Ok(())
    }
}

/// Minimal index sets `S` over `cands` (distinct clauses and fillers) with
/// `d and (the fillers of S)` unsatisfiable.
fn minimal_unsat(
    reasoner: &mut Reasoner,
    d: &Name,
    cands: &[(usize, Name)],
    chosen: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<Vec<usize>>,
    all: &[Clause],
) -> Result<()> {
    let conj = |set: &[usize]| {
        let mut v = vec![Concept::atom(d.clone())];
        v.extend(set.iter().map(|&j| Concept::atom(cands[j].1.clone())));
        Concept::and(v)
    };
    if !reasoner.satisfiable(&conj(chosen))? {
        // minimal: no proper subset found earlier is contained in it
        if !out.iter().any(|s| s.iter().all(|x| chosen.contains(x))) {
            out.push(chosen.clone());
        }
        return Ok(());
    }
    if from == 0 {
        // nothing can help if even all candidates together are satisfiable
        let every: Vec<usize> = (0..cands.len()).collect();
        if reasoner.satisfiable(&conj(&every))? {
            return Ok(());
        }
    }
    for j in from..cands.len() {
        let (cj, dj) = &cands[j];
        if chosen.iter().any(|&x| cands[x].0 == *cj || cands[x].1 == *dj) {
            continue;
        }
        // at most one negative definer across the premises
        let defs: BTreeSet<&Name> = chosen.iter().chain([&j]).filter_map(|&x| all[cands[x].0].negative_definer()).collect();
        if defs.len() > 1 {
            continue;
        }
        chosen.push(j);
        minimal_unsat(reasoner, d, cands, chosen, j + 1, out, all)?;
        chosen.pop();
    }
    Ok(())
}

/// Forgets the concept names and then the role names of `forget`, each time
/// picking the name with the fewest occurrences (ties by name).
pub fn eliminate_symbols(clauses: Vec<Clause>, ctx: DefinerContext, forget: &Signature) -> Result<(Vec<Clause>, DefinerContext)> {
    if forget.all_names().iter().any(|n| is_definer(n)) {
        return Err(Error::Precondition("definers cannot be forgotten".into()));
    }
    let mut s = Saturation::new(clauses, ctx)?;
    for kind in [&forget.concepts, &forget.roles] {
        let mut left: BTreeSet<String> = kind.clone();
        while !left.is_empty() {
            let next = left.iter().min_by_key(|n| (s.occurrences(n), (*n).clone())).unwrap().clone();
            left.remove(&next);
            let n: Name = Name::from(next.as_str());
            if kind == &forget.concepts {
                s.forget_concept(&n)?;
            } else {
                s.forget_role(&n)?;
            }
        }
    }
    let out = s.clauses();
    debug_assert!(out.iter().all(|c| c.respects_invariant()));
    Ok((out, s.ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::name;
    use crate::uinterp::clause::clausify;
    use crate::syntax::parse_ontology;

    fn cl(lits: &[Literal]) -> Clause {
        Clause::new(lits.iter().cloned())
    }

    #[test]
    fn plain_resolution() {
        let a = name("A");
        let c1 = cl(&[Literal::Pos(a.clone()), Literal::Pos(name("B"))]);
        let c2 = cl(&[Literal::Neg(a.clone())]);
        let out = infer_step(&c1, &c2, &Inference::Resolution(a), &[], &mut DefinerContext::new()).unwrap();
        assert_eq!(out, vec![cl(&[Literal::Pos(name("B"))])]);
    }

    #[test]
    fn wrong_premises_are_rejected() {
        let c = cl(&[Literal::Pos(name("B"))]);
        assert!(infer_step(&c, &c, &Inference::Resolution(name("A")), &[], &mut DefinerContext::new()).is_err());
    }

    #[test]
    fn worked_example_steps() {
        let (clauses, mut ctx) = clausify(&parse_ontology("A [= some r.(B and C). some r.(C and D) [= E.").unwrap()).unwrap();
        let find = |s: &str| clauses.iter().find(|c| c.to_string() == s).unwrap().clone();
        let c1 = find("not A or some r._D1");
        let c4 = find("E or all r._D2");
        // two negative definers: inadmissible
        let c3 = find("C or not _D1");
        let c5 = find("not C or not D or not _D2");
        assert!(infer_step(&c3, &c5, &Inference::Resolution(name("C")), &clauses, &mut ctx).unwrap().is_empty());
        let out = infer_step(&c4, &c1, &Inference::RolePropagation(name("r")), &clauses, &mut ctx).unwrap();
        let shown: Vec<String> = out.iter().map(|c| c.to_string()).collect();
        assert!(shown.contains(&"E or not A or some r._D3".to_string()));
        assert!(shown.contains(&"B or not _D3".to_string()));
        let c10 = find_in(&out, "C or not _D3");
        let c11 = find_in(&out, "not C or not D or not _D3");
        let res = infer_step(&c10, &c11, &Inference::Resolution(name("C")), &clauses, &mut ctx).unwrap();
        assert_eq!(res[0].to_string(), "not D or not _D3");
    }

    fn find_in(cs: &[Clause], s: &str) -> Clause {
        cs.iter().find(|c| c.to_string() == s).unwrap_or_else(|| panic!("{} missing from {:?}", s, cs)).clone()
    }

    #[test]
    fn forgetting_absent_name_is_identity() {
        let (clauses, ctx) = clausify(&parse_ontology("A [= some r.B. B [= C.").unwrap()).unwrap();
        let forget = Signature::from_lists(&["Z"], &[], &[]);
        let (out, _) = eliminate_symbols(clauses.clone(), ctx, &forget).unwrap();
        let mut a = clauses;
        a.sort();
        let mut b = out;
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn invariant_holds_throughout() {
        let (clauses, ctx) = clausify(&parse_ontology("A [= some r.(B and C). some r.(C and D) [= E. all r.C [= F.").unwrap()).unwrap();
        let (out, ctx) = eliminate_symbols(clauses, ctx, &Signature::from_lists(&["C"], &[], &[])).unwrap();
        assert!(out.iter().all(|c| c.respects_invariant()));
        assert!(out.iter().all(|c| !c.mentions("C")));
        assert!(ctx.definers.len() <= 1 << 3);
    }
}
