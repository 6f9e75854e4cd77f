use std::collections::{BTreeMap, BTreeSet};

use super::clause::{clauses_to_ontology, is_definer, Clause, DefinerContext, Literal};
use crate::reasoner::Reasoner;
use crate::error::{Error, Result};
use crate::syntax::ops::{mentions_name, substitute_name};
use crate::syntax::{negate, simplify, Concept, Inclusion, Name, Node, Ontology, Signature};

/// How to present greatest fixpoints that definer elimination produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    Fixpoint,
    Auxiliary,
    /// k-fold unfolding with `top` at the leaves
    Approximate(usize),
}

impl std::str::FromStr for Policy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Policy> {
        match s {
            "fixpoint" => Ok(Policy::Fixpoint),
            "aux" | "auxiliary" => Ok(Policy::Auxiliary),
            _ => match s.strip_prefix("approx:").map(str::parse) {
                Some(Ok(k)) => Ok(Policy::Approximate(k)),
                _ => Err(Error::Precondition(format!("unknown policy '{}', expected fixpoint, aux or approx:K", s))),
            },
        }
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Policy::Fixpoint => f.write_str("fixpoint"),
            Policy::Auxiliary => f.write_str("aux"),
            Policy::Approximate(k) => write!(f, "approx:{}", k),
        }
    }
}

#[derive(Debug, Clone)]
pub struct UIResult {
    pub ontology: Ontology,
    pub used_fixpoints: bool,
    pub auxiliary_names: BTreeSet<String>,
    pub policy: Policy,
}

/// Variable names `X`, `XA`, `XB`, ... (an `X` followed by a digit would be
/// read as a concept name).
fn var_name(k: usize) -> String {
    let mut s = String::from("X");
    let mut k = k;
    while k > 0 {
        k -= 1;
        s.push((b'A' + (k % 26) as u8) as char);
        k /= 26;
    }
    s
}

fn occurs_negatively(c: &Concept, d: &str) -> bool {
    match &**c {
        Node::Not(x) => matches!(&**x, Node::Name(n) if &**n == d) || occurs_negatively(x, d),
        _ => c.children().into_iter().any(|k| occurs_negatively(k, d)),
    }
}

/// Shrinks a clause set before definer elimination without changing its
/// models: definers that the clauses force to be equivalent are merged and
/// clauses entailed by the others are dropped. Substituting mutually
/// recursive definers grows terms quickly, so fewer definers pay off.
pub fn prune_redundant(clauses: Vec<Clause>, ctx: &DefinerContext, cap: usize) -> Result<Vec<Clause>> {
    if clauses.len() > cap {
        return Ok(clauses);
    }
    let clauses = merge_bisimilar(clauses, ctx);
    let clauses = merge_equivalent(clauses, ctx)?;
    let mut order: Vec<usize> = (0..clauses.len()).collect();
    // longest clauses first: they are the likeliest to be redundant
    order.sort_by_key(|&i| std::cmp::Reverse(clauses[i].len()));
    let mut keep = vec![true; clauses.len()];
    for i in order {
        keep[i] = false;
        let rest = clauses_to_ontology(clauses.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| c));
        if !Reasoner::new(&rest)?.entails(&clauses[i].to_inclusion())? {
            keep[i] = true;
        }
    }
    let clauses = clauses.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
    Ok(merge_bisimilar(clauses, ctx))
}

fn definers_in(clauses: &[Clause], ctx: &DefinerContext) -> Vec<Name> {
    let set: BTreeSet<Name> = clauses.iter().flat_map(|c| c.literals().filter_map(definer_of).cloned().collect::<Vec<_>>()).collect();
    let mut v: Vec<Name> = set.into_iter().collect();
    v.sort_by_key(|d| ctx.definers.iter().position(|x| x == d));
    v
}

fn rename_all(clauses: Vec<Clause>, to: &BTreeMap<Name, Name>) -> Vec<Clause> {
    if to.is_empty() {
        return clauses;
    }
    let map = |d: &Name| to.get(d).unwrap_or(d).clone();
    let mut seen = BTreeSet::new();
    clauses
        .iter()
        .map(|c| {
            Clause::new(c.literals().map(|l| match l {
                Literal::Neg(d) if is_definer(d) => Literal::Neg(map(d)),
                Literal::Exists(x, d) => Literal::Exists(x.clone(), map(d)),
                Literal::Forall(x, d) => Literal::Forall(x.clone(), map(d)),
                _ => l.clone(),
            }))
        })
        .filter(|c| !c.is_tautology() && seen.insert(c.clone()))
        .collect()
}

/// Coarsest partition of the definers in which members of a block have the
/// same clauses once definers are replaced by their blocks. The greatest
/// solution is constant on blocks, so each block keeps one member.
fn merge_bisimilar(clauses: Vec<Clause>, ctx: &DefinerContext) -> Vec<Clause> {
    let defs = definers_in(&clauses, ctx);
    let mut block: BTreeMap<Name, usize> = defs.iter().map(|d| (d.clone(), 0)).collect();
    let mut count = 1;
    loop {
        let key = |l: &Literal| match l {
            Literal::Pos(a) => (0, a.to_string()),
            Literal::Neg(a) => (1, a.to_string()),
            Literal::Exists(r, d) => (2, format!("{}.{}", r, block[d])),
            Literal::Forall(r, d) => (3, format!("{}.{}", r, block[d])),
        };
        let mut sigs: BTreeMap<&Name, BTreeSet<Vec<(u8, String)>>> = defs.iter().map(|d| (d, BTreeSet::new())).collect();
        for c in &clauses {
            if let Some(d) = c.negative_definer() {
                let mut k: Vec<(u8, String)> = c.literals().filter(|l| **l != Literal::Neg(d.clone())).map(key).collect();
                k.sort();
                sigs.get_mut(d).unwrap().insert(k);
            }
        }
        let mut ids: BTreeMap<(usize, &BTreeSet<Vec<(u8, String)>>), usize> = BTreeMap::new();
        let mut next = BTreeMap::new();
        for d in &defs {
            let n = ids.len();
            let id = *ids.entry((block[d], &sigs[d])).or_insert(n);
            next.insert(d.clone(), id);
        }
        let stable = ids.len() == count;
        count = ids.len();
        block = next;
        if stable {
            break;
        }
    }
    let mut rep: BTreeMap<usize, Name> = BTreeMap::new();
    let mut to = BTreeMap::new();
    for d in &defs {
        let r = rep.entry(block[d]).or_insert_with(|| d.clone());
        if r != d {
            to.insert(d.clone(), r.clone());
        }
    }
    rename_all(clauses, &to)
}

/// Merges definers that the clauses force to be equivalent.
fn merge_equivalent(clauses: Vec<Clause>, ctx: &DefinerContext) -> Result<Vec<Clause>> {
    let defs = definers_in(&clauses, ctx);
    let mut r = Reasoner::new(&clauses_to_ontology(&clauses))?;
    let mut to: BTreeMap<Name, Name> = BTreeMap::new();
    for (i, a) in defs.iter().enumerate() {
        if to.contains_key(a) {
            continue;
        }
        for b in &defs[i + 1..] {
            if to.contains_key(b) {
                continue;
            }
            let (ca, cb) = (Concept::atom(a.clone()), Concept::atom(b.clone()));
            if r.subsumes(&ca, &cb)? && r.subsumes(&cb, &ca)? {
                to.insert(b.clone(), a.clone());
            }
        }
    }
    Ok(rename_all(clauses, &to))
}

fn definer_of(l: &Literal) -> Option<&Name> {
    match l {
        Literal::Neg(d) if is_definer(d) => Some(d),
        Literal::Exists(_, d) | Literal::Forall(_, d) => Some(d),
        _ => None,
    }
}

fn rename(c: &Clause, from: &Name, to: &Name) -> Clause {
    Clause::new(c.literals().map(|l| match l {
        Literal::Neg(d) if d == from => Literal::Neg(to.clone()),
        _ => l.clone(),
    }))
}

struct TopClause {
    lhs: Vec<Concept>,
    rhs: Vec<Concept>,
}

/// Eliminates all definers from a clause set in which each clause has at
/// most one negative definer. The clauses with `not D` are gathered into
/// `D [= C`; `D` is replaced by `C`, or by `nu X. C[X]` when `C` mentions
/// `D`. The result is in fixpoint form; see [`apply_policy`].
pub fn definer_elimination(clauses: &[Clause], ctx: &DefinerContext, policy: Policy) -> Result<UIResult> {
    let mut top: Vec<TopClause> = Vec::new();
    let mut bodies: BTreeMap<usize, Vec<Concept>> = BTreeMap::new();
    let rank = |d: &Name| ctx.definers.iter().position(|x| x == d).unwrap_or(usize::MAX);
    let mut by_definer: BTreeMap<Name, Vec<&Clause>> = BTreeMap::new();
    for c in clauses {
        match c.negative_definer() {
            Some(d) => by_definer.entry(d.clone()).or_default().push(c),
            None => {
                let mut t = TopClause { lhs: Vec::new(), rhs: Vec::new() };
                for l in c.literals() {
                    match l {
                        Literal::Neg(a) => t.lhs.push(Concept::atom(a.clone())),
                        _ => t.rhs.push(l.to_concept()),
                    }
                }
                top.push(t);
            }
        }
    }
    // A combined definer K stands for the conjunction of the definers it
    // implies, so clauses copied from an implied definer d are replaced by
    // the conjunct d.
    let mut links: BTreeMap<Name, BTreeSet<Name>> = BTreeMap::new();
    for (k, cs) in &by_definer {
        if ctx.base_of.get(k).is_none_or(|b| b.len() < 2) {
            continue;
        }
        let mut own = Vec::new();
        for c in cs {
            // k [= d needs every clause of d to follow from one of k
            let from = by_definer.iter().find(|(d, ds)| {
                *d != k
                    && ctx.implies(k, d)
                    && ds.iter().any(|x| rename(x, d, k).subsumes(c))
                    && ds.iter().all(|x| cs.iter().any(|y| y.subsumes(&rename(x, d, k))))
            });
            match from {
                Some((d, _)) => {
                    links.entry(k.clone()).or_default().insert(d.clone());
                }
                None => own.push(*c),
            }
        }
        bodies.insert(rank(k), Vec::new());
        for c in own {
            bodies.get_mut(&rank(k)).unwrap().push(c.without(&Literal::Neg(k.clone())).to_concept());
        }
    }
    for (d, cs) in &by_definer {
        bodies.entry(rank(d)).or_insert_with(|| cs.iter().map(|c| c.without(&Literal::Neg(d.clone())).to_concept()).collect());
    }
    // keep only definers reachable from the top-level clauses
    let mut reachable: BTreeSet<Name> = BTreeSet::new();
    let mut stack: Vec<Name> = clauses
        .iter()
        .filter(|c| c.negative_definer().is_none())
        .flat_map(|c| c.literals().filter_map(|l| l.filler().cloned()).collect::<Vec<_>>())
        .collect();
    while let Some(d) = stack.pop() {
        if !reachable.insert(d.clone()) {
            continue;
        }
        for c in by_definer.get(&d).into_iter().flatten() {
            stack.extend(c.literals().filter_map(|l| l.filler().cloned()));
        }
        stack.extend(links.get(&d).into_iter().flatten().cloned());
    }
    bodies.retain(|&k, _| k < ctx.definers.len() && reachable.contains(&ctx.definers[k]));
    for d in &reachable {
        let b = bodies.entry(rank(d)).or_default();
        for l in links.get(d).into_iter().flatten() {
            b.push(Concept::atom(l.clone()));
        }
    }
    let mut vars = 0;
    loop {
        // prefer a definer whose definition does not mention itself
        let pick = bodies
            .iter()
            .find(|(k, b)| !b.iter().any(|c| mentions_name(c, &ctx.definers[**k])))
            .map(|(k, _)| *k)
            .or_else(|| bodies.keys().next().copied());
        let Some(pick) = pick else { break };
        let d = ctx.definers[pick].clone();
        let conj = Concept::and(bodies.remove(&pick).unwrap());
        if occurs_negatively(&conj, &d) {
            return Err(Error::NegativeVariable(format!("definer {} occurs negatively in its own definition", d)));
        }
        let solution = if mentions_name(&conj, &d) {
            let x = var_name(vars);
            vars += 1;
            Concept::nu(&x, substitute_name(&conj, &d, &Concept::var(&x)))
        } else {
            conj
        };
        let solution = simplify(&solution);
        for b in bodies.values_mut() {
            for c in b.iter_mut() {
                *c = substitute_name(c, &d, &solution);
            }
        }
        for t in &mut top {
            for c in t.rhs.iter_mut() {
                *c = substitute_name(c, &d, &solution);
            }
        }
    }
    let mut o = Ontology::new();
    for t in top {
        if let Some(ax) = to_inclusion(t) {
            o.add(ax);
        }
    }
    let used_fixpoints = o.has_fixpoint();
    let r = UIResult { ontology: o, used_fixpoints, auxiliary_names: BTreeSet::new(), policy: Policy::Fixpoint };
    apply_policy(r, policy, &Signature::new())
}

/// Builds `lhs [= rhs` from a clause. Existential disjuncts move to the left
/// as universal restrictions when something else remains on the right, so
/// `not A or E or some r.(B and not D)` reads `A and all r.(not B or D) [= E`.
fn to_inclusion(t: TopClause) -> Option<Inclusion> {
    let rhs: Vec<Concept> = t.rhs.iter().map(simplify).collect();
    let mut lhs = t.lhs;
    let (ex, other): (Vec<Concept>, Vec<Concept>) = rhs.into_iter().partition(|c| matches!(&**c, Node::Exists(..)) && !c.has_fixpoint());
    let rhs = if !other.is_empty() && !lhs.is_empty() {
        lhs.extend(ex.iter().map(|c| simplify(&negate(c))));
        other
    } else {
        ex.into_iter().chain(other).collect()
    };
    let lhs = simplify(&Concept::and(lhs));
    let rhs = simplify(&Concept::or(rhs));
    if rhs.is_top() || lhs.is_bottom() {
        return None;
    }
    Some(Inclusion::new(lhs, rhs))
}

/// Replaces each `nu X. C` by a fresh name `N` with the axiom `N [= C[N]`.
/// Names end in `_def` and avoid `avoid`.
pub fn fixpoints_to_aux(o: &Ontology, avoid: &Signature) -> (Ontology, BTreeSet<String>) {
    let mut names = BTreeSet::new();
    let mut extra = Vec::new();
    let mut counter = 0;
    let mut main = Vec::new();
    for ax in o.iter() {
        let lhs = aux_walk(&ax.lhs, avoid, &mut counter, &mut names, &mut extra);
        let rhs = aux_walk(&ax.rhs, avoid, &mut counter, &mut names, &mut extra);
        main.push(Inclusion::new(lhs, rhs));
    }
    main.extend(extra);
    (Ontology::from_axioms(main), names)
}

fn aux_walk(c: &Concept, avoid: &Signature, counter: &mut usize, names: &mut BTreeSet<String>, extra: &mut Vec<Inclusion>) -> Concept {
    match &**c {
        Node::Nu(x, body) => {
            let n = loop {
                *counter += 1;
                let n = format!("D{}_def", counter);
                if !avoid.contains(&n) {
                    break n;
                }
            };
            names.insert(n.clone());
            let named = Concept::name(&n);
            let body = crate::syntax::ops::substitute_var(body, x, &named);
            let body = aux_walk(&body, avoid, counter, names, extra);
            extra.push(Inclusion::new(named.clone(), body));
            named
        }
        _ => {
            let kids: Vec<Concept> = c.children().into_iter().map(|k| aux_walk(k, avoid, counter, names, extra)).collect();
            if kids.is_empty() {
                c.clone()
            } else {
                c.with_children(kids)
            }
        }
    }
}

/// Turns a fixpoint-form result into the requested presentation.
pub fn apply_policy(r: UIResult, policy: Policy, avoid: &Signature) -> Result<UIResult> {
    let used_fixpoints = r.ontology.has_fixpoint();
    Ok(match policy {
        Policy::Fixpoint => UIResult { policy, used_fixpoints, ..r },
        Policy::Auxiliary => {
            let (o, names) = fixpoints_to_aux(&r.ontology, avoid);
            UIResult { ontology: o, used_fixpoints, auxiliary_names: names, policy }
        }
        Policy::Approximate(k) => {
            let o = r.ontology.map(|c| simplify(&crate::syntax::ops::unroll(c, k)));
            let o = Ontology::from_axioms(o.iter().filter(|a| !a.rhs.is_top()).cloned());
            UIResult { ontology: o, used_fixpoints, auxiliary_names: BTreeSet::new(), policy }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{name, parse_ontology};

    fn ctx_with(n: usize) -> DefinerContext {
        let mut ctx = DefinerContext::new();
        for i in 0..n {
            ctx.fresh(format!("d{}", i));
        }
        ctx
    }

    #[test]
    fn ackermann_substitution() {
        let ctx = ctx_with(1);
        let d = name("_D1");
        let cs = vec![
            Clause::new([Literal::Neg(name("A")), Literal::Exists(name("r"), d.clone())]),
            Clause::new([Literal::Neg(d), Literal::Pos(name("B"))]),
        ];
        let r = definer_elimination(&cs, &ctx, Policy::Fixpoint).unwrap();
        assert_eq!(r.ontology.to_string(), "A [= some r.B.\n");
        assert!(!r.used_fixpoints);
    }

    #[test]
    fn cyclic_definer_becomes_fixpoint() {
        let ctx = ctx_with(1);
        let d = name("_D1");
        let cs = vec![
            Clause::new([Literal::Neg(name("A")), Literal::Exists(name("r"), d.clone())]),
            Clause::new([Literal::Neg(d.clone()), Literal::Exists(name("r"), d)]),
        ];
        let r = definer_elimination(&cs, &ctx, Policy::Fixpoint).unwrap();
        assert_eq!(r.ontology.to_string(), "A [= nu X. some r.X.\n");
        let aux = definer_elimination(&cs, &ctx, Policy::Auxiliary).unwrap();
        assert_eq!(aux.ontology.to_string(), "A [= D1_def.\nD1_def [= some r.D1_def.\n");
        let approx = definer_elimination(&cs, &ctx, Policy::Approximate(2)).unwrap();
        assert_eq!(approx.ontology.to_string(), "A [= some r.some r.top.\n");
    }

    #[test]
    fn no_definers_unchanged() {
        let cs = vec![Clause::new([Literal::Neg(name("A")), Literal::Pos(name("B"))])];
        let r = definer_elimination(&cs, &DefinerContext::new(), Policy::Fixpoint).unwrap();
        assert_eq!(r.ontology, parse_ontology("A [= B.").unwrap());
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("approx:3".parse::<Policy>().unwrap(), Policy::Approximate(3));
        assert_eq!("aux".parse::<Policy>().unwrap(), Policy::Auxiliary);
        assert!("approx:x".parse::<Policy>().is_err());
    }

    #[test]
    fn var_names_are_variables() {
        for k in 0..40 {
            assert!(crate::syntax::parser::is_var_name(&var_name(k)), "{}", var_name(k));
        }
    }
}
