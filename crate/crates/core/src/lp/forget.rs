use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::semantics::{answer_masks, compile, ht_masks, HTPair, Relation, Rule, Universe};
use super::{answer_sets, Atoms, LPProgram};
use crate::error::{Error, Result};

/// Rule minimisation scans every target pair per dropped literal; above this
/// many remaining atoms the raw synthesis is returned.
const SIMPLIFY_ATOMS: usize = 9;

/// {⟨X \ V, Y \ V⟩ | ⟨X, Y⟩ ∈ HT(P)}, over the program's universe minus `v`.
pub fn project(p: &LPProgram, v: &Atoms) -> Result<BTreeSet<HTPair>> {
    let u = Universe::new(&p.atoms)?;
    let keep = u.full() & !u.mask(v.intersection(&p.atoms));
    let rest: Atoms = p.atoms.difference(v).cloned().collect();
    let w = Universe::new(&rest)?;
    let to_w = |m: u32| w.mask(&u.set(m & keep));
    Ok(ht_masks(&u, &compile(&u, p)).into_iter().map(|(x, y)| w.pair((to_w(x), to_w(y)))).collect())
}

fn projected_masks(p: &LPProgram, v: &Atoms) -> Result<(Universe, HashSet<(u32, u32)>)> {
    let rest: Atoms = p.atoms.difference(v).cloned().collect();
    let w = Universe::new(&rest)?;
    let target = project(p, v)?.iter().map(|q| (w.mask(&q.x), w.mask(&q.y))).collect();
    Ok((w, target))
}

fn all_pairs(u: &Universe) -> impl Iterator<Item = (u32, u32)> {
    let full = u.full();
    (0..=full).flat_map(move |y| {
        let mut xs = Vec::new();
        let mut x = y;
        loop {
            xs.push((x, y));
            if x == 0 {
                break;
            }
            x = (x - 1) & y;
        }
        xs.into_iter().rev()
    })
}

/// Countermodel rules for a persistent set of HT-interpretations `target`
/// (⟨X,Y⟩ in it implies ⟨Y,Y⟩ in it):
///  * each total ⟨Y,Y⟩ outside gets `:- Y, not (W \ Y).`, which removes
///    every pair with that Y;
///  * each ⟨X,Y⟩ outside with X ⊊ Y and ⟨Y,Y⟩ inside gets
///    `(Y \ X) :- X, not (W \ Y), not not (Y \ X).`, which removes that
///    pair alone.
fn synthesize(w: &Universe, target: &HashSet<(u32, u32)>) -> Vec<Rule> {
    let full = w.full();
    let mut rules = Vec::new();
    for (x, y) in all_pairs(w) {
        if target.contains(&(x, y)) {
            continue;
        }
        if x == y {
            rules.push(Rule { head: 0, pos: y, neg: full & !y, nneg: 0 });
        } else if target.contains(&(y, y)) {
            rules.push(Rule { head: y & !x, pos: x, neg: full & !y, nneg: y & !x });
        }
    }
    rules
}

/// Greedy shrinking that keeps HT(rules) = target: a rule may lose a literal
/// as long as every target pair still satisfies it (weakening a body or a
/// head only removes more pairs), then rules whose removed pairs are all
/// removed by others are dropped.
fn simplify(w: &Universe, target: &HashSet<(u32, u32)>, rules: Vec<Rule>) -> Vec<Rule> {
    let mut sorted: Vec<(u32, u32)> = target.iter().copied().collect();
    sorted.sort_unstable();
    let holds = |r: &Rule| sorted.iter().all(|&(x, y)| r.ht(x, y));
    let mut shrunk: Vec<Rule> = Vec::new();
    for mut r in rules {
        for field in 0..4 {
            for i in 0..w.len() {
                let bit = 1u32 << i;
                let mut t = r;
                let slot = match field {
                    0 => &mut t.neg,
                    1 => &mut t.nneg,
                    2 => &mut t.pos,
                    _ => &mut t.head,
                };
                if *slot & bit == 0 {
                    continue;
                }
                *slot &= !bit;
                if holds(&t) {
                    r = t;
                }
            }
        }
        // the double negation of a positive body atom is redundant
        r.nneg &= !r.pos;
        if !shrunk.contains(&r) {
            shrunk.push(r);
        }
    }
    let outside: Vec<(u32, u32)> = all_pairs(w).filter(|p| !target.contains(p)).collect();
    let kills: Vec<Vec<usize>> =
        shrunk.iter().map(|r| (0..outside.len()).filter(|&k| !r.ht(outside[k].0, outside[k].1)).collect()).collect();
    let mut count = vec![0usize; outside.len()];
    for ks in &kills {
        for &k in ks {
            count[k] += 1;
        }
    }
    // drop long rules first
    let size = |r: &Rule| (r.head | r.pos | r.neg | r.nneg).count_ones() + r.head.count_ones();
    let mut order: Vec<usize> = (0..shrunk.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(size(&shrunk[i])));
    let mut keep = vec![true; shrunk.len()];
    for i in order {
        if kills[i].iter().all(|&k| count[k] > 1) {
            keep[i] = false;
            for &k in &kills[i] {
                count[k] -= 1;
            }
        }
    }
    shrunk.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect()
}

/// Forgetting under the HT projection: a program over Σ(P) \ V whose
/// HT-models are exactly the projection of HT(P). The result is checked by
/// enumeration before it is returned.
pub fn forget_ht(p: &LPProgram, v: &Atoms) -> Result<LPProgram> {
    let (w, target) = projected_masks(p, v)?;
    let mut rules = synthesize(&w, &target);
    if w.len() <= SIMPLIFY_ATOMS {
        rules = simplify(&w, &target, rules);
    }
    let out = LPProgram { rules: rules.iter().map(|r| w.to_rule(r)).collect(), atoms: w.names.iter().cloned().collect() };
    let got: HashSet<(u32, u32)> = ht_masks(&w, &compile(&w, &out)).into_iter().collect();
    if got != target {
        return Err(Error::Verification(format!(
            "forgetting result has {} HT-models, the projection has {}",
            got.len(),
            target.len()
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForgettingReport {
    /// AS(candidate) = AS(P) with V removed from each set
    pub cp: bool,
    /// P |=_HT candidate
    pub w: bool,
    /// every bounded-family P' over Σ(P) \ V entailed by P is entailed by
    /// the candidate
    pub pp: bool,
    pub pp_family: usize,
    /// AS(candidate ∪ R) = AS(P ∪ R) with V removed, for all sets of facts R
    pub sp_facts: bool,
    pub sp_checked: usize,
}

/// The V-exclusion of a family of atom sets.
fn exclude(sets: &BTreeSet<Atoms>, v: &Atoms) -> BTreeSet<Atoms> {
    sets.iter().map(|s| s.difference(v).cloned().collect()).collect()
}

/// Single rules over `w` with at most one head atom and at most two body
/// literals. HT-entailment of a program is entailment of each of its rules,
/// so this covers every program built from such rules.
fn bounded_family(w: &Universe) -> Vec<Rule> {
    let n = w.len();
    let lits: Vec<(usize, u8)> = (0..n).flat_map(|i| (0..3u8).map(move |k| (i, k))).collect();
    let mut bodies: Vec<Vec<(usize, u8)>> = vec![vec![]];
    for (i, a) in lits.iter().enumerate() {
        bodies.push(vec![*a]);
        for b in &lits[i + 1..] {
            bodies.push(vec![*a, *b]);
        }
    }
    let heads = std::iter::once(0u32).chain((0..n).map(|i| 1u32 << i));
    let mut out = Vec::new();
    for h in heads {
        for body in &bodies {
            let mut r = Rule { head: h, pos: 0, neg: 0, nneg: 0 };
            for &(i, k) in body {
                let bit = 1u32 << i;
                match k {
                    0 => r.pos |= bit,
                    1 => r.neg |= bit,
                    _ => r.nneg |= bit,
                }
            }
            out.push(r);
        }
    }
    out
}

fn check_over(candidate: &LPProgram, rest: &Atoms) -> Result<()> {
    let extra: Vec<String> = candidate.signature().difference(rest).cloned().collect();
    if !extra.is_empty() {
        return Err(Error::Precondition(format!("candidate mentions atoms outside the kept language: {:?}", extra)));
    }
    Ok(())
}

pub fn check_forgetting_properties(p: &LPProgram, v: &Atoms, candidate: &LPProgram) -> Result<ForgettingReport> {
    let rest: Atoms = p.atoms.difference(v).cloned().collect();
    check_over(candidate, &rest)?;
    let cand = candidate.clone().with_atoms(&rest);
    let (w, target) = projected_masks(p, v)?;
    let cand_rules = compile(&w, &LPProgram { rules: cand.rules.clone(), atoms: w.names.iter().cloned().collect() });
    let cand_ht: Vec<(u32, u32)> = ht_masks(&w, &cand_rules);

    let cp = answer_sets(&cand)? == exclude(&answer_sets(p)?, v);
    // candidate only mentions kept atoms, so P |=_HT candidate iff every
    // projected model of P satisfies it
    let w_holds = target.iter().all(|&(x, y)| cand_rules.iter().all(|r| r.ht(x, y)));

    let family = bounded_family(&w);
    let pp = family.iter().all(|r| {
        let from_p = target.iter().all(|&(x, y)| r.ht(x, y));
        !from_p || cand_ht.iter().all(|&(x, y)| r.ht(x, y))
    });

    let u = Universe::new(&p.atoms)?;
    let p_rules = compile(&u, p);
    let vmask = u.mask(v.intersection(&p.atoms));
    let mut sp_facts = true;
    let mut sp_checked = 0;
    for facts in 0..=w.full() {
        sp_checked += 1;
        let fact_rules = |uu: &Universe| -> Vec<Rule> {
            (0..w.len())
                .filter(|i| facts >> i & 1 == 1)
                .map(|i| Rule { head: uu.mask([&w.names[i]]), pos: 0, neg: 0, nneg: 0 })
                .collect()
        };
        let mut left = cand_rules.clone();
        left.extend(fact_rules(&w));
        let mut right = p_rules.clone();
        right.extend(fact_rules(&u));
        let l: BTreeSet<Atoms> = answer_masks(&w, &left).into_iter().map(|m| w.set(m)).collect();
        let r: BTreeSet<Atoms> = answer_masks(&u, &right).into_iter().map(|m| u.set(m & !vmask)).collect();
        if l != r {
            sp_facts = false;
            break;
        }
    }
    Ok(ForgettingReport { cp, w: w_holds, pp, pp_family: family.len(), sp_facts, sp_checked })
}

/// Whether `candidate` is a uniform interpolant of `p` for the atoms `keep`.
///
/// For `Ht` the criterion is HT(candidate) = projection of HT(p) onto
/// `keep`: the projection is itself expressible, so it is the least
/// HT-model set over `keep` containing HT(p)'s projection, and condition 3
/// holds exactly for candidates that reach it. For `Cautious`, answer sets
/// are compared after removing the forgotten atoms (a program over `keep`
/// cannot reproduce atoms it does not mention): condition 1 reads
/// AS(p) restricted to `keep` ⊆ AS(candidate), and condition 3 is decided
/// by the equality of the two families.
pub fn is_uniform_interpolant(p: &LPProgram, keep: &Atoms, candidate: &LPProgram, relation: Relation) -> Result<bool> {
    if !candidate.signature().is_subset(keep) {
        return Ok(false);
    }
    let all: Atoms = p.atoms.union(keep).cloned().collect();
    let forgotten: Atoms = all.difference(keep).cloned().collect();
    let full = p.clone().with_atoms(keep);
    let cand = candidate.clone().with_atoms(keep);
    match relation {
        Relation::Ht => {
            let target = project(&full, &forgotten)?;
            let got = super::ht_models_over(&cand, keep)?;
            Ok(got == target)
        }
        Relation::Cautious => {
            let expected = exclude(&answer_sets(&full)?, &forgotten);
            let got = answer_sets(&cand)?;
            let condition1 = expected.is_subset(&got);
            Ok(condition1 && got == expected)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{atoms, entails_lp, ht_models, parse_program};

    const P: &str = "a :- not b. b :- not c. e :- d. d :- a.";

    fn ht_equivalent(p: &LPProgram, q: &str) -> bool {
        let q = parse_program(q).unwrap().with_atoms(&p.atoms);
        let p = p.clone().with_atoms(&q.atoms);
        ht_models(&p).unwrap() == ht_models(&q).unwrap()
    }

    #[test]
    fn forgetting_d() {
        let p = parse_program(P).unwrap();
        let f = forget_ht(&p, &atoms(&["d"])).unwrap();
        assert_eq!(f.atoms, atoms(&["a", "b", "c", "e"]));
        assert!(ht_equivalent(&f, "a :- not b. b :- not c. e :- a."), "{}", f);
    }

    #[test]
    fn forgetting_b() {
        let p = parse_program(P).unwrap();
        let v = atoms(&["b"]);
        let f = forget_ht(&p, &v).unwrap();
        assert!(ht_equivalent(&f, "e :- d. d :- a."), "{}", f);
        // <{}, {b,c}> is an HT-model of P, so <{}, {c}> is in the projection
        // and the expected `a :- not not c` cannot hold in it
        assert!(project(&p, &v).unwrap().contains(&HTPair { x: atoms::<&str>(&[]), y: atoms(&["c"]) }));
        let expected = parse_program("a :- not not c. e :- d. d :- a.").unwrap();
        assert!(!ht_equivalent(&f, "a :- not not c. e :- d. d :- a."));
        let rep = check_forgetting_properties(&p, &v, &expected).unwrap();
        assert!(rep.cp && rep.sp_facts && !rep.w, "{:?}", rep);
        let rep = check_forgetting_properties(&p, &v, &f).unwrap();
        assert!(rep.cp && rep.w && rep.pp && !rep.sp_facts, "{:?}", rep);
    }

    #[test]
    fn forgetting_nothing() {
        let p = parse_program(P).unwrap();
        assert!(ht_equivalent(&forget_ht(&p, &Atoms::new()).unwrap(), P));
    }

    #[test]
    fn properties_of_the_d_result() {
        let p = parse_program(P).unwrap();
        let v = atoms(&["d"]);
        let f = forget_ht(&p, &v).unwrap();
        let rep = check_forgetting_properties(&p, &v, &f).unwrap();
        assert!(rep.w && rep.pp && rep.cp, "{:?}", rep);
        assert!(entails_lp(&p, &f, Relation::Ht).unwrap());
    }

    #[test]
    fn interpolant_distinction() {
        let p = parse_program("a :- not b. b :- not a.").unwrap();
        let keep = atoms(&["a"]);
        let nn = parse_program("a :- not not a.").unwrap();
        let empty = LPProgram::default();
        assert!(is_uniform_interpolant(&p, &keep, &nn, Relation::Cautious).unwrap());
        assert!(!is_uniform_interpolant(&p, &keep, &nn, Relation::Ht).unwrap());
        assert!(is_uniform_interpolant(&p, &keep, &empty, Relation::Ht).unwrap());
        assert!(!is_uniform_interpolant(&p, &keep, &empty, Relation::Cautious).unwrap());
    }

    #[test]
    fn synthesis_covers_every_persistent_set() {
        // all persistent subsets of the 3 pairs over one atom
        let w = Universe::new(&atoms(&["a"])).unwrap();
        let pairs = [(0, 0), (0, 1), (1, 1)];
        for bits in 0..8u32 {
            let t: HashSet<(u32, u32)> = (0..3).filter(|i| bits >> i & 1 == 1).map(|i| pairs[i]).collect();
            if t.contains(&(0, 1)) && !t.contains(&(1, 1)) {
                continue;
            }
            for rules in [synthesize(&w, &t), simplify(&w, &t, synthesize(&w, &t))] {
                let got: HashSet<(u32, u32)> = ht_masks(&w, &rules).into_iter().collect();
                assert_eq!(got, t);
            }
        }
    }

    #[test]
    fn bounded_family_size() {
        let w = Universe::new(&atoms(&["a", "b"])).unwrap();
        // 6 literals: 1 + 6 + 15 bodies, 3 heads
        assert_eq!(bounded_family(&w).len(), 66);
    }

    #[test]
    fn candidate_outside_the_language_is_rejected() {
        let p = parse_program(P).unwrap();
        let bad = parse_program("d.").unwrap();
        assert!(matches!(check_forgetting_properties(&p, &atoms(&["d"]), &bad), Err(Error::Precondition(_))));
    }
}
