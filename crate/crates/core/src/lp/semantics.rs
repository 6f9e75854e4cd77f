use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Atoms, LPProgram, LPRule};
use crate::error::{Error, Result};

/// Enumeration is over all X ⊆ Y ⊆ U, i.e. 3^|U| pairs.
pub const MAX_UNIVERSE: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HTPair {
    pub x: Atoms,
    pub y: Atoms,
}

impl fmt::Display for HTPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Atoms| s.iter().cloned().collect::<Vec<_>>().join(",");
        write!(f, "<{{{}}},{{{}}}>", show(&self.x), show(&self.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// HT(P1) ⊆ HT(P2)
    Ht,
    /// AS(P1) ⊆ AS(P2)
    Cautious,
}

impl FromStr for Relation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Relation> {
        match s {
            "ht" | "HT" => Ok(Relation::Ht),
            "cautious" | "c" => Ok(Relation::Cautious),
            _ => Err(Error::Precondition(format!("unknown relation \"{}\" (expected ht or cautious)", s))),
        }
    }
}

/// Atoms numbered in sorted order, sets as bitmasks.
#[derive(Debug, Clone)]
pub(crate) struct Universe {
    pub names: Vec<String>,
}

impl Universe {
    pub fn new(atoms: &Atoms) -> Result<Universe> {
        if atoms.len() > MAX_UNIVERSE {
            return Err(Error::ResourceLimit(format!(
                "{} atoms; HT enumeration is limited to {}",
                atoms.len(),
                MAX_UNIVERSE
            )));
        }
        Ok(Universe { names: atoms.iter().cloned().collect() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.names.len()) - 1) as u32
    }

    pub fn mask<'a>(&self, atoms: impl IntoIterator<Item = &'a String>) -> u32 {
        atoms.into_iter().map(|a| 1u32 << self.names.binary_search(a).expect("atom outside universe")).fold(0, |m, b| m | b)
    }

    pub fn set(&self, m: u32) -> Atoms {
        (0..self.names.len()).filter(|i| m >> i & 1 == 1).map(|i| self.names[i].clone()).collect()
    }

    pub fn pair(&self, (x, y): (u32, u32)) -> HTPair {
        HTPair { x: self.set(x), y: self.set(y) }
    }

    pub fn rule(&self, r: &LPRule) -> Rule {
        Rule { head: self.mask(&r.head), pos: self.mask(&r.pbody), neg: self.mask(&r.nbody), nneg: self.mask(&r.nnbody) }
    }

    pub fn to_rule(&self, r: &Rule) -> LPRule {
        LPRule { head: self.set(r.head), pbody: self.set(r.pos), nbody: self.set(r.neg), nnbody: self.set(r.nneg) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Rule {
    pub head: u32,
    pub pos: u32,
    pub neg: u32,
    pub nneg: u32,
}

impl Rule {
    /// `m` satisfies the rule read classically.
    pub fn classical(&self, m: u32) -> bool {
        let body = self.pos & !m == 0 && self.neg & m == 0 && self.nneg & !m == 0;
        !body || self.head & m != 0
    }

    /// The rule survives in the reduct relative to `y`.
    pub fn in_reduct(&self, y: u32) -> bool {
        self.neg & y == 0 && self.nneg & !y == 0
    }

    /// `x` satisfies the positive part `head <- pos`.
    pub fn positive(&self, x: u32) -> bool {
        self.pos & !x == 0 && self.head & x == 0
    }

    pub fn ht(&self, x: u32, y: u32) -> bool {
        self.classical(y) && !(self.in_reduct(y) && self.positive(x))
    }
}

pub(crate) fn compile(u: &Universe, p: &LPProgram) -> Vec<Rule> {
    p.rules.iter().map(|r| u.rule(r)).collect()
}

fn all_classical(rules: &[Rule], m: u32) -> bool {
    rules.iter().all(|r| r.classical(m))
}

/// Every HT-model over `u` as (X, Y) masks, Y ascending, X ascending.
pub(crate) fn ht_masks(u: &Universe, rules: &[Rule]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for y in 0..=u.full() {
        if !all_classical(rules, y) {
            continue;
        }
        let reduct: Vec<&Rule> = rules.iter().filter(|r| r.in_reduct(y)).collect();
        let mut xs = Vec::new();
        // submasks of y
        let mut x = y;
        loop {
            if reduct.iter().all(|r| !r.positive(x)) {
                xs.push(x);
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & y;
        }
        xs.sort_unstable();
        out.extend(xs.into_iter().map(|x| (x, y)));
    }
    out
}

/// Y is an answer set iff it is a classical model and no proper subset
/// satisfies the reduct.
pub(crate) fn answer_masks(u: &Universe, rules: &[Rule]) -> Vec<u32> {
    let mut out = Vec::new();
    for y in 0..=u.full() {
        if !all_classical(rules, y) {
            continue;
        }
        let reduct: Vec<&Rule> = rules.iter().filter(|r| r.in_reduct(y)).collect();
        let mut x = y;
        let mut minimal = true;
        while x != 0 {
            x = (x - 1) & y;
            if reduct.iter().all(|r| !r.positive(x)) {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(y);
        }
    }
    out
}

/// P^I: `head <- pbody` for every rule with nbody ∩ I = ∅ and nnbody ⊆ I.
pub fn reduct(p: &LPProgram, i: &Atoms) -> LPProgram {
    let rules = p
        .rules
        .iter()
        .filter(|r| r.nbody.is_disjoint(i) && r.nnbody.is_subset(i))
        .map(|r| LPRule { head: r.head.clone(), pbody: r.pbody.clone(), ..LPRule::default() })
        .collect();
    LPProgram { rules, atoms: p.atoms.clone() }
}

/// HT-models over the program's own universe.
pub fn ht_models(p: &LPProgram) -> Result<BTreeSet<HTPair>> {
    ht_models_over(p, &p.atoms)
}

/// HT-models over `universe`, which must contain the program's atoms.
pub fn ht_models_over(p: &LPProgram, universe: &Atoms) -> Result<BTreeSet<HTPair>> {
    let missing: Vec<&String> = p.atoms.difference(universe).collect();
    if !missing.is_empty() {
        return Err(Error::Precondition(format!("universe lacks atoms {:?}", missing)));
    }
    let u = Universe::new(universe)?;
    Ok(ht_masks(&u, &compile(&u, p)).into_iter().map(|m| u.pair(m)).collect())
}

pub fn answer_sets(p: &LPProgram) -> Result<BTreeSet<Atoms>> {
    let u = Universe::new(&p.atoms)?;
    Ok(answer_masks(&u, &compile(&u, p)).into_iter().map(|m| u.set(m)).collect())
}

/// `P1 |= P2` over the union of both universes.
pub fn entails_lp(p1: &LPProgram, p2: &LPProgram, relation: Relation) -> Result<bool> {
    match relation {
        Relation::Ht => {
            let all: Atoms = p1.atoms.union(&p2.atoms).cloned().collect();
            let u = Universe::new(&all)?;
            let r2 = compile(&u, p2);
            Ok(ht_masks(&u, &compile(&u, p1)).into_iter().all(|(x, y)| r2.iter().all(|r| r.ht(x, y))))
        }
        Relation::Cautious => Ok(answer_sets(p1)?.is_subset(&answer_sets(p2)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{atoms, parse_program};

    const P: &str = "a :- not b. b :- not c. e :- d. d :- a.";

    fn pair(x: &[&str], y: &[&str]) -> HTPair {
        HTPair { x: atoms(x), y: atoms(y) }
    }

    #[test]
    fn example_reduct() {
        let p = parse_program(P).unwrap();
        let r = reduct(&p, &atoms(&["b", "d", "e"]));
        assert_eq!(r.to_string(), "b.\ne :- d.\nd :- a.\n");
    }

    #[test]
    fn reduct_edge_cases() {
        let pos = parse_program("a :- b. c | d.").unwrap();
        assert_eq!(reduct(&pos, &atoms(&["a"])), pos);
        let p = parse_program("a :- not not b. c :- not d, e.").unwrap();
        assert_eq!(reduct(&p, &Atoms::new()).to_string(), "c :- e.\n");
    }

    #[test]
    fn example_ht_models() {
        let p = parse_program(P).unwrap();
        let ht = ht_models(&p).unwrap();
        assert!(ht.contains(&pair(&["b"], &["b", "d", "e"])));
        // e :- d is in the reduct and X = {b,d} lacks e
        assert!(!ht.contains(&pair(&["b", "d"], &["b", "d", "e"])));
        assert!(!ht.contains(&pair(&["b", "d"], &["b", "d"])));
    }

    #[test]
    fn empty_program_has_every_pair() {
        let p = LPProgram::default().with_atoms(["a", "b"]);
        assert_eq!(ht_models(&p).unwrap().len(), 9);
    }

    #[test]
    fn example_answer_sets() {
        let p = parse_program(P).unwrap();
        assert_eq!(answer_sets(&p).unwrap(), BTreeSet::from([atoms(&["b"])]));
        let with_c = p.union(&parse_program("c.").unwrap());
        assert_eq!(answer_sets(&with_c).unwrap(), BTreeSet::from([atoms(&["a", "c", "d", "e"])]));
        assert!(answer_sets(&parse_program("a :- not a.").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn entailment() {
        let p = parse_program(P).unwrap();
        assert!(entails_lp(&p, &parse_program("b.").unwrap(), Relation::Cautious).unwrap());
        assert!(!entails_lp(&p, &parse_program("b.").unwrap(), Relation::Ht).unwrap());
        assert!(entails_lp(&p, &p, Relation::Ht).unwrap());
        let fact = parse_program("a.").unwrap();
        assert!(entails_lp(&fact, &parse_program("a :- not b.").unwrap(), Relation::Ht).unwrap());
        assert!(!entails_lp(&parse_program("a :- not b.").unwrap(), &fact, Relation::Ht).unwrap());
    }

    #[test]
    fn double_negation_is_not_positive() {
        // a :- not not c and a :- c differ at <{}, {a,c}>
        let nn = ht_models(&parse_program("a :- not not c.").unwrap()).unwrap();
        let pos = ht_models(&parse_program("a :- c.").unwrap()).unwrap();
        assert!(pos.contains(&pair(&[], &["a", "c"])));
        assert!(!nn.contains(&pair(&[], &["a", "c"])));
    }

    #[test]
    fn universe_cap() {
        let names: Vec<String> = (0..=MAX_UNIVERSE).map(|i| format!("a{}", i)).collect();
        let p = LPProgram::default().with_atoms(&names);
        assert!(matches!(ht_models(&p), Err(Error::ResourceLimit(_))));
    }
}
