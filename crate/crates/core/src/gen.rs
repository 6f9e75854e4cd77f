//! Seeded random concepts, ontologies and interpretations for tests and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lp::{LPProgram, LPRule};
use crate::semantics::Interpretation;
use crate::syntax::{Concept, Inclusion, Node, Ontology};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct Vocab {
    pub concepts: Vec<String>,
    pub roles: Vec<String>,
    pub individuals: Vec<String>,
}

impl Vocab {
    pub fn new(concepts: &[&str], roles: &[&str], individuals: &[&str]) -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        Vocab { concepts: v(concepts), roles: v(roles), individuals: v(individuals) }
    }
}

fn leaf<R: Rng>(rng: &mut R, v: &Vocab) -> Concept {
    let k = rng.gen_range(0..20);
    if k == 0 {
        return Concept::top();
    }
    if k == 1 {
        return Concept::bottom();
    }
    if !v.individuals.is_empty() && k < 5 {
        return Concept::nominal(v.individuals.choose(rng).unwrap());
    }
    let a = Concept::name(v.concepts.choose(rng).unwrap());
    if rng.gen_bool(0.35) {
        Concept::not(a)
    } else {
        a
    }
}

/// A random closed, fixpoint-free concept of role depth at most `depth`.
pub fn concept<R: Rng>(rng: &mut R, v: &Vocab, depth: usize) -> Concept {
    nested(rng, v, depth, 2)
}

fn nested<R: Rng>(rng: &mut R, v: &Vocab, depth: usize, nesting: usize) -> Concept {
    let choice = rng.gen_range(0..10);
    match choice {
        0..=2 => leaf(rng, v),
        3 if nesting > 0 => Concept::not(nested(rng, v, depth, nesting - 1)),
        4 | 5 if nesting > 0 => {
            let n = rng.gen_range(2..=3);
            let parts = (0..n).map(|_| nested(rng, v, depth, nesting - 1)).collect();
            if choice == 4 {
                Concept::new(Node::And(parts))
            } else {
                Concept::new(Node::Or(parts))
            }
        }
        _ if depth == 0 || v.roles.is_empty() => leaf(rng, v),
        3..=7 => Concept::exists(v.roles.choose(rng).unwrap(), nested(rng, v, depth - 1, nesting)),
        _ => Concept::forall(v.roles.choose(rng).unwrap(), nested(rng, v, depth - 1, nesting)),
    }
}

pub fn ontology<R: Rng>(rng: &mut R, v: &Vocab, max_axioms: usize, depth: usize) -> Ontology {
    let n = rng.gen_range(1..=max_axioms.max(1));
    let mut o = Ontology::new();
    for _ in 0..n {
        o.add(Inclusion::new(concept(rng, v, depth), concept(rng, v, depth)));
    }
    o
}

pub fn interpretation<R: Rng>(rng: &mut R, v: &Vocab, size: usize) -> Interpretation {
    let mut i = Interpretation::new(size);
    for a in &v.concepts {
        i.concepts.entry(a.clone()).or_default();
        for d in 0..size {
            if rng.gen_bool(0.4) {
                i.add_concept(a, d);
            }
        }
    }
    for r in &v.roles {
        i.roles.entry(r.clone()).or_default();
        for d in 0..size {
            for e in 0..size {
                if rng.gen_bool(0.25) {
                    i.add_role(r, d, e);
                }
            }
        }
    }
    for a in &v.individuals {
        i.set_individual(a, rng.gen_range(0..size));
    }
    i
}

/// A random propositional program over `atoms`: up to `max_rules` rules, each
/// with at most two head atoms and at most three body literals.
pub fn program<R: Rng>(rng: &mut R, atoms: &[&str], max_rules: usize) -> LPProgram {
    let n = rng.gen_range(1..=max_rules.max(1));
    let mut p = LPProgram::default().with_atoms(atoms);
    for _ in 0..n {
        let mut r = LPRule::default();
        for _ in 0..rng.gen_range(0..=2) {
            r.head.insert(atoms.choose(rng).unwrap().to_string());
        }
        for _ in 0..rng.gen_range(0..=3) {
            let a = atoms.choose(rng).unwrap().to_string();
            match rng.gen_range(0..5) {
                0..=1 => r.pbody.insert(a),
                2..=3 => r.nbody.insert(a),
                _ => r.nnbody.insert(a),
            };
        }
        p.push(r);
    }
    p
}
