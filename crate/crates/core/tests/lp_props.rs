use std::collections::BTreeSet;

use interpol::gen;
use interpol::lp::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

fn subsets(u: &Atoms) -> Vec<Atoms> {
    let v: Vec<&String> = u.iter().collect();
    (0..1u32 << v.len()).map(|m| (0..v.len()).filter(|i| m >> i & 1 == 1).map(|i| v[i].clone()).collect()).collect()
}

fn classical(p: &LPProgram, m: &Atoms) -> bool {
    p.rules.iter().all(|r| {
        let body = r.pbody.is_subset(m) && r.nbody.is_disjoint(m) && r.nnbody.is_subset(m);
        !body || !r.head.is_disjoint(m)
    })
}

/// Answer sets straight from the definition, through the public reduct:
/// Y is a model of P and a minimal model of P^Y.
fn answer_sets_by_reduct(p: &LPProgram) -> BTreeSet<Atoms> {
    subsets(&p.atoms)
        .into_iter()
        .filter(|y| {
            let red = reduct(p, y);
            classical(p, y) && classical(&red, y) && subsets(y).iter().all(|x| x == y || !classical(&red, x))
        })
        .collect()
}

fn example() -> LPProgram {
    parse_program("a :- not b. b :- not c. e :- d. d :- a.").unwrap()
}

#[test]
fn example_program_golden() {
    let p = example();
    assert_eq!(reduct(&p, &atoms(&["b", "d", "e"])).to_string(), "b.\ne :- d.\nd :- a.\n");
    let ht = ht_models(&p).unwrap();
    assert!(ht.contains(&HTPair { x: atoms(&["b"]), y: atoms(&["b", "d", "e"]) }));
    assert!(!ht.contains(&HTPair { x: atoms(&["b", "d"]), y: atoms(&["b", "d", "e"]) }));
    assert_eq!(answer_sets(&p).unwrap(), BTreeSet::from([atoms(&["b"])]));
    assert!(entails_lp(&p, &parse_program("b.").unwrap(), Relation::Cautious).unwrap());
}

#[test]
fn adding_c_changes_the_answer_set() {
    let p = example().union(&parse_program("c.").unwrap());
    // c is a fact, so it belongs to the answer set
    assert_eq!(answer_sets(&p).unwrap(), BTreeSet::from([atoms(&["a", "c", "d", "e"])]));
}

/// 200 random programs over at most four atoms: HT persistence, answer sets
/// against the reduct route, and forget_ht against an independent projection.
#[test]
fn random_program_suite() {
    let mut rng = gen::rng(5);
    let mut cp_failures = 0;
    for k in 0..200 {
        let n = rng.gen_range(1..=4);
        let p = gen::program(&mut rng, &ATOMS[..n], 5);
        let ht = ht_models(&p).unwrap();
        for q in &ht {
            assert!(ht.contains(&HTPair { x: q.y.clone(), y: q.y.clone() }), "case {}: persistence at {}", k, q);
        }
        let answers = answer_sets(&p).unwrap();
        for y in &answers {
            assert!(ht.contains(&HTPair { x: y.clone(), y: y.clone() }));
            assert!(classical(&p, y));
        }
        assert_eq!(answers, answer_sets_by_reduct(&p), "case {}:\n{}", k, p);

        let size = rng.gen_range(0..=n.min(2));
        let v: Atoms = ATOMS[..n].choose_multiple(&mut rng, size).map(|s| s.to_string()).collect();
        let f = forget_ht(&p, &v).unwrap_or_else(|e| panic!("case {}: {}", k, e));
        let rest: Atoms = p.atoms.difference(&v).cloned().collect();
        assert!(f.signature().is_subset(&rest));
        let want: BTreeSet<HTPair> =
            ht.iter().map(|q| HTPair { x: &q.x - &v, y: &q.y - &v }).collect();
        assert_eq!(ht_models_over(&f, &rest).unwrap(), want, "case {}", k);
        assert!(is_uniform_interpolant(&p, &rest, &f, Relation::Ht).unwrap());

        let rep = check_forgetting_properties(&p, &v, &f).unwrap();
        assert!(rep.w && rep.pp, "case {}: {:?}", k, rep);
        if !rep.cp {
            cp_failures += 1;
        }
    }
    // HT projection keeps HT-consequences, not answer sets
    assert!(cp_failures > 0);
}

#[test]
fn projection_forgetting_can_break_answer_sets() {
    let p = parse_program("a :- not b. b :- not a.").unwrap();
    let v = atoms(&["b"]);
    let f = forget_ht(&p, &v).unwrap();
    assert!(f.is_empty());
    let rep = check_forgetting_properties(&p, &v, &f).unwrap();
    assert!(rep.w && rep.pp && !rep.cp);
}

#[test]
fn reduct_is_identity_on_positive_programs() {
    let mut rng = gen::rng(9);
    let mut seen = 0;
    for _ in 0..200 {
        let p = gen::program(&mut rng, &ATOMS, 4);
        if !p.rules.iter().all(LPRule::is_positive) {
            continue;
        }
        seen += 1;
        for i in subsets(&p.atoms) {
            assert_eq!(reduct(&p, &i), p);
        }
    }
    assert!(seen > 0);
}

#[test]
fn entailment_is_reflexive_and_ht_equivalence_keeps_answer_sets() {
    let mut rng = gen::rng(21);
    for _ in 0..100 {
        let p = gen::program(&mut rng, &ATOMS[..3], 4);
        let q = gen::program(&mut rng, &ATOMS[..3], 4);
        assert!(entails_lp(&p, &p, Relation::Ht).unwrap());
        assert!(entails_lp(&p, &p, Relation::Cautious).unwrap());
        // HT-equivalent programs have the same answer sets
        if entails_lp(&p, &q, Relation::Ht).unwrap() && entails_lp(&q, &p, Relation::Ht).unwrap() {
            assert_eq!(answer_sets(&p).unwrap(), answer_sets(&q).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let p = gen::program(&mut rng, &ATOMS, 6);
        let q = parse_program(&p.to_string()).unwrap().with_atoms(&p.atoms);
        prop_assert_eq!(q, p);
    }

    #[test]
    fn ht_models_are_persistent(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let p = gen::program(&mut rng, &ATOMS, 5);
        let ht = ht_models(&p).unwrap();
        for q in &ht {
            prop_assert!(q.x.is_subset(&q.y));
            let total = HTPair { x: q.y.clone(), y: q.y.clone() };
            prop_assert!(ht.contains(&total));
        }
    }
}
