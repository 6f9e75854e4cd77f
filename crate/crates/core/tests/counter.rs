use interpol::bench::{counter_goal_family, counter_ontology, sample_goal};
use interpol::gen;
use interpol::reasoner::Reasoner;
use interpol::semantics::bounded_countermodel;
use interpol::syntax::Concept;

/// From A1/A2 every level adds one to the counter, so the root of a C_d tree
/// holds d mod 2^n and B (all bits set) is reached at depth 2^n - 1.
#[test]
fn b_is_reached_at_depth_two_to_the_n_minus_one() {
    let b = Concept::name("B");
    let (o1, _) = counter_ontology(1).unwrap();
    let mut r = Reasoner::new(&o1).unwrap();
    for g in counter_goal_family(1).unwrap() {
        assert!(r.subsumes(&g, &b).unwrap(), "{}", g);
    }
    let (o2, _) = counter_ontology(2).unwrap();
    let mut r = Reasoner::new(&o2).unwrap();
    for g in counter_goal_family(3).unwrap() {
        assert!(r.subsumes(&g, &b).unwrap(), "{}", g);
    }
}

#[test]
fn one_level_past_the_top_wraps_around() {
    let b = Concept::name("B");
    let (o1, _) = counter_ontology(1).unwrap();
    let mut r = Reasoner::new(&o1).unwrap();
    for g in counter_goal_family(2).unwrap() {
        assert!(!r.subsumes(&g, &b).unwrap(), "{}", g);
    }
    let g = &counter_goal_family(2).unwrap()[0];
    assert!(bounded_countermodel(&o1, g, &b, 8).unwrap().is_some());

    let (o2, _) = counter_ontology(2).unwrap();
    let mut r = Reasoner::new(&o2).unwrap();
    let mut rng = gen::rng(4);
    for _ in 0..10 {
        let g = sample_goal(4, &mut rng);
        assert!(!r.subsumes(&g, &b).unwrap(), "{}", g);
    }
    // A1 itself is counter value 0
    assert!(!r.subsumes(&Concept::name("A1"), &b).unwrap());
}
