use interpol::gen::{self, Vocab};
use interpol::reasoner::{entails_by_types, Reasoner};
use interpol::semantics::bounded_countermodel;
use interpol::syntax::{nnf, Concept, Inclusion};

fn vocab() -> Vocab {
    Vocab::new(&["A", "B", "C", "D"], &["r", "s"], &[])
}

#[test]
fn tableau_agrees_with_type_elimination() {
    let v = vocab();
    let mut rng = gen::rng(11);
    let mut compared = 0;
    for _ in 0..200 {
        let o = gen::ontology(&mut rng, &v, 3, 2);
        let ci = Inclusion::new(gen::concept(&mut rng, &v, 2), gen::concept(&mut rng, &v, 2));
        let a = Reasoner::new(&o).unwrap().entails(&ci).unwrap();
        // the type route enumerates all types and may hit its cap
        match entails_by_types(&o, &ci) {
            Ok(b) => {
                assert_eq!(a, b, "ontology {:?} query {}", o, ci);
                compared += 1;
            }
            Err(interpol::Error::ResourceLimit(_)) => {}
            Err(e) => panic!("{}", e),
        }
    }
    assert!(compared >= 150, "only {} instances compared", compared);
}

#[test]
fn tableau_agrees_with_countermodels() {
    let v = vocab();
    let mut rng = gen::rng(7);
    for _ in 0..200 {
        let o = gen::ontology(&mut rng, &v, 4, 2);
        let (c, d) = (gen::concept(&mut rng, &v, 2), gen::concept(&mut rng, &v, 2));
        let mut r = Reasoner::new(&o).unwrap();
        let ent = r.subsumes(&c, &d).unwrap();
        let cm = bounded_countermodel(&o, &c, &d, 4).unwrap();
        if cm.is_some() {
            assert!(!ent, "countermodel exists but entailment claimed: {:?} {} {}", o, c, d);
        }
        if ent {
            assert!(cm.is_none());
        }
    }
}

#[test]
fn entailment_invariant_under_nnf_and_axiom_order() {
    let v = vocab();
    let mut rng = gen::rng(5);
    for _ in 0..60 {
        let o = gen::ontology(&mut rng, &v, 4, 2);
        let (c, d) = (gen::concept(&mut rng, &v, 2), gen::concept(&mut rng, &v, 2));
        let base = Reasoner::new(&o).unwrap().subsumes(&c, &d).unwrap();
        let normal = Reasoner::new(&o).unwrap().subsumes(&nnf(&c), &nnf(&d)).unwrap();
        let reversed = interpol::syntax::Ontology::from_axioms(o.iter().rev().cloned());
        let rev = Reasoner::new(&reversed).unwrap().subsumes(&c, &d).unwrap();
        assert_eq!(base, normal);
        assert_eq!(base, rev);
    }
}

#[test]
fn trivial_entailments() {
    let v = vocab();
    let mut rng = gen::rng(3);
    for _ in 0..30 {
        let o = gen::ontology(&mut rng, &v, 3, 2);
        let c = gen::concept(&mut rng, &v, 2);
        let mut r = Reasoner::new(&o).unwrap();
        assert!(r.subsumes(&c, &Concept::top()).unwrap());
        assert!(r.subsumes(&c, &c).unwrap());
    }
}
