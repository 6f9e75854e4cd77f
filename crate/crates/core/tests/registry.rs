//! Every stored expected artifact checks out under the reasoner.

use interpol::bench::registry;
use interpol::craig::verify_interpolant;
use interpol::reasoner::{entails_ontology, equivalent_concepts};
use interpol::semantics::bounded_countermodel;
use interpol::syntax::ops::unroll_ontology;
use interpol::syntax::{parse_concept, parse_ontology, Ontology};

#[test]
fn expected_uniform_interpolants_follow_from_their_ontologies() {
    for name in ["uni", "lethe", "cyclic"] {
        let ex = registry::lookup(name).unwrap();
        let want = parse_ontology(ex.expected.unwrap()).unwrap();
        // fixpoints are checked through a three-fold unfolding
        let want = unroll_ontology(&want, 3);
        assert!(entails_ontology(&ex.ontology(), &want).unwrap(), "{}", name);
    }
}

#[test]
fn expected_interpolant_and_definition_verify() {
    let ex = registry::lookup("doctor").unwrap();
    let (c1, c2) = ex.concept_pair().unwrap();
    let i = parse_concept(ex.expected.unwrap()).unwrap();
    assert!(verify_interpolant(&Ontology::new(), &c1, &c2, ex.signature.as_ref().unwrap(), &i).unwrap().all());

    let ex = registry::lookup("family").unwrap();
    let o = ex.ontology();
    let target = parse_concept(ex.target.unwrap()).unwrap();
    let def = parse_concept(ex.expected.unwrap()).unwrap();
    assert!(equivalent_concepts(&o, &target, &def).unwrap());
}

#[test]
fn nominal_example_inclusion_holds() {
    let ex = registry::lookup("alco-nominal").unwrap();
    let (c1, c2) = ex.concept_pair().unwrap();
    // the reasoner is ALC only; search small models instead
    assert!(bounded_countermodel(&Ontology::new(), &c1, &c2, 5).unwrap().is_none());
}
