use crate::error::{Error, Result};
use crate::syntax::{parse_concept, parse_ontology, Concept, Ontology, Signature};

pub const CAR: &str = "\
Car [= some hasPart.PrimeMover.
PrimeMover [= DieselEngine or GasEngine or ElectricMotor.
Car and some hasPart.ElectricMotor [= ElectricCar.
";

pub const UNI: &str = "\
Uni [= some hasEnrolled.Grad and some hasEnrolled.Undergrad.
Grad [= not Undergrad.
Uni [= not Grad.
Uni [= not Undergrad.
";

pub const UNI_FORGET_GRAD: &str = "\
Uni [= not Undergrad.
Uni [= some hasEnrolled.Undergrad and some hasEnrolled.(not Undergrad and not Uni).
";

pub const CYCLIC: &str = "\
A [= B.
B [= some r.B.
";

pub const EL_LOOP_FREE: &str = "\
A [= some r.B.
A0 [= some r.(A1 and B).
E = A1 and B and some r.(A2 and B).
";

pub const LETHE: &str = "\
A [= some r.(B and C).
some r.(C and D) [= E.
";

pub const LETHE_RESULT: &str = "\
A [= some r.B.
A and all r.(not B or D) [= E.
";

pub const FAMILY: &str = "\
Parent = some hasChild.top.
Parent = Father or Mother.
Father [= Man.
Mother [= Woman.
Man [= not Woman.
";

/// One stored example: an ontology, the signature it is used with, an
/// optional expected result, and optionally a pair of concepts or a
/// definition target.
#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub ontology: &'static str,
    pub signature: Option<Signature>,
    pub expected: Option<&'static str>,
    pub concepts: Option<(&'static str, &'static str)>,
    pub target: Option<&'static str>,
    pub note: &'static str,
}

impl Example {
    pub fn ontology(&self) -> Ontology {
        parse_ontology(self.ontology).expect("registry ontology parses")
    }
    pub fn concept_pair(&self) -> Option<(Concept, Concept)> {
        self.concepts.map(|(a, b)| (parse_concept(a).unwrap(), parse_concept(b).unwrap()))
    }
}

pub fn examples() -> Vec<Example> {
    vec![
        Example {
            name: "car",
            ontology: CAR,
            signature: None,
            expected: None,
            concepts: None,
            target: None,
            note: "cars, parts and engines",
        },
        Example {
            name: "uni",
            ontology: UNI,
            signature: Some(Signature::from_lists(&["Uni", "Undergrad"], &["hasEnrolled"], &[])),
            expected: Some(UNI_FORGET_GRAD),
            concepts: None,
            target: None,
            note: "forgetting Grad; expected result is the uniform interpolant",
        },
        Example {
            name: "cyclic",
            ontology: CYCLIC,
            signature: Some(Signature::from_lists(&["A"], &["r"], &[])),
            expected: Some("A [= nu X. some r.X.\n"),
            concepts: None,
            target: None,
            note: "no finite ALC uniform interpolant; fixpoint result",
        },
        Example {
            name: "el-loopfree",
            ontology: EL_LOOP_FREE,
            signature: Some(Signature::from_lists(&["A", "A0", "A1", "E"], &["r"], &[])),
            expected: None,
            concepts: None,
            target: None,
            note: "acyclic EL ontology; keeping A2 as well forces a fixpoint in the ALC result",
        },
        Example {
            name: "lethe",
            ontology: LETHE,
            signature: Some(Signature::from_lists(&["A", "B", "D", "E"], &["r"], &[])),
            expected: Some(LETHE_RESULT),
            concepts: None,
            target: None,
            note: "resolution and role propagation walk-through, forgetting C",
        },
        Example {
            name: "doctor",
            ontology: "",
            signature: Some(Signature::from_lists(&["Doctor"], &["child"], &[])),
            expected: Some("some child.Doctor"),
            concepts: Some(("some child.top and all child.Doctor", "some child.(Doctor or Rich)")),
            target: None,
            note: "Craig interpolant between two concepts without ontology",
        },
        Example {
            name: "alco-nominal",
            ontology: "",
            signature: Some(Signature::from_lists(&[], &["r"], &[])),
            expected: None,
            concepts: Some(("{a} and some r.{a}", "not A or some r.A")),
            target: None,
            note: "no ALCO interpolant over {r}; one exists over {r, a}",
        },
        Example {
            name: "family",
            ontology: FAMILY,
            signature: Some(Signature::from_lists(&["Woman"], &["hasChild"], &[])),
            expected: Some("Woman and some hasChild.top"),
            concepts: None,
            target: Some("Mother"),
            note: "Mother is implicitly and explicitly definable from Woman and hasChild",
        },
    ]
}

pub fn lookup(name: &str) -> Result<Example> {
    examples()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::NotFound(format!("no example named {}", name)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_parse() {
        for e in examples() {
            e.ontology();
            e.concept_pair();
            if let Some(x) = e.expected {
                assert!(parse_ontology(x).is_ok() || parse_concept(x).is_ok(), "{}", e.name);
            }
        }
    }

    #[test]
    fn lookups() {
        assert_eq!(lookup("lethe").unwrap().ontology().len(), 2);
        assert_eq!(lookup("uni").unwrap().ontology().len(), 4);
        assert!(matches!(lookup("nope"), Err(Error::NotFound(_))));
        // the equality axiom expands into two inclusions
        assert_eq!(lookup("el-loopfree").unwrap().ontology().len(), 4);
    }
}
