use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::concept::{Concept, Inclusion, Node};

/// Concept, role and individual names. The three sets are kept disjoint by
/// the constructors that take names from concepts; `from_lists` checks it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn from_lists(concepts: &[&str], roles: &[&str], individuals: &[&str]) -> Self {
        let s = Signature {
            concepts: concepts.iter().map(|s| s.to_string()).collect(),
            roles: roles.iter().map(|s| s.to_string()).collect(),
            individuals: individuals.iter().map(|s| s.to_string()).collect(),
        };
        debug_assert!(s.is_disjoint());
        s
    }

    pub fn is_disjoint(&self) -> bool {
        self.concepts.is_disjoint(&self.roles)
            && self.concepts.is_disjoint(&self.individuals)
            && self.roles.is_disjoint(&self.individuals)
    }

    pub fn has_concept(&self, n: &str) -> bool {
        self.concepts.contains(n)
    }
    pub fn has_role(&self, n: &str) -> bool {
        self.roles.contains(n)
    }
    pub fn has_individual(&self, n: &str) -> bool {
        self.individuals.contains(n)
    }
    /// Membership regardless of the symbol kind.
    pub fn contains(&self, n: &str) -> bool {
        self.has_concept(n) || self.has_role(n) || self.has_individual(n)
    }

    pub fn union(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.union(&other.concepts).cloned().collect(),
            roles: self.roles.union(&other.roles).cloned().collect(),
            individuals: self.individuals.union(&other.individuals).cloned().collect(),
        }
    }

    pub fn intersection(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.intersection(&other.concepts).cloned().collect(),
            roles: self.roles.intersection(&other.roles).cloned().collect(),
            individuals: self.individuals.intersection(&other.individuals).cloned().collect(),
        }
    }

    pub fn difference(&self, other: &Signature) -> Signature {
        Signature {
            concepts: self.concepts.difference(&other.concepts).cloned().collect(),
            roles: self.roles.difference(&other.roles).cloned().collect(),
            individuals: self.individuals.difference(&other.individuals).cloned().collect(),
        }
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.concepts.is_subset(&other.concepts)
            && self.roles.is_subset(&other.roles)
            && self.individuals.is_subset(&other.individuals)
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty() && self.roles.is_empty() && self.individuals.is_empty()
    }

    /// All names, sorted, regardless of kind.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut s = self.concepts.clone();
        s.extend(self.roles.iter().cloned());
        s.extend(self.individuals.iter().cloned());
        s
    }

    /// Sort a flat list of symbol names into kinds using a reference signature.
    /// Names unknown to `reference` are treated as concept names, except that
    /// names written as `{a}` are individuals.
    pub fn classify(names: &[String], reference: &Signature) -> Signature {
        let mut s = Signature::new();
        for n in names {
            let n = n.trim();
            if n.is_empty() {
                continue;
            }
            if let Some(ind) = n.strip_prefix('{').and_then(|x| x.strip_suffix('}')) {
                s.individuals.insert(ind.trim().to_string());
            } else if reference.has_role(n) {
                s.roles.insert(n.to_string());
            } else if reference.has_individual(n) {
                s.individuals.insert(n.to_string());
            } else {
                s.concepts.insert(n.to_string());
            }
        }
        s
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<_> = self.concepts.iter().cloned().collect();
        let r: Vec<_> = self.roles.iter().cloned().collect();
        let i: Vec<_> = self.individuals.iter().map(|x| format!("{{{}}}", x)).collect();
        write!(f, "concepts: [{}] roles: [{}] individuals: [{}]", c.join(", "), r.join(", "), i.join(", "))
    }
}

/// A finite set of concept inclusions, kept in insertion order.
#[derive(Clone, Default)]
pub struct Ontology {
    axioms: Vec<Inclusion>,
    keys: HashSet<Inclusion>,
}

impl PartialEq for Ontology {
    fn eq(&self, other: &Self) -> bool {
        self.axioms == other.axioms
    }
}
impl Eq for Ontology {}

impl fmt::Debug for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.axioms.iter()).finish()
    }
}

impl fmt::Display for Ontology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_ontology(self))
    }
}

impl Ontology {
    pub fn new() -> Self {
        Ontology::default()
    }

    pub fn from_axioms(axioms: impl IntoIterator<Item = Inclusion>) -> Self {
        let mut o = Ontology::new();
        for a in axioms {
            o.add(a);
        }
        o
    }

    /// Adds an axiom unless an equal one (up to And/Or child order) is present.
    pub fn add(&mut self, ax: Inclusion) -> bool {
        let key = Inclusion::new(normalize_order(&ax.lhs), normalize_order(&ax.rhs));
        if self.keys.insert(key) {
            self.axioms.push(ax);
            true
        } else {
            false
        }
    }

    pub fn axioms(&self) -> &[Inclusion] {
        &self.axioms
    }
    pub fn len(&self) -> usize {
        self.axioms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
    pub fn iter(&self) -> std::slice::Iter<'_, Inclusion> {
        self.axioms.iter()
    }

    pub fn union(&self, other: &Ontology) -> Ontology {
        let mut o = self.clone();
        for a in other.iter() {
            o.add(a.clone());
        }
        o
    }

    pub fn has_fixpoint(&self) -> bool {
        self.axioms.iter().any(|a| a.lhs.has_fixpoint() || a.rhs.has_fixpoint())
    }
    pub fn has_nominal(&self) -> bool {
        self.axioms.iter().any(|a| a.lhs.has_nominal() || a.rhs.has_nominal())
    }

    pub fn map(&self, mut f: impl FnMut(&Concept) -> Concept) -> Ontology {
        Ontology::from_axioms(self.axioms.iter().map(|a| Inclusion::new(f(&a.lhs), f(&a.rhs))))
    }
}

/// Recursively sorts And/Or operands; used as the duplicate-detection key.
pub fn normalize_order(c: &Concept) -> Concept {
    match &**c {
        Node::And(cs) | Node::Or(cs) => {
            let mut kids: Vec<Concept> = cs.iter().map(normalize_order).collect();
            kids.sort();
            c.with_children(kids)
        }
        _ => {
            let kids: Vec<Concept> = c.children().into_iter().map(normalize_order).collect();
            if kids.is_empty() {
                c.clone()
            } else {
                c.with_children(kids)
            }
        }
    }
}
