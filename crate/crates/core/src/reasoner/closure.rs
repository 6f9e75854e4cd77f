use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::syntax::{negate, nnf, Concept, Name, Node, Ontology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Top,
    Bottom,
    /// concept name or nominal, true or negated
    Atom { nominal: bool, positive: bool, name: Name },
    And(Vec<usize>),
    Or(Vec<usize>),
    Exists { role: usize, body: usize },
    Forall { role: usize, body: usize },
}

/// An indexed closure over negation-normal-form concepts, closed under
/// subconcepts and negation. Members are numbered so that children come
/// before parents.
#[derive(Debug, Clone)]
pub struct Closure {
    pub members: Vec<Concept>,
    pub kinds: Vec<Kind>,
    pub neg: Vec<usize>,
    pub roles: Vec<Name>,
    index: HashMap<Concept, usize>,
    /// internalised axioms, `nnf(not C or D)` for every `C [= D`
    pub axioms: Vec<usize>,
}

impl Closure {
    pub fn build(o: &Ontology, extra: &[Concept]) -> Result<Closure> {
        let mut cl = Closure {
            members: Vec::new(),
            kinds: Vec::new(),
            neg: Vec::new(),
            roles: Vec::new(),
            index: HashMap::new(),
            axioms: Vec::new(),
        };
        for ax in o.iter() {
            if ax.lhs.has_fixpoint() || ax.rhs.has_fixpoint() {
                return Err(Error::Unsupported("type elimination needs fixpoint-free input".into()));
            }
            let c = nnf(&Concept::or2(Concept::not(ax.lhs.clone()), ax.rhs.clone()));
            let id = cl.add(&c);
            if !cl.axioms.contains(&id) {
                cl.axioms.push(id);
            }
        }
        for e in extra {
            if e.has_fixpoint() {
                return Err(Error::Unsupported("type elimination needs fixpoint-free input".into()));
            }
            cl.add(&nnf(e));
        }
        cl.neg = cl.members.iter().map(|m| cl.index[&negate(m)]).collect();
        Ok(cl)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Index of an NNF-normalised concept, if it is a member.
    pub fn find(&self, c: &Concept) -> Option<usize> {
        self.index.get(&nnf(c)).copied()
    }

    fn role_index(&mut self, r: &Name) -> usize {
        match self.roles.iter().position(|x| x == r) {
            Some(i) => i,
            None => {
                self.roles.push(r.clone());
                self.roles.len() - 1
            }
        }
    }

    fn add(&mut self, c: &Concept) -> usize {
        let id = self.add_one(c);
        let n = negate(c);
        self.add_one(&n);
        id
    }

    fn add_one(&mut self, c: &Concept) -> usize {
        if let Some(&i) = self.index.get(c) {
            return i;
        }
        let kind = match &**c {
            Node::Top => Kind::Top,
            Node::Bottom => Kind::Bottom,
            Node::Name(a) => Kind::Atom { nominal: false, positive: true, name: a.clone() },
            Node::Nominal(a) => Kind::Atom { nominal: true, positive: true, name: a.clone() },
            Node::Not(d) => match &**d {
                Node::Name(a) => Kind::Atom { nominal: false, positive: false, name: a.clone() },
                Node::Nominal(a) => Kind::Atom { nominal: true, positive: false, name: a.clone() },
                _ => unreachable!("input is in negation normal form"),
            },
            Node::And(cs) => Kind::And(cs.iter().map(|k| self.add(k)).collect()),
            Node::Or(cs) => Kind::Or(cs.iter().map(|k| self.add(k)).collect()),
            Node::Exists(r, d) => {
                let body = self.add(d);
                Kind::Exists { role: self.role_index(r), body }
            }
            Node::Forall(r, d) => {
                let body = self.add(d);
                Kind::Forall { role: self.role_index(r), body }
            }
            Node::Nu(..) | Node::Var(_) => unreachable!("fixpoints rejected"),
        };
        // the recursive calls may have inserted c already (not for trees, but be safe)
        if let Some(&i) = self.index.get(c) {
            return i;
        }
        self.members.push(c.clone());
        self.kinds.push(kind);
        self.index.insert(c.clone(), self.members.len() - 1);
        self.members.len() - 1
    }

    /// Members whose truth value is chosen freely when building types:
    /// positive atoms and existential restrictions.
    pub fn base(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| matches!(self.kinds[i], Kind::Atom { positive: true, .. } | Kind::Exists { .. }))
            .collect()
    }
}
