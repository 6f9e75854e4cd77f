use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use super::interpretation::Interpretation;
use crate::error::{Error, Result};
use crate::syntax::{Concept, Node, Ontology};

/// Evaluates concepts over one interpretation; successor lists are built once.
pub struct Evaluator<'a> {
    interp: &'a Interpretation,
    succ: HashMap<&'a str, Vec<Vec<usize>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(interp: &'a Interpretation) -> Self {
        let mut succ = HashMap::new();
        for (r, pairs) in &interp.roles {
            let mut lists = vec![Vec::new(); interp.size];
            for &(d, e) in pairs {
                if d < interp.size && e < interp.size {
                    lists[d].push(e);
                }
            }
            succ.insert(r.as_str(), lists);
        }
        Evaluator { interp, succ }
    }

    pub fn interpretation(&self) -> &Interpretation {
        self.interp
    }

    pub fn successors(&self, r: &str, d: usize) -> &[usize] {
        self.succ.get(r).map(|l| l[d].as_slice()).unwrap_or(&[])
    }

    pub fn eval(&self, c: &Concept) -> Result<FixedBitSet> {
        let mut env = Vec::new();
        self.eval_in(c, &mut env)
    }

    fn full(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.interp.size);
        s.insert_range(..);
        s
    }

    fn eval_in(&self, c: &Concept, env: &mut Vec<(String, FixedBitSet)>) -> Result<FixedBitSet> {
        let n = self.interp.size;
        Ok(match &**c {
            Node::Top => self.full(),
            Node::Bottom => FixedBitSet::with_capacity(n),
            Node::Name(a) => {
                let mut s = FixedBitSet::with_capacity(n);
                if let Some(ext) = self.interp.concepts.get(&**a) {
                    for &d in ext {
                        s.insert(d);
                    }
                }
                s
            }
            Node::Nominal(a) => {
                let mut s = FixedBitSet::with_capacity(n);
                if let Some(&d) = self.interp.individuals.get(&**a) {
                    s.insert(d);
                }
                s
            }
            Node::Var(x) => match env.iter().rev().find(|(y, _)| y.as_str() == &**x) {
                Some((_, s)) => s.clone(),
                None => return Err(Error::UnboundVariable(x.to_string())),
            },
            Node::Not(d) => {
                let mut s = self.eval_in(d, env)?;
                s.toggle_range(..);
                s
            }
            Node::And(cs) => {
                let mut s = self.full();
                for k in cs {
                    s.intersect_with(&self.eval_in(k, env)?);
                }
                s
            }
            Node::Or(cs) => {
                let mut s = FixedBitSet::with_capacity(n);
                for k in cs {
                    s.union_with(&self.eval_in(k, env)?);
                }
                s
            }
            Node::Exists(r, d) => {
                let inner = self.eval_in(d, env)?;
                let mut s = FixedBitSet::with_capacity(n);
                for x in 0..n {
                    if self.successors(r, x).iter().any(|&y| inner.contains(y)) {
                        s.insert(x);
                    }
                }
                s
            }
            Node::Forall(r, d) => {
                let inner = self.eval_in(d, env)?;
                let mut s = FixedBitSet::with_capacity(n);
                for x in 0..n {
                    if self.successors(r, x).iter().all(|&y| inner.contains(y)) {
                        s.insert(x);
                    }
                }
                s
            }
            Node::Nu(x, body) => {
                // downward iteration from the full domain
                let mut cur = self.full();
                loop {
                    env.push((x.to_string(), cur.clone()));
                    let next = self.eval_in(body, env);
                    env.pop();
                    let mut next = next?;
                    next.intersect_with(&cur);
                    if next == cur {
                        break cur;
                    }
                    cur = next;
                }
            }
        })
    }

    pub fn satisfies(&self, o: &Ontology) -> Result<bool> {
        for ax in o.iter() {
            let l = self.eval(&ax.lhs)?;
            let r = self.eval(&ax.rhs)?;
            if !l.is_subset(&r) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The extension of `c` in `i`.
pub fn extension_eval(i: &Interpretation, c: &Concept) -> Result<BTreeSet<usize>> {
    Ok(Evaluator::new(i).eval(c)?.ones().collect())
}

/// Every CI of `o` holds in `i`.
pub fn is_model(i: &Interpretation, o: &Ontology) -> Result<bool> {
    Evaluator::new(i).satisfies(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_concept;

    fn figure_i1() -> Interpretation {
        // a with an r-loop, b isolated
        let mut i = Interpretation::new(2);
        i.add_role("r", 0, 0);
        i.set_individual("a", 0);
        i
    }

    #[test]
    fn nominal_loop() {
        let c = parse_concept("{a} and some r.{a}").unwrap();
        assert_eq!(extension_eval(&figure_i1(), &c).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn top_and_vacuous_forall() {
        let i = figure_i1();
        assert_eq!(extension_eval(&i, &Concept::top()).unwrap(), BTreeSet::from([0, 1]));
        let c = parse_concept("all r.bot").unwrap();
        assert_eq!(extension_eval(&i, &c).unwrap(), BTreeSet::from([1]));
    }

    #[test]
    fn greatest_fixpoint_path() {
        // 0 -> 1 -> 2 -> 1, 3 -> 4
        let mut i = Interpretation::new(5);
        for (d, e) in [(0, 1), (1, 2), (2, 1), (3, 4)] {
            i.add_role("r", d, e);
        }
        let c = parse_concept("nu X. some r.X").unwrap();
        assert_eq!(extension_eval(&i, &c).unwrap(), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn free_variable_is_an_error() {
        let i = figure_i1();
        assert!(extension_eval(&i, &Concept::var("X")).is_err());
    }
}
