use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{name, nnf, simplify, Concept, Inclusion, Name, Node, Ontology};

/// Definers start with an underscore, which the DSL never produces, so they
/// cannot collide with user names.
pub fn is_definer(n: &str) -> bool {
    n.starts_with("_D")
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Literal {
    Pos(Name),
    Neg(Name),
    /// role, definer
    Exists(Name, Name),
    Forall(Name, Name),
}

impl Literal {
    pub fn role(&self) -> Option<&Name> {
        match self {
            Literal::Exists(r, _) | Literal::Forall(r, _) => Some(r),
            _ => None,
        }
    }

    pub fn filler(&self) -> Option<&Name> {
        match self {
            Literal::Exists(_, d) | Literal::Forall(_, d) => Some(d),
            _ => None,
        }
    }

    pub fn to_concept(&self) -> Concept {
        match self {
            Literal::Pos(a) => Concept::atom(a.clone()),
            Literal::Neg(a) => Concept::not(Concept::atom(a.clone())),
            Literal::Exists(r, d) => Concept::exists_n(r.clone(), Concept::atom(d.clone())),
            Literal::Forall(r, d) => Concept::forall_n(r.clone(), Concept::atom(d.clone())),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Pos(a) => write!(f, "{}", a),
            Literal::Neg(a) => write!(f, "not {}", a),
            Literal::Exists(r, d) => write!(f, "some {}.{}", r, d),
            Literal::Forall(r, d) => write!(f, "all {}.{}", r, d),
        }
    }
}

/// A globally interpreted disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(pub BTreeSet<Literal>);

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Literal>) -> Clause {
        Clause(lits.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.0.contains(l)
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn without(&self, l: &Literal) -> Clause {
        let mut c = self.clone();
        c.0.remove(l);
        c
    }

    pub fn union(&self, other: &Clause) -> Clause {
        Clause(self.0.union(&other.0).cloned().collect())
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|l| matches!(l, Literal::Pos(a) if self.0.contains(&Literal::Neg(a.clone()))))
    }

    /// Distinct definers occurring negatively.
    pub fn negative_definers(&self) -> Vec<&Name> {
        self.0
            .iter()
            .filter_map(|l| match l {
                Literal::Neg(d) if is_definer(d) => Some(d),
                _ => None,
            })
            .collect()
    }

    pub fn negative_definer(&self) -> Option<&Name> {
        self.negative_definers().into_iter().next()
    }

    pub fn respects_invariant(&self) -> bool {
        self.negative_definers().len() <= 1
    }

    /// Concept or role name `n` occurs in some literal (definers count too).
    pub fn mentions(&self, n: &str) -> bool {
        self.0.iter().any(|l| match l {
            Literal::Pos(a) | Literal::Neg(a) => &**a == n,
            Literal::Exists(r, d) | Literal::Forall(r, d) => &**r == n || &**d == n,
        })
    }

    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_concept(&self) -> Concept {
        Concept::or(self.0.iter().map(Literal::to_concept).collect())
    }

    /// `top [= clause`
    pub fn to_inclusion(&self) -> Inclusion {
        Inclusion::new(Concept::top(), self.to_concept())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("bot");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" or "))
    }
}

/// Bookkeeping for definers: creation order, the original definers each one
/// conjoins, and where each came from.
#[derive(Debug, Clone, Default)]
pub struct DefinerContext {
    pub definers: Vec<Name>,
    pub base_of: BTreeMap<Name, BTreeSet<Name>>,
    pub origin: BTreeMap<Name, String>,
    by_base: HashMap<BTreeSet<Name>, Name>,
    /// number of combinations answered by an existing definer
    pub memo_hits: usize,
}

impl DefinerContext {
    pub fn new() -> Self {
        DefinerContext::default()
    }

    pub fn is_definer(&self, n: &str) -> bool {
        self.base_of.contains_key(n)
    }

    fn push(&mut self, base: BTreeSet<Name>, origin: String) -> Name {
        let d = name(&format!("_D{}", self.definers.len() + 1));
        self.definers.push(d.clone());
        let base = if base.is_empty() { std::iter::once(d.clone()).collect() } else { base };
        self.by_base.insert(base.clone(), d.clone());
        self.base_of.insert(d.clone(), base);
        self.origin.insert(d.clone(), origin);
        d
    }

    /// A fresh original definer.
    pub fn fresh(&mut self, origin: String) -> Name {
        self.push(BTreeSet::new(), origin)
    }

    /// The definer standing for `d1 and d2`, reused when one with the same
    /// base set exists. The flag tells whether it was created now.
    pub fn combine(&mut self, d1: &Name, d2: &Name) -> (Name, bool) {
        let base: BTreeSet<Name> = self.base_of[d1].union(&self.base_of[d2]).cloned().collect();
        if let Some(d) = self.by_base.get(&base) {
            self.memo_hits += 1;
            return (d.clone(), false);
        }
        let d = self.push(base, format!("{} and {}", d1, d2));
        (d, true)
    }

    /// `base(small) ⊆ base(big)`, so `big` implies `small`.
    pub fn implies(&self, big: &Name, small: &Name) -> bool {
        match (self.base_of.get(big), self.base_of.get(small)) {
            (Some(b), Some(s)) => s.is_subset(b),
            _ => false,
        }
    }
}

struct Clausifier {
    ctx: DefinerContext,
    out: Vec<Clause>,
    fillers: HashMap<Concept, Name>,
}

impl Clausifier {
    fn definer_for(&mut self, filler: &Concept) -> Result<Name> {
        if let Some(d) = self.fillers.get(filler) {
            return Ok(d.clone());
        }
        let d = self.ctx.fresh(filler.to_string());
        self.fillers.insert(filler.clone(), d.clone());
        for mut k in self.cnf(filler)? {
            k.0.insert(Literal::Neg(d.clone()));
            if !k.is_tautology() {
                self.out.push(k);
            }
        }
        Ok(d)
    }

    /// Clauses of an NNF concept; the empty list is `top`.
    fn cnf(&mut self, c: &Concept) -> Result<Vec<Clause>> {
        Ok(match &**c {
            Node::Top => vec![],
            Node::Bottom => vec![Clause::default()],
            Node::Name(a) => vec![Clause::new([Literal::Pos(a.clone())])],
            Node::Not(d) => match &**d {
                Node::Name(a) => vec![Clause::new([Literal::Neg(a.clone())])],
                _ => return Err(Error::Unsupported(format!("cannot clausify {}", c))),
            },
            Node::And(cs) => {
                let mut v = Vec::new();
                for k in cs {
                    v.extend(self.cnf(k)?);
                }
                v
            }
            Node::Or(cs) => {
                let mut acc = vec![Clause::default()];
                for k in cs {
                    let part = self.cnf(k)?;
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for b in &part {
                            let u = a.union(b);
                            if !u.is_tautology() && !next.contains(&u) {
                                next.push(u);
                            }
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                acc
            }
            Node::Exists(r, d) => vec![Clause::new([Literal::Exists(r.clone(), self.definer_for(d)?)])],
            Node::Forall(r, d) => vec![Clause::new([Literal::Forall(r.clone(), self.definer_for(d)?)])],
            Node::Nominal(_) => return Err(Error::Unsupported("nominals in uniform interpolation".into())),
            Node::Nu(..) | Node::Var(_) => return Err(Error::Unsupported("fixpoints in the input ontology".into())),
        })
    }
}

/// Normal form with definers: each axiom `C [= D` becomes the clauses of
/// `nnf(not C or D)`, and every role filler is replaced by a definer `D`
/// whose meaning is given by clauses containing `not D`.
pub fn clausify(o: &Ontology) -> Result<(Vec<Clause>, DefinerContext)> {
    let mut cl = Clausifier { ctx: DefinerContext::new(), out: Vec::new(), fillers: HashMap::new() };
    for ax in o.iter() {
        let c = simplify(&nnf(&Concept::or2(Concept::not(ax.lhs.clone()), ax.rhs.clone())));
        let top = cl.cnf(&c)?;
        cl.out.extend(top);
    }
    let mut seen = BTreeSet::new();
    let clauses = cl.out.into_iter().filter(|k| seen.insert(k.clone())).collect();
    Ok((clauses, cl.ctx))
}

/// Clauses read back as inclusions `top [= clause`.
pub fn clauses_to_ontology<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Ontology {
    Ontology::from_axioms(clauses.into_iter().map(Clause::to_inclusion))
}
