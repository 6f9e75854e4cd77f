use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::closure::{Closure, Kind};
use crate::error::{Error, Result};
use crate::syntax::{Concept, Ontology};

pub const DEFAULT_TYPE_CAP: usize = 200_000;

pub fn type_cap() -> usize {
    std::env::var("INTERPOL_TYPE_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_TYPE_CAP)
}

/// A type is the set of closure members it contains.
pub type TypeBits = FixedBitSet;

/// Result of type elimination.
#[derive(Debug, Clone)]
pub struct TypeSet {
    pub closure: Closure,
    pub types: Vec<TypeBits>,
    /// number of locally consistent, ontology-respecting types before elimination
    pub initial: usize,
    /// survivor counts after each elimination round, starting with `initial`
    pub history: Vec<usize>,
}

impl TypeSet {
    pub fn contains(&self, t: usize, member: usize) -> bool {
        self.types[t].contains(member)
    }

    /// Types containing the concept (after NNF); empty if it is not in the closure.
    pub fn with(&self, c: &Concept) -> Vec<usize> {
        match self.closure.find(c) {
            Some(m) => (0..self.types.len()).filter(|&t| self.types[t].contains(m)).collect(),
            None => Vec::new(),
        }
    }

    /// `{D | all r.D in t}` as a member bitset.
    pub fn forall_bodies(&self, t: usize, role: usize) -> FixedBitSet {
        forall_bodies(&self.closure, &self.types[t], role)
    }

    /// `t ~>_r u`
    pub fn successor(&self, t: usize, role: usize, u: usize) -> bool {
        self.forall_bodies(t, role).is_subset(&self.types[u])
    }
}

fn forall_bodies(cl: &Closure, t: &TypeBits, role: usize) -> FixedBitSet {
    let mut req = FixedBitSet::with_capacity(cl.len());
    for m in t.ones() {
        if let Kind::Forall { role: r, body } = cl.kinds[m] {
            if r == role {
                req.insert(body);
            }
        }
    }
    req
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum V3 {
    T,
    F,
    U,
}

fn eval3(cl: &Closure, base: &[Option<bool>], out: &mut [V3]) {
    for i in 0..cl.len() {
        out[i] = match &cl.kinds[i] {
            Kind::Top => V3::T,
            Kind::Bottom => V3::F,
            Kind::Atom { positive: true, .. } | Kind::Exists { .. } => match base[i] {
                Some(true) => V3::T,
                Some(false) => V3::F,
                None => V3::U,
            },
            Kind::Atom { positive: false, .. } | Kind::Forall { .. } => match base[cl.neg[i]] {
                Some(true) => V3::F,
                Some(false) => V3::T,
                None => V3::U,
            },
            Kind::And(ks) => {
                if ks.iter().any(|&k| out[k] == V3::F) {
                    V3::F
                } else if ks.iter().all(|&k| out[k] == V3::T) {
                    V3::T
                } else {
                    V3::U
                }
            }
            Kind::Or(ks) => {
                if ks.iter().any(|&k| out[k] == V3::T) {
                    V3::T
                } else if ks.iter().all(|&k| out[k] == V3::F) {
                    V3::F
                } else {
                    V3::U
                }
            }
        }
    }
}

/// All Boolean-consistent, ontology-respecting types over the closure, in
/// lexicographic order of the base assignment (false before true).
pub fn consistent_types(cl: &Closure) -> Result<Vec<TypeBits>> {
    let base = cl.base();
    let cap = type_cap();
    let mut assign: Vec<Option<bool>> = vec![None; cl.len()];
    let mut vals = vec![V3::U; cl.len()];
    let mut out = Vec::new();
    fn go(
        cl: &Closure,
        base: &[usize],
        k: usize,
        assign: &mut Vec<Option<bool>>,
        vals: &mut Vec<V3>,
        out: &mut Vec<TypeBits>,
        cap: usize,
    ) -> Result<()> {
        eval3(cl, assign, vals);
        if cl.axioms.iter().any(|&a| vals[a] == V3::F) {
            return Ok(());
        }
        if k == base.len() {
            let mut t = FixedBitSet::with_capacity(cl.len());
            for (i, v) in vals.iter().enumerate() {
                if *v == V3::T {
                    t.insert(i);
                }
            }
            out.push(t);
            if out.len() > cap {
                return Err(Error::ResourceLimit(format!("more than {} types", cap)));
            }
            return Ok(());
        }
        for b in [false, true] {
            assign[base[k]] = Some(b);
            go(cl, base, k + 1, assign, vals, out, cap)?;
        }
        assign[base[k]] = None;
        Ok(())
    }
    go(cl, &base, 0, &mut assign, &mut vals, &mut out, cap)?;
    Ok(out)
}

/// Deletes, round by round, every type with an existential restriction that
/// no surviving type can serve as a successor for.
pub fn eliminate(cl: &Closure, types: Vec<TypeBits>) -> (Vec<TypeBits>, Vec<usize>) {
    let mut alive = types;
    let mut history = vec![alive.len()];
    loop {
        let mut memo: HashMap<FixedBitSet, bool> = HashMap::new();
        let keep: Vec<bool> = alive
            .iter()
            .map(|t| {
                t.ones().all(|m| match cl.kinds[m] {
                    Kind::Exists { role, body } => {
                        let mut req = forall_bodies(cl, t, role);
                        req.insert(body);
                        *memo.entry(req.clone()).or_insert_with(|| alive.iter().any(|u| req.is_subset(u)))
                    }
                    _ => true,
                })
            })
            .collect();
        if keep.iter().all(|&k| k) {
            break;
        }
        alive = alive.into_iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t).collect();
        history.push(alive.len());
    }
    (alive, history)
}

/// Types over the closure of `o` and `extra` that are realised in some model of `o`.
pub fn realizable_types(o: &Ontology, extra: &[Concept]) -> Result<TypeSet> {
    let closure = Closure::build(o, extra)?;
    let all = consistent_types(&closure)?;
    let initial = all.len();
    let (types, history) = eliminate(&closure, all);
    Ok(TypeSet { closure, types, initial, history })
}
