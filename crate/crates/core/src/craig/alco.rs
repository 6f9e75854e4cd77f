use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reasoner::{realizable_types, Kind, TypeSet};
use crate::syntax::{nnf, Concept, Ontology, Signature};

#[derive(Debug, Clone, Copy)]
pub struct AlcoOptions {
    pub max_individuals: usize,
    /// size of the mosaic universe; the largest per-side set size that fits is used
    pub max_mosaics: usize,
    /// with `false`, fail instead of bounding the set size below what exactness needs
    pub allow_bounded: bool,
}

impl Default for AlcoOptions {
    fn default() -> Self {
        AlcoOptions { max_individuals: 4, max_mosaics: 4096, allow_bounded: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlcoExistence {
    pub exists: bool,
    /// every set of types was a candidate component; otherwise `exists = true`
    /// only means no witness with components of at most `set_bound` types
    pub exact: bool,
    pub set_bound: usize,
    pub mosaics: usize,
    /// nominal placements tried
    pub branches: usize,
}

/// Whether an ALCO(Σ)-interpolant of `c1 [= c2` under `o` exists, that is,
/// whether `c1` and `not c2` fail to be jointly consistent modulo
/// ALCO(Σ)-bisimulation. Errors with a resource limit when the instance is
/// too large to decide exactly.
pub fn interpolant_exists_alco(o: &Ontology, c1: &Concept, c2: &Concept, sigma: &Signature) -> Result<bool> {
    Ok(alco_existence(o, c1, c2, sigma, AlcoOptions::default())?.exists)
}

struct Side {
    ts: TypeSet,
    /// Σ concept names and Σ individuals, as closure members
    key: Vec<u64>,
    /// types containing `{a}`, per individual of `Mosaics::individuals`
    nominal: Vec<u64>,
    /// per role of `Mosaics::roles`, per type: viable successors
    succ: Vec<Vec<u64>>,
    /// per type: (role, types containing the body) for every existential in it
    needs: Vec<Vec<(usize, u64)>>,
    goal: u64,
}

struct Mosaics {
    in_sigma: Vec<bool>,
    individuals: Vec<String>,
    sides: [Side; 2],
    list: Vec<[u64; 2]>,
}

fn bits(m: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

fn subsets_up_to(group: &[usize], k: usize, out: &mut Vec<u64>) {
    fn go(group: &[usize], k: usize, from: usize, cur: u64, out: &mut Vec<u64>) {
        out.push(cur);
        if k == 0 {
            return;
        }
        for i in from..group.len() {
            go(group, k - 1, i + 1, cur | 1 << group[i], out);
        }
    }
    go(group, k, 0, 0, out);
}

fn binom_sum(n: usize, k: usize) -> usize {
    let mut total = 0usize;
    let mut c = 1usize;
    for i in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul(n - i) / (i + 1);
    }
    total
}

fn side(o: &Ontology, goal: &Concept, sigma: &Signature) -> Result<TypeSet> {
    let mut extra = vec![goal.clone()];
    extra.extend(sigma.concepts.iter().map(|a| Concept::name(a)));
    extra.extend(sigma.individuals.iter().map(|a| Concept::nominal(a)));
    let ts = realizable_types(o, &extra)?;
    if ts.types.len() > 64 {
        return Err(Error::ResourceLimit(format!("{} types on one side", ts.types.len())));
    }
    Ok(ts)
}

impl Mosaics {
    fn build(o: &Ontology, c1: &Concept, c2: &Concept, sigma: &Signature, opts: &AlcoOptions) -> Result<(Mosaics, usize, bool)> {
        let goals = [nnf(c1), nnf(&Concept::not(c2.clone()))];
        let ts = [side(o, &goals[0], sigma)?, side(o, &goals[1], sigma)?];
        let mut roles = BTreeSet::new();
        let mut individuals = BTreeSet::new();
        for t in &ts {
            roles.extend(t.closure.roles.iter().map(|r| r.to_string()));
            for k in &t.closure.kinds {
                if let Kind::Atom { nominal: true, name, .. } = k {
                    individuals.insert(name.to_string());
                }
            }
        }
        if individuals.len() > opts.max_individuals {
            return Err(Error::ResourceLimit(format!("{} individuals, at most {} supported", individuals.len(), opts.max_individuals)));
        }
        let roles: Vec<String> = roles.into_iter().collect();
        let individuals: Vec<String> = individuals.into_iter().collect();
        let in_sigma = roles.iter().map(|r| sigma.has_role(r)).collect();
        let sigma_atoms: Vec<Concept> = sigma
            .concepts
            .iter()
            .map(|a| Concept::name(a))
            .chain(sigma.individuals.iter().map(|a| Concept::nominal(a)))
            .collect();
        let mut sides = Vec::new();
        for (t, g) in ts.into_iter().zip(goals.iter()) {
            let n = t.types.len();
            let cl = &t.closure;
            let mask = |m: usize| (0..n).filter(|&u| t.contains(u, m)).fold(0u64, |acc, u| acc | 1 << u);
            let members: Vec<usize> = sigma_atoms.iter().map(|a| cl.find(a).expect("Σ atoms are in the closure")).collect();
            let key = (0..n).map(|u| members.iter().enumerate().fold(0u64, |acc, (i, &m)| acc | (t.contains(u, m) as u64) << i)).collect();
            let nominal = individuals.iter().map(|a| cl.find(&Concept::nominal(a)).map_or(0, mask)).collect();
            let succ = roles
                .iter()
                .map(|r| match cl.roles.iter().position(|x| &**x == r.as_str()) {
                    Some(ri) => (0..n).map(|u| (0..n).filter(|&v| t.successor(u, ri, v)).fold(0u64, |acc, v| acc | 1 << v)).collect(),
                    None => vec![if n == 64 { u64::MAX } else { (1u64 << n) - 1 }; n],
                })
                .collect();
            let needs = (0..n)
                .map(|u| {
                    t.types[u]
                        .ones()
                        .filter_map(|m| match cl.kinds[m] {
                            Kind::Exists { role, body } => {
                                Some((roles.iter().position(|r| r.as_str() == &*cl.roles[role]).unwrap(), mask(body)))
                            }
                            _ => None,
                        })
                        .collect()
                })
                .collect();
            let goal = cl.find(g).map_or(0, mask);
            sides.push(Side { ts: t, key, nominal, succ, needs, goal });
        }
        let sides: [Side; 2] = [sides.remove(0), sides.remove(0)];

        // components agree on Σ; group the types of each side by their Σ key
        let keys: BTreeSet<u64> = sides.iter().flat_map(|s| s.key.iter().copied()).collect();
        let groups = |s: &Side, k: u64| -> Vec<usize> { (0..s.ts.types.len()).filter(|&u| s.key[u] == k).collect() };
        let largest = keys.iter().flat_map(|&k| [groups(&sides[0], k).len(), groups(&sides[1], k).len()]).max().unwrap_or(0);
        let count = |kb: usize| -> usize {
            keys.iter()
                .map(|&k| binom_sum(groups(&sides[0], k).len(), kb).saturating_mul(binom_sum(groups(&sides[1], k).len(), kb)))
                .fold(0usize, |a, b| a.saturating_add(b))
        };
        let mut bound = largest;
        while bound > 0 && count(bound) > opts.max_mosaics {
            bound -= 1;
        }
        let exact = bound == largest;
        if bound == 0 || (!exact && !opts.allow_bounded) {
            return Err(Error::ResourceLimit(format!(
                "{} candidate mosaics exceed the limit of {}",
                count(largest),
                opts.max_mosaics
            )));
        }
        let mut list = Vec::new();
        for &k in &keys {
            let (mut l, mut r) = (Vec::new(), Vec::new());
            subsets_up_to(&groups(&sides[0], k), bound, &mut l);
            subsets_up_to(&groups(&sides[1], k), bound, &mut r);
            for &a in &l {
                for &b in &r {
                    let m = [a, b];
                    let one_each = (0..2).all(|i| sides[i].nominal.iter().all(|&nm| (m[i] & nm).count_ones() <= 1));
                    if (a | b) != 0 && one_each {
                        list.push(m);
                    }
                }
            }
        }
        Ok((Mosaics { in_sigma, individuals, sides, list }, bound, exact))
    }

    /// `(T1, T2) ~>_r (T1', T2')`: every type on either side has a viable successor.
    fn leads(&self, r: usize, m: [u64; 2], to: [u64; 2]) -> bool {
        (0..2).all(|i| bits(m[i]).all(|s| self.sides[i].succ[r][s] & to[i] != 0))
    }

    fn good(&self, m: [u64; 2], alive: &[bool]) -> bool {
        for i in 0..2 {
            let sd = &self.sides[i];
            for t in bits(m[i]) {
                for &(r, body) in &sd.needs[t] {
                    let want = sd.succ[r][t] & body;
                    let found = self.list.iter().zip(alive).any(|(&to, &a)| {
                        a && to[i] & want != 0 && (!self.in_sigma[r] || self.leads(r, m, to))
                    });
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whole-round elimination of bad mosaics until nothing changes.
    fn eliminate(&self, alive: &mut [bool]) {
        loop {
            let bad: Vec<usize> = (0..self.list.len()).filter(|&j| alive[j] && !self.good(self.list[j], alive)).collect();
            if bad.is_empty() {
                return;
            }
            for j in bad {
                alive[j] = false;
            }
        }
    }

    fn goal_reached(&self, alive: &[bool]) -> bool {
        self.list
            .iter()
            .zip(alive)
            .any(|(m, &a)| a && m[0] & self.sides[0].goal != 0 && m[1] & self.sides[1].goal != 0)
    }

    /// Each individual of a side's closure is realised by exactly one type,
    /// which occurs in exactly one surviving mosaic.
    fn good_for_nominals(&self, alive: &[bool]) -> bool {
        (0..2).all(|i| {
            self.sides[i].nominal.iter().filter(|&&nm| nm != 0).all(|&nm| {
                let holders: Vec<&[u64; 2]> = self.list.iter().zip(alive).filter(|(m, &a)| a && m[i] & nm != 0).map(|(m, _)| m).collect();
                holders.len() == 1 && (holders[0][i] & nm).count_ones() == 1
            })
        })
    }

    /// Fixes, one individual and side at a time, the single mosaic holding
    /// that individual, eliminating after every choice.
    fn place(&self, mut alive: Vec<bool>, todo: &[(usize, usize)], fixed: &mut Vec<usize>, branches: &mut usize) -> Option<Vec<bool>> {
        self.eliminate(&mut alive);
        if fixed.iter().any(|&j| !alive[j]) {
            return None;
        }
        let Some((&(a, i), rest)) = todo.split_first() else {
            return if self.goal_reached(&alive) { Some(alive) } else { None };
        };
        let nm = self.sides[i].nominal[a];
        let cands: Vec<usize> = (0..self.list.len()).filter(|&j| alive[j] && self.list[j][i] & nm != 0).collect();
        for j in cands {
            *branches += 1;
            let mut next = alive.clone();
            for (k, m) in self.list.iter().enumerate() {
                if k != j && m[i] & nm != 0 {
                    next[k] = false;
                }
            }
            fixed.push(j);
            let r = self.place(next, rest, fixed, branches);
            fixed.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

/// `interpolant_exists_alco` with explicit limits and statistics.
pub fn alco_existence(o: &Ontology, c1: &Concept, c2: &Concept, sigma: &Signature, opts: AlcoOptions) -> Result<AlcoExistence> {
    if o.has_fixpoint() || c1.has_fixpoint() || c2.has_fixpoint() {
        return Err(Error::Unsupported("interpolant existence needs fixpoint-free input".into()));
    }
    let (ms, set_bound, exact) = Mosaics::build(o, c1, c2, sigma, &opts)?;
    let todo: Vec<(usize, usize)> = (0..ms.individuals.len())
        .flat_map(|a| (0..2).map(move |i| (a, i)))
        .filter(|&(a, i)| ms.sides[i].nominal[a] != 0)
        .collect();
    let mut branches = 0;
    let witness = ms.place(vec![true; ms.list.len()], &todo, &mut Vec::new(), &mut branches);
    if let Some(alive) = &witness {
        if !ms.good_for_nominals(alive) {
            return Err(Error::Verification("accepted mosaic set is not good for nominals".into()));
        }
    }
    Ok(AlcoExistence { exists: witness.is_none(), exact, set_bound, mosaics: ms.list.len(), branches })
}
