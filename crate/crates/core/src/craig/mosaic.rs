use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::reasoner::{realizable_types, Kind, TypeSet};
use crate::syntax::{nnf, simplify, Concept, Name, Ontology, Signature};

/// Above this many mosaics elimination gives up.
pub const MOSAIC_CAP: usize = 1 << 24;

const ALIVE: u16 = u16::MAX;

/// Why a mosaic was eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cause {
    /// the two types disagree on this concept name
    Atomic(Name),
    /// `some r.C` (closure member `witness` of that side) in the type on
    /// `side` has no viable successor pair left
    Existential { role: Name, side: u8, witness: usize },
}

/// Successor structure of one side for one role: types are grouped by the
/// bodies of their universal restrictions, which fixes their successors.
#[derive(Debug, Clone)]
struct RoleView {
    /// closure index of the role on this side
    index: Option<usize>,
    profile: Vec<usize>,
    /// per profile: the viable successors
    succ: Vec<FixedBitSet>,
}

impl RoleView {
    fn new(ts: &TypeSet, role: &str) -> RoleView {
        let n = ts.types.len();
        let index = ts.closure.roles.iter().position(|r| &**r == role);
        let Some(ri) = index else {
            let mut all = FixedBitSet::with_capacity(n);
            all.insert_range(..);
            return RoleView { index, profile: vec![0; n], succ: vec![all] };
        };
        let mut ids: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut succ = Vec::new();
        let profile = (0..n)
            .map(|t| {
                let req = ts.forall_bodies(t, ri);
                *ids.entry(req.clone()).or_insert_with(|| {
                    let mut s = FixedBitSet::with_capacity(n);
                    for u in 0..n {
                        if req.is_subset(&ts.types[u]) {
                            s.insert(u);
                        }
                    }
                    succ.push(s);
                    succ.len() - 1
                })
            })
            .collect();
        RoleView { index, profile, succ }
    }

    fn successors(&self, t: usize) -> &FixedBitSet {
        &self.succ[self.profile[t]]
    }
}

/// A Σ-existential on one side, in cause order.
#[derive(Debug, Clone)]
struct Requirement {
    role: usize,
    side: usize,
    member: usize,
    body: usize,
    cause: u32,
}

/// Outcome of mosaic elimination. Side 1 types describe elements satisfying
/// `c1`, side 2 types elements satisfying `c2`; a mosaic pairs a type of
/// each side.
#[derive(Debug, Clone)]
pub struct EliminationTrace {
    pub sides: [TypeSet; 2],
    pub sigma: Signature,
    pub c1: Concept,
    pub c2: Concept,
    roles: Vec<Name>,
    views: [Vec<RoleView>; 2],
    round: Vec<u16>,
    cause: Vec<u32>,
    causes: Vec<Cause>,
    /// surviving mosaics after each round, starting with all pairs
    pub history: Vec<usize>,
}

impl EliminationTrace {
    fn n2(&self) -> usize {
        self.sides[1].types.len()
    }

    /// Round at which `(t1, t2)` was eliminated; `None` for survivors.
    pub fn round_of(&self, t1: usize, t2: usize) -> Option<usize> {
        match self.round[t1 * self.n2() + t2] {
            ALIVE => None,
            r => Some(r as usize),
        }
    }

    pub fn cause_of(&self, t1: usize, t2: usize) -> Option<&Cause> {
        self.round_of(t1, t2).map(|_| &self.causes[self.cause[t1 * self.n2() + t2] as usize])
    }

    pub fn mosaics(&self) -> usize {
        self.round.len()
    }

    pub fn survivors(&self) -> usize {
        self.round.iter().filter(|&&r| r == ALIVE).count()
    }

    /// Number of the last round that eliminated something.
    pub fn rounds(&self) -> usize {
        self.round.iter().filter(|&&r| r != ALIVE).max().copied().unwrap_or(0) as usize
    }

    pub fn render_cause(&self, c: &Cause) -> String {
        match c {
            Cause::Atomic(a) => format!("atomic {}", a),
            Cause::Existential { side, witness, .. } => {
                format!("existential side {} {}", side, self.sides[*side as usize - 1].closure.members[*witness])
            }
        }
    }

    /// Some surviving mosaic pairs a type with `c1` and one with `c2`.
    pub fn jointly_consistent(&self) -> bool {
        let (l, r) = (self.sides[0].with(&self.c1), self.sides[1].with(&self.c2));
        l.iter().any(|&t1| r.iter().any(|&t2| self.round_of(t1, t2).is_none()))
    }
}

/// Decides joint consistency of `c1` and `c2` under `o` modulo
/// Σ-bisimulation by eliminating bad mosaics round by round, with types over
/// the common closure of `o`, `c1` and `c2`. Round 0 removes pairs that
/// disagree on a Σ concept name; later rounds remove pairs whose
/// Σ-existentials have no successor pair in the previous round's set.
pub fn joint_consistency_alc(o: &Ontology, c1: &Concept, c2: &Concept, sigma: &Signature) -> Result<(bool, EliminationTrace)> {
    reject_nominals(&[o], &[c1, c2])?;
    let (c1, c2) = (nnf(c1), nnf(c2));
    let ts = realizable_types(o, &[c1.clone(), c2.clone()])?;
    eliminate([ts.clone(), ts], c1, c2, sigma)
}

/// The same elimination with separate closures: side 1 ranges over models
/// of `o1` and the closure of `o1`, `c1`; side 2 over `o2`, `c2`. The sides
/// share only Σ, so this suits inputs whose right-hand side was renamed apart.
pub fn joint_consistency_split(
    o1: &Ontology,
    c1: &Concept,
    o2: &Ontology,
    c2: &Concept,
    sigma: &Signature,
) -> Result<(bool, EliminationTrace)> {
    reject_nominals(&[o1, o2], &[c1, c2])?;
    let (c1, c2) = (nnf(c1), nnf(c2));
    let atoms: Vec<Concept> = sigma.concepts.iter().map(|a| Concept::name(a)).collect();
    let side = |o: &Ontology, c: &Concept| {
        let mut extra = vec![c.clone()];
        extra.extend(atoms.iter().cloned());
        realizable_types(o, &extra)
    };
    eliminate([side(o1, &c1)?, side(o2, &c2)?], c1, c2, sigma)
}

fn reject_nominals(os: &[&Ontology], cs: &[&Concept]) -> Result<()> {
    if os.iter().any(|o| o.has_nominal()) || cs.iter().any(|c| c.has_nominal()) {
        return Err(Error::Unsupported("nominals need the ALCO procedure".into()));
    }
    Ok(())
}

fn eliminate(sides: [TypeSet; 2], c1: Concept, c2: Concept, sigma: &Signature) -> Result<(bool, EliminationTrace)> {
    let (n1, n2) = (sides[0].types.len(), sides[1].types.len());
    if n1.saturating_mul(n2) > MOSAIC_CAP {
        return Err(Error::ResourceLimit(format!("{} x {} mosaics", n1, n2)));
    }
    let mut causes = Vec::new();

    // round 0: atomic consistency, least concept name first
    let atoms: Vec<(Option<usize>, Option<usize>)> = sigma
        .concepts
        .iter()
        .map(|a| {
            causes.push(Cause::Atomic(Name::from(a.as_str())));
            let m = |i: usize| sides[i].closure.find(&Concept::name(a));
            (m(0), m(1))
        })
        .collect();
    let mut round = vec![ALIVE; n1 * n2];
    let mut cause = vec![0u32; n1 * n2];
    let holds = |i: usize, t: usize, m: Option<usize>| m.map(|m| sides[i].contains(t, m));
    for t1 in 0..n1 {
        for t2 in 0..n2 {
            let bad = atoms.iter().position(|&(m1, m2)| match (holds(0, t1, m1), holds(1, t2, m2)) {
                (Some(a), Some(b)) => a != b,
                _ => false,
            });
            if let Some(k) = bad {
                round[t1 * n2 + t2] = 0;
                cause[t1 * n2 + t2] = k as u32;
            }
        }
    }

    // Σ-existentials, ordered by role name, side, rendering
    let mut reqs_sorted: Vec<(Name, usize, String, usize, usize)> = Vec::new();
    for (i, ts) in sides.iter().enumerate() {
        let cl = &ts.closure;
        for m in 0..cl.len() {
            if let Kind::Exists { role, body } = cl.kinds[m] {
                if sigma.has_role(&cl.roles[role]) {
                    reqs_sorted.push((cl.roles[role].clone(), i, cl.members[m].to_string(), m, body));
                }
            }
        }
    }
    reqs_sorted.sort();
    let mut roles: Vec<Name> = reqs_sorted.iter().map(|r| r.0.clone()).collect();
    roles.dedup();
    let views: [Vec<RoleView>; 2] = [
        roles.iter().map(|r| RoleView::new(&sides[0], r)).collect(),
        roles.iter().map(|r| RoleView::new(&sides[1], r)).collect(),
    ];
    let reqs: Vec<Requirement> = reqs_sorted
        .into_iter()
        .map(|(r, side, _, member, body)| {
            causes.push(Cause::Existential { role: r.clone(), side: side as u8 + 1, witness: member });
            Requirement { role: roles.iter().position(|x| *x == r).unwrap(), side, member, body, cause: causes.len() as u32 - 1 }
        })
        .collect();
    // per side and requirement: types containing the body
    let body_sets: Vec<FixedBitSet> = reqs
        .iter()
        .map(|q| {
            let ts = &sides[q.side];
            let mut s = FixedBitSet::with_capacity(ts.types.len());
            for u in 0..ts.types.len() {
                if ts.contains(u, q.body) {
                    s.insert(u);
                }
            }
            s
        })
        .collect();

    let mut history = vec![n1 * n2];
    let alive_count = |round: &[u16]| round.iter().filter(|&&r| r == ALIVE).count();
    history.push(alive_count(&round));
    let mut k: u16 = 0;
    loop {
        k += 1;
        if k == ALIVE {
            return Err(Error::ResourceLimit("too many elimination rounds".into()));
        }
        // rows[t1] = alive partners on side 2, cols[t2] = alive partners on side 1
        let mut rows = vec![FixedBitSet::with_capacity(n2); n1];
        let mut cols = vec![FixedBitSet::with_capacity(n1); n2];
        for t1 in 0..n1 {
            for t2 in 0..n2 {
                if round[t1 * n2 + t2] == ALIVE {
                    rows[t1].insert(t2);
                    cols[t2].insert(t1);
                }
            }
        }
        let mut memo: HashMap<(usize, usize, usize), bool> = HashMap::new();
        let mut kills: Vec<(usize, u32)> = Vec::new();
        for t1 in 0..n1 {
            for t2 in rows[t1].ones() {
                let t = [t1, t2];
                for (qi, q) in reqs.iter().enumerate() {
                    if !sides[q.side].contains(t[q.side], q.member) {
                        continue;
                    }
                    let (own, other) = (q.side, 1 - q.side);
                    let pv = views[own][q.role].profile[t[own]];
                    let qv = views[other][q.role].profile[t[other]];
                    let ok = *memo.entry((qi, pv, qv)).or_insert_with(|| {
                        let reach = &views[other][q.role].succ[qv];
                        let mut cands = views[own][q.role].succ[pv].clone();
                        cands.intersect_with(&body_sets[qi]);
                        let partners = if own == 0 { &rows } else { &cols };
                        cands.ones().any(|u| !partners[u].is_disjoint(reach))
                    });
                    if !ok {
                        kills.push((t1 * n2 + t2, q.cause));
                        break;
                    }
                }
            }
        }
        if kills.is_empty() {
            break;
        }
        for (i, c) in kills {
            round[i] = k;
            cause[i] = c;
        }
        history.push(alive_count(&round));
    }
    let trace = EliminationTrace { sides, sigma: sigma.clone(), c1, c2, roles, views, round, cause, causes, history };
    Ok((trace.jointly_consistent(), trace))
}

/// Builds an interpolant from the elimination trace: a concept `I` over Σ
/// true at every element of `c1` and false at every element of `c2`. Each
/// eliminated mosaic `(t1, t2)` gets a concept true at `t1` and false at
/// `t2`, of role depth at most its round, and the top level combines those
/// over the types of `c1` and `c2`.
pub fn interpolant_from_trace(trace: &EliminationTrace) -> Result<Concept> {
    if trace.jointly_consistent() {
        return Err(Error::Precondition("the concepts are jointly consistent; no interpolant exists".into()));
    }
    let mut memo: HashMap<(usize, usize), Concept> = HashMap::new();
    let t1s = trace.sides[0].with(&trace.c1);
    let t2s = trace.sides[1].with(&trace.c2);
    let mut ors = Vec::new();
    for &t1 in &t1s {
        let mut ands = Vec::new();
        for &t2 in &t2s {
            ands.push(separator(trace, t1, t2, &mut memo)?);
        }
        ors.push(Concept::and(ands));
    }
    Ok(simplify(&Concept::or(ors)))
}

fn separator(trace: &EliminationTrace, t1: usize, t2: usize, memo: &mut HashMap<(usize, usize), Concept>) -> Result<Concept> {
    if let Some(c) = memo.get(&(t1, t2)) {
        return Ok(c.clone());
    }
    let round = trace
        .round_of(t1, t2)
        .ok_or_else(|| Error::Verification(format!("mosaic ({}, {}) survived but is needed", t1, t2)))?;
    let out = match trace.cause_of(t1, t2).expect("eliminated mosaics have a cause") {
        Cause::Atomic(a) => {
            let pos = Concept::atom(a.clone());
            let m = trace.sides[0].closure.find(&pos).expect("atomic causes are closure members");
            if trace.sides[0].contains(t1, m) {
                pos
            } else {
                Concept::not(pos)
            }
        }
        Cause::Existential { role, side, witness } => {
            let (own, other) = if *side == 1 { (0, 1) } else { (1, 0) };
            let body = match trace.sides[own].closure.kinds[*witness] {
                Kind::Exists { body, .. } => body,
                _ => unreachable!("witness is an existential"),
            };
            let ri = trace.roles.iter().position(|r| r == role).expect("Σ role");
            let t = [t1, t2];
            let (v_own, v_other) = (&trace.views[own][ri], &trace.views[other][ri]);
            debug_assert!(v_own.index.is_some());
            let with_c: Vec<usize> = v_own.successors(t[own]).ones().filter(|&u| trace.sides[own].contains(u, body)).collect();
            let any: Vec<usize> = v_other.successors(t[other]).ones().collect();
            let mut sep = |x: usize, y: usize| -> Result<Concept> {
                match trace.round_of(x, y) {
                    Some(k) if k < round => separator(trace, x, y, memo),
                    _ => Err(Error::Verification(format!("successor mosaic ({}, {}) not eliminated before round {}", x, y, round))),
                }
            };
            if *side == 1 {
                // some r.(or over T1 of and over T2)
                let mut ors = Vec::new();
                for &a in &with_c {
                    let mut ands = Vec::new();
                    for &b in &any {
                        ands.push(sep(a, b)?);
                    }
                    ors.push(Concept::and(ands));
                }
                Concept::exists_n(role.clone(), Concept::or(ors))
            } else {
                // all r.(and over T2 of or over T1)
                let mut ands = Vec::new();
                for &b in &with_c {
                    let mut ors = Vec::new();
                    for &a in &any {
                        ors.push(sep(a, b)?);
                    }
                    ands.push(Concept::or(ors));
                }
                Concept::forall_n(role.clone(), Concept::and(ands))
            }
        }
    };
    let out = simplify(&out);
    memo.insert((t1, t2), out.clone());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reasoner::subsumes;
    use crate::syntax::{parse_concept, role_depth, sig_concept};

    fn c(s: &str) -> Concept {
        parse_concept(s).unwrap()
    }

    #[test]
    fn doctor_pair_is_not_jointly_consistent() {
        let sigma = Signature::from_lists(&["Doctor"], &["child"], &[]);
        let c1 = c("some child.top and all child.Doctor");
        let c2 = c("not some child.(Doctor or Rich)");
        let e = Ontology::new();
        for (ok, trace) in [joint_consistency_alc(&e, &c1, &c2, &sigma).unwrap(), joint_consistency_split(&e, &c1, &e, &c2, &sigma).unwrap()] {
            assert!(!ok);
            let i = interpolant_from_trace(&trace).unwrap();
            assert!(sig_concept(&i).is_subset(&sigma));
            assert!(subsumes(&e, &c1, &i).unwrap());
            assert!(subsumes(&e, &i, &Concept::not(c2.clone())).unwrap());
            assert!(role_depth(&i) <= trace.rounds());
        }
    }

    #[test]
    fn empty_signature_is_consistent() {
        let (ok, _) = joint_consistency_alc(&Ontology::new(), &c("A"), &c("B"), &Signature::new()).unwrap();
        assert!(ok);
    }

    #[test]
    fn unsatisfiable_side_is_inconsistent() {
        let (ok, trace) = joint_consistency_alc(&Ontology::new(), &c("A and not A"), &c("B"), &Signature::new()).unwrap();
        assert!(!ok);
        assert!(interpolant_from_trace(&trace).unwrap().is_bottom());
    }

    #[test]
    fn round_zero_contribution_is_a_literal() {
        let sigma = Signature::from_lists(&["A"], &[], &[]);
        let (ok, trace) = joint_consistency_alc(&Ontology::new(), &c("A and B"), &c("not A"), &sigma).unwrap();
        assert!(!ok);
        assert_eq!(trace.rounds(), 0);
        assert!(matches!(trace.cause_of(0, 0), None | Some(Cause::Atomic(_))));
        assert_eq!(interpolant_from_trace(&trace).unwrap().to_string(), "A");
    }
}
