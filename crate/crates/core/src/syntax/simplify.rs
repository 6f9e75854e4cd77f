use std::collections::HashMap;

use super::concept::{Concept, Node};
use super::ops::substitute_var;

/// Equivalence-preserving clean-up: constant propagation, flattening,
/// idempotence, complementary literals, absorption, `some r.bot` and
/// `all r.top`, vacuous binders and fixpoint folding
/// (`some r.(nu X. some r.X)` becomes `nu X. some r.X`).
pub fn simplify(c: &Concept) -> Concept {
    let mut memo = HashMap::new();
    simp(c, &mut memo)
}

fn addr(c: &Concept) -> usize {
    c.node() as *const Node as usize
}

fn simp(c: &Concept, memo: &mut HashMap<usize, Concept>) -> Concept {
    if let Some(r) = memo.get(&addr(c)) {
        return r.clone();
    }
    let r = match &**c {
        Node::Top | Node::Bottom | Node::Name(_) | Node::Nominal(_) | Node::Var(_) => c.clone(),
        Node::Not(d) => {
            let d = simp(d, memo);
            match &*d {
                Node::Top => Concept::bottom(),
                Node::Bottom => Concept::top(),
                Node::Not(e) => e.clone(),
                _ => Concept::not(d),
            }
        }
        Node::And(cs) => junction(cs.iter().map(|k| simp(k, memo)).collect(), true),
        Node::Or(cs) => junction(cs.iter().map(|k| simp(k, memo)).collect(), false),
        Node::Exists(r, d) => {
            let d = simp(d, memo);
            if d.is_bottom() {
                Concept::bottom()
            } else {
                Concept::exists_n(r.clone(), d)
            }
        }
        Node::Forall(r, d) => {
            let d = simp(d, memo);
            if d.is_top() {
                Concept::top()
            } else {
                Concept::forall_n(r.clone(), d)
            }
        }
        Node::Nu(x, d) => {
            let d = simp(d, memo);
            if !free_in(&d, x) {
                d
            } else {
                Concept::nu_n(x.clone(), d)
            }
        }
    };
    let r = fold(r);
    memo.insert(addr(c), r.clone());
    r
}

fn is_complement(a: &Concept, b: &Concept) -> bool {
    matches!(&**b, Node::Not(x) if x == a) || matches!(&**a, Node::Not(x) if x == b)
}

fn junction(kids: Vec<Concept>, conj: bool) -> Concept {
    let (unit, zero) = if conj { (Concept::top(), Concept::bottom()) } else { (Concept::bottom(), Concept::top()) };
    let mut flat: Vec<Concept> = Vec::new();
    for k in kids {
        let same = matches!((&*k, conj), (Node::And(_), true) | (Node::Or(_), false));
        let parts = if same { k.children().into_iter().cloned().collect() } else { vec![k] };
        for p in parts {
            if p == unit || flat.contains(&p) {
                continue;
            }
            if p == zero || flat.iter().any(|q| is_complement(q, &p)) {
                return zero;
            }
            flat.push(p);
        }
    }
    // absorption: drop a dual junction that already contains one of our members
    let absorbed: Vec<bool> = flat
        .iter()
        .map(|k| {
            let dual = matches!((&**k, conj), (Node::Or(_), true) | (Node::And(_), false));
            dual && k.children().iter().any(|x| flat.iter().any(|y| !y.ptr_eq(k) && y == *x))
        })
        .collect();
    let mut out: Vec<Concept> = flat.into_iter().zip(absorbed).filter(|(_, a)| !a).map(|(k, _)| k).collect();
    match out.len() {
        0 => unit,
        1 => out.pop().unwrap(),
        _ => {
            if conj {
                Concept::new(Node::And(out))
            } else {
                Concept::new(Node::Or(out))
            }
        }
    }
}

/// Replaces `c` by a fixpoint `nu X. B` occurring in it when `c` is exactly
/// one unfolding `B[X := nu X. B]`.
fn fold(c: Concept) -> Concept {
    if matches!(&*c, Node::Nu(..)) {
        return c;
    }
    let mut nus = Vec::new();
    for k in c.children() {
        collect_nus(k, 2, &mut nus);
    }
    for n in nus {
        if let Node::Nu(x, body) = &*n {
            if substitute_var(body, x, &n) == c {
                return n;
            }
        }
    }
    c
}

fn collect_nus(c: &Concept, budget: usize, out: &mut Vec<Concept>) {
    if let Node::Nu(..) = &**c {
        out.push(c.clone());
        return;
    }
    if budget == 0 {
        return;
    }
    for k in c.children() {
        collect_nus(k, budget - 1, out);
    }
}

/// Whether variable `x` occurs free.
pub fn free_in(c: &Concept, x: &str) -> bool {
    match &**c {
        Node::Var(y) => &**y == x,
        Node::Nu(y, _) if &**y == x => false,
        _ => c.children().into_iter().any(|k| free_in(k, x)),
    }
}
