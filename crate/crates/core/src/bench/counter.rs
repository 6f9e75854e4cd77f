use rand::Rng;

use crate::error::{Error, Result};
use crate::syntax::{Concept, Inclusion, Ontology, Signature};

pub const DEFAULT_COUNTER_CAP: usize = 8;

fn bit(i: usize) -> Concept {
    Concept::name(&format!("X{}", i))
}

fn bar(i: usize) -> Concept {
    Concept::name(&format!("X{}_bar", i))
}

/// `some r.c and some s.c`
fn both(c: Concept) -> Concept {
    Concept::and2(Concept::exists("r", c.clone()), Concept::exists("s", c))
}

/// The n-bit binary counter ontology over `X1..Xn`, `X1_bar..Xn_bar` and the
/// signature `{A1, A2, B, r, s}`.
pub fn counter_ontology(n: usize) -> Result<(Ontology, Signature)> {
    if n == 0 {
        return Err(Error::Precondition("counter width must be at least 1".into()));
    }
    if n > DEFAULT_COUNTER_CAP {
        return Err(Error::ResourceLimit(format!("counter width {} exceeds cap {}", n, DEFAULT_COUNTER_CAP)));
    }
    let mut o = Ontology::new();
    let all_bars = Concept::and((1..=n).map(bar).collect());
    o.add(Inclusion::new(Concept::name("A1"), all_bars.clone()));
    o.add(Inclusion::new(Concept::name("A2"), all_bars));
    for i in 1..=n {
        for j in 1..i {
            o.add(Inclusion::new(both(Concept::and2(bar(i), bar(j))), bar(i)));
            o.add(Inclusion::new(both(Concept::and2(bit(i), bar(j))), bit(i)));
        }
    }
    for i in 1..=n {
        let lower: Vec<Concept> = (1..i).rev().map(bit).collect();
        let mut up = vec![bar(i)];
        up.extend(lower.iter().cloned());
        o.add(Inclusion::new(both(Concept::and(up)), bit(i)));
        let mut down = vec![bit(i)];
        down.extend(lower);
        o.add(Inclusion::new(both(Concept::and(down)), bar(i)));
    }
    o.add(Inclusion::new(Concept::and((1..=n).map(bit).collect()), Concept::name("B")));
    Ok((o, Signature::from_lists(&["A1", "A2", "B"], &["r", "s"], &[])))
}

/// `C_0 = {A1, A2}`, `C_{i+1} = {some r.C and some s.C' | C, C' in C_i}`.
pub fn counter_goal_family(i: usize) -> Result<Vec<Concept>> {
    if i > 4 {
        return Err(Error::ResourceLimit(format!("C_{} has 2^(2^{}) members; sample instead", i, i)));
    }
    let mut cur = vec![Concept::name("A1"), Concept::name("A2")];
    for _ in 0..i {
        let mut next = Vec::with_capacity(cur.len() * cur.len());
        for a in &cur {
            for b in &cur {
                next.push(Concept::and2(Concept::exists("r", a.clone()), Concept::exists("s", b.clone())));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// A uniformly random member of `C_i`, without materialising the family.
pub fn sample_goal<R: Rng>(i: usize, rng: &mut R) -> Concept {
    if i == 0 {
        return if rng.gen_bool(0.5) { Concept::name("A1") } else { Concept::name("A2") };
    }
    let a = sample_goal(i - 1, rng);
    let b = sample_goal(i - 1, rng);
    Concept::and2(Concept::exists("r", a), Concept::exists("s", b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::role_depth;

    #[test]
    fn axiom_counts() {
        let (o, s) = counter_ontology(1).unwrap();
        // 2 init, no keep, 1 flip-1, 1 flip-2, 1 finish
        assert_eq!(o.len(), 5);
        assert_eq!(s, Signature::from_lists(&["A1", "A2", "B"], &["r", "s"], &[]));
        for n in 1..=6 {
            let (o, _) = counter_ontology(n).unwrap();
            // 2 + 2 * n(n-1)/2 + 2n + 1
            assert_eq!(o.len(), 3 + n * (n - 1) + 2 * n);
        }
        assert!(counter_ontology(0).is_err());
    }

    #[test]
    fn goal_family_sizes() {
        for i in 0..=3 {
            let f = counter_goal_family(i).unwrap();
            assert_eq!(f.len(), 1usize << (1usize << i));
            assert!(f.iter().all(|c| role_depth(c) == i));
            let distinct: std::collections::BTreeSet<_> = f.iter().collect();
            assert_eq!(distinct.len(), f.len());
        }
        let f1 = counter_goal_family(1).unwrap();
        assert_eq!(f1[1].to_string(), "some r.A1 and some s.A2");
    }
}
