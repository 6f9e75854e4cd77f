use crate::error::Result;
use crate::reasoner::Reasoner;
use crate::syntax::{simplify, Concept, Node, Ontology};

/// Above this size the reasoner-guided pass is skipped.
pub const TIDY_CAP: usize = 400;

/// Equivalence-preserving clean-up of an extracted concept: syntactic
/// simplification, then dropping conjuncts and disjuncts one at a time as
/// long as the reasoner confirms equivalence under `o`.
pub fn tidy(o: &Ontology, c: &Concept) -> Result<Concept> {
    let mut cur = simplify(c);
    if cur.size() > TIDY_CAP {
        return Ok(cur);
    }
    let mut r = Reasoner::new(o)?;
    'outer: loop {
        let mut paths = Vec::new();
        junction_children(&cur, &mut Vec::new(), &mut paths);
        for p in paths {
            let cand = simplify(&remove_at(&cur, &p));
            if cand.size() < cur.size() && r.subsumes(&cur, &cand)? && r.subsumes(&cand, &cur)? {
                cur = cand;
                continue 'outer;
            }
        }
        return Ok(cur);
    }
}

fn junction_children(c: &Concept, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let junction = matches!(&**c, Node::And(_) | Node::Or(_));
    for (i, k) in c.children().into_iter().enumerate() {
        path.push(i);
        if junction {
            out.push(path.clone());
        }
        junction_children(k, path, out);
        path.pop();
    }
}

fn remove_at(c: &Concept, path: &[usize]) -> Concept {
    let kids: Vec<Concept> = c.children().into_iter().cloned().collect();
    if path.len() == 1 {
        let rest: Vec<Concept> = kids.into_iter().enumerate().filter(|(i, _)| *i != path[0]).map(|(_, k)| k).collect();
        return match &**c {
            Node::And(_) => Concept::and(rest),
            _ => Concept::or(rest),
        };
    }
    let mut kids = kids;
    kids[path[0]] = remove_at(&kids[path[0]], &path[1..]);
    c.with_children(kids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_concept;

    #[test]
    fn factors_out_a_case_split() {
        let c = parse_concept("(D and some child.D) or (not D and some child.D)").unwrap();
        assert_eq!(tidy(&Ontology::new(), &c).unwrap().to_string(), "some child.D");
    }

    #[test]
    fn uses_the_ontology() {
        let o = crate::syntax::parse_ontology("A [= B.").unwrap();
        let c = parse_concept("A and B").unwrap();
        assert_eq!(tidy(&o, &c).unwrap().to_string(), "A");
    }
}
