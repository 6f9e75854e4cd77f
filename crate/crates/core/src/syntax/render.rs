use super::concept::{Concept, Inclusion, Node};
use super::ontology::Ontology;

pub fn render_concept(c: &Concept) -> String {
    let mut s = String::new();
    write_concept(c, &mut s);
    s
}

fn write_concept(c: &Concept, out: &mut String) {
    match &**c {
        Node::Top => out.push_str("top"),
        Node::Bottom => out.push_str("bot"),
        Node::Name(n) | Node::Var(n) => out.push_str(n),
        Node::Nominal(a) => {
            out.push('{');
            out.push_str(a);
            out.push('}');
        }
        Node::Not(d) => {
            out.push_str("not ");
            write_operand(d, out);
        }
        Node::Exists(r, d) | Node::Forall(r, d) => {
            out.push_str(if matches!(&**c, Node::Exists(..)) { "some " } else { "all " });
            out.push_str(r);
            out.push('.');
            write_operand(d, out);
        }
        Node::Nu(x, d) => {
            out.push_str("nu ");
            out.push_str(x);
            out.push_str(". ");
            write_concept(d, out);
        }
        Node::And(cs) => {
            for (i, k) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                write_wrapped(k, matches!(&**k, Node::And(_) | Node::Or(_) | Node::Nu(..)), out);
            }
        }
        Node::Or(cs) => {
            for (i, k) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(" or ");
                }
                write_wrapped(k, matches!(&**k, Node::Or(_) | Node::Nu(..)), out);
            }
        }
    }
}

fn write_operand(c: &Concept, out: &mut String) {
    write_wrapped(c, matches!(&**c, Node::And(_) | Node::Or(_) | Node::Nu(..)), out)
}

fn write_wrapped(c: &Concept, paren: bool, out: &mut String) {
    if paren {
        out.push('(');
        write_concept(c, out);
        out.push(')');
    } else {
        write_concept(c, out);
    }
}

pub fn render_inclusion(ax: &Inclusion) -> String {
    format!("{} [= {}.", render_concept(&ax.lhs), render_concept(&ax.rhs))
}

pub fn render_ontology(o: &Ontology) -> String {
    let mut s = String::new();
    for ax in o.iter() {
        s.push_str(&render_inclusion(ax));
        s.push('\n');
    }
    s
}
