//! Propositional answer-set programs with the here-and-there semantics,
//! forgetting, and uniform-interpolant checks.

mod forget;
mod semantics;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use forget::{check_forgetting_properties, forget_ht, is_uniform_interpolant, project, ForgettingReport};
pub use semantics::{answer_sets, entails_lp, ht_models, ht_models_over, reduct, HTPair, Relation, MAX_UNIVERSE};

pub type Atoms = BTreeSet<String>;

/// `head :- pbody, not nbody, not not nnbody.`; an empty head is a constraint.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LPRule {
    pub head: Atoms,
    pub pbody: Atoms,
    pub nbody: Atoms,
    pub nnbody: Atoms,
}

impl LPRule {
    pub fn new<S: AsRef<str>>(head: &[S], pbody: &[S], nbody: &[S], nnbody: &[S]) -> LPRule {
        let set = |xs: &[S]| xs.iter().map(|s| s.as_ref().to_string()).collect();
        LPRule { head: set(head), pbody: set(pbody), nbody: set(nbody), nnbody: set(nnbody) }
    }

    pub fn fact(a: &str) -> LPRule {
        LPRule { head: std::iter::once(a.to_string()).collect(), ..LPRule::default() }
    }

    pub fn atoms(&self) -> impl Iterator<Item = &String> {
        self.head.iter().chain(&self.pbody).chain(&self.nbody).chain(&self.nnbody)
    }

    pub fn is_positive(&self) -> bool {
        self.nbody.is_empty() && self.nnbody.is_empty()
    }

    fn body_len(&self) -> usize {
        self.pbody.len() + self.nbody.len() + self.nnbody.len()
    }
}

impl fmt::Display for LPRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<&str> = self.head.iter().map(String::as_str).collect();
        f.write_str(&head.join(" | "))?;
        if self.body_len() > 0 || self.head.is_empty() {
            let body: Vec<String> = self
                .pbody
                .iter()
                .cloned()
                .chain(self.nbody.iter().map(|a| format!("not {}", a)))
                .chain(self.nnbody.iter().map(|a| format!("not not {}", a)))
                .collect();
            if self.head.is_empty() {
                f.write_str(":-")?;
            } else {
                f.write_str(" :-")?;
            }
            if !body.is_empty() {
                write!(f, " {}", body.join(", "))?;
            }
        }
        f.write_str(".")
    }
}

/// A finite list of rules over a declared atom universe, which always
/// contains every atom the rules mention.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LPProgram {
    pub rules: Vec<LPRule>,
    pub atoms: Atoms,
}

impl LPProgram {
    pub fn new(rules: Vec<LPRule>) -> LPProgram {
        let atoms = rules.iter().flat_map(|r| r.atoms().cloned()).collect();
        LPProgram { rules, atoms }
    }

    /// Adds atoms to the universe without adding rules.
    pub fn with_atoms<S: AsRef<str>>(mut self, extra: impl IntoIterator<Item = S>) -> LPProgram {
        self.atoms.extend(extra.into_iter().map(|s| s.as_ref().to_string()));
        self
    }

    pub fn push(&mut self, r: LPRule) {
        self.atoms.extend(r.atoms().cloned());
        self.rules.push(r);
    }

    pub fn union(&self, other: &LPProgram) -> LPProgram {
        let mut p = self.clone();
        for r in &other.rules {
            p.push(r.clone());
        }
        p.atoms.extend(other.atoms.iter().cloned());
        p
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Atoms mentioned by some rule (the declared universe may be larger).
    pub fn signature(&self) -> Atoms {
        self.rules.iter().flat_map(|r| r.atoms().cloned()).collect()
    }
}

impl fmt::Display for LPProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{}", r)?;
        }
        Ok(())
    }
}

pub fn atoms<S: AsRef<str>>(xs: &[S]) -> Atoms {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, col, message: message.into() }
}

fn is_atom(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Reads rules of the form `a | b :- c, not d, not not e.`, one or more per
/// line. `%` starts a comment.
pub fn parse_program(text: &str) -> Result<LPProgram> {
    let mut p = LPProgram::default();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("");
        let mut offset = 0;
        for chunk in line.split_inclusive('.') {
            let col = offset + 1 + (chunk.len() - chunk.trim_start().len());
            offset += chunk.len();
            let t = chunk.trim();
            if t.is_empty() {
                continue;
            }
            let Some(body) = t.strip_suffix('.') else {
                return Err(syntax(ln + 1, col, format!("rule \"{}\" lacks a final \".\"", t)));
            };
            p.push(parse_rule(body, ln + 1, col)?);
        }
    }
    Ok(p)
}

fn parse_rule(text: &str, line: usize, col: usize) -> Result<LPRule> {
    let (head, body) = match text.split_once(":-") {
        Some((h, b)) => (h.trim(), Some(b.trim())),
        None => (text.trim(), None),
    };
    let mut r = LPRule::default();
    if !head.is_empty() {
        for a in head.split('|').map(str::trim) {
            if !is_atom(a) {
                return Err(syntax(line, col, format!("bad head atom \"{}\"", a)));
            }
            r.head.insert(a.to_string());
        }
    } else if body.is_none() {
        return Err(syntax(line, col, "empty rule"));
    }
    for lit in body.into_iter().flat_map(|b| b.split(',')).map(str::trim) {
        if lit.is_empty() {
            if body == Some("") {
                continue;
            }
            return Err(syntax(line, col, "empty body literal"));
        }
        let words: Vec<&str> = lit.split_whitespace().collect();
        let (set, a) = match words.as_slice() {
            [a] => (&mut r.pbody, *a),
            ["not", a] => (&mut r.nbody, *a),
            ["not", "not", a] => (&mut r.nnbody, *a),
            _ => return Err(syntax(line, col, format!("bad body literal \"{}\"", lit))),
        };
        if !is_atom(a) || a == "not" {
            return Err(syntax(line, col, format!("bad atom \"{}\"", a)));
        }
        set.insert(a.to_string());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "a | b :- c, not d, not not e.\n:- a, b.\nc.\nd :- not not d.\n";
        let p = parse_program(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
        assert_eq!(p.atoms, atoms(&["a", "b", "c", "d", "e"]));
    }

    #[test]
    fn several_rules_per_line_and_comments() {
        let p = parse_program("a :- not b. b :- not a. % choice\n\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.rules[1], LPRule::new(&["b"], &[], &["a"], &[]));
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_program("a :- b"), Err(Error::Syntax { line: 1, .. })));
        assert!(parse_program("a :- not not not b.").is_err());
        assert!(parse_program("a :- b,, c.").is_err());
        assert!(matches!(parse_program("a.\nb | :- c."), Err(Error::Syntax { line: 2, .. })));
    }

    #[test]
    fn empty_constraint() {
        let p = parse_program(":- .").unwrap();
        assert_eq!(p.rules[0], LPRule::default());
        assert_eq!(p.to_string(), ":-.\n");
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }
}
