use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite interpretation over the domain `0..size`. Names not listed are
/// interpreted as empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub size: usize,
    pub concepts: BTreeMap<String, BTreeSet<usize>>,
    pub roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<String, usize>,
}

impl Interpretation {
    pub fn new(size: usize) -> Self {
        Interpretation { size, ..Default::default() }
    }

    pub fn add_concept(&mut self, a: &str, d: usize) {
        self.concepts.entry(a.to_string()).or_default().insert(d);
    }
    pub fn add_role(&mut self, r: &str, d: usize, e: usize) {
        self.roles.entry(r.to_string()).or_default().insert((d, e));
    }
    pub fn set_individual(&mut self, a: &str, d: usize) {
        self.individuals.insert(a.to_string(), d);
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::Precondition("interpretation domain is empty".into()));
        }
        let bad = |d: usize| d >= self.size;
        for (a, ext) in &self.concepts {
            if ext.iter().any(|&d| bad(d)) {
                return Err(Error::Precondition(format!("concept {} mentions an element outside the domain", a)));
            }
        }
        for (r, ext) in &self.roles {
            if ext.iter().any(|&(d, e)| bad(d) || bad(e)) {
                return Err(Error::Precondition(format!("role {} mentions an element outside the domain", r)));
            }
        }
        for (a, &d) in &self.individuals {
            if bad(d) {
                return Err(Error::Precondition(format!("individual {} is outside the domain", a)));
            }
        }
        Ok(())
    }

    /// Parses the line format written by `Display`:
    /// `domain N`, `concept A 0 2`, `role r 0,1 1,1`, `individual a 0`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Interpretation> {
        let mut i = Interpretation::default();
        let mut seen_domain = false;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Syntax { line: ln + 1, col: 1, message: m.to_string() };
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(&format!("bad element id {:?}", s)));
            let mut parts = line.split_whitespace();
            let kw = parts.next().unwrap();
            match kw {
                "domain" => {
                    i.size = num(parts.next().ok_or_else(|| err("missing domain size"))?)?;
                    seen_domain = true;
                }
                "concept" => {
                    let a = parts.next().ok_or_else(|| err("missing concept name"))?;
                    let ext = i.concepts.entry(a.to_string()).or_default();
                    for p in parts {
                        ext.insert(num(p)?);
                    }
                }
                "role" => {
                    let r = parts.next().ok_or_else(|| err("missing role name"))?;
                    let ext = i.roles.entry(r.to_string()).or_default();
                    for p in parts {
                        let (a, b) = p.split_once(',').ok_or_else(|| err(&format!("bad pair {:?}", p)))?;
                        ext.insert((num(a)?, num(b)?));
                    }
                }
                "individual" => {
                    let a = parts.next().ok_or_else(|| err("missing individual name"))?;
                    let d = num(parts.next().ok_or_else(|| err("missing element"))?)?;
                    i.individuals.insert(a.to_string(), d);
                }
                other => return Err(err(&format!("unknown line kind {:?}", other))),
            }
        }
        if !seen_domain {
            return Err(Error::Syntax { line: 1, col: 1, message: "missing domain line".into() });
        }
        i.validate()?;
        Ok(i)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.size)?;
        for (a, ext) in &self.concepts {
            write!(f, "concept {}", a)?;
            for d in ext {
                write!(f, " {}", d)?;
            }
            writeln!(f)?;
        }
        for (r, ext) in &self.roles {
            write!(f, "role {}", r)?;
            for (d, e) in ext {
                write!(f, " {},{}", d, e)?;
            }
            writeln!(f)?;
        }
        for (a, d) in &self.individuals {
            writeln!(f, "individual {} {}", a, d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut i = Interpretation::new(3);
        i.add_concept("A", 0);
        i.add_concept("A", 2);
        i.add_role("r", 0, 1);
        i.add_role("r", 1, 1);
        i.set_individual("a", 0);
        let text = i.to_string();
        assert_eq!(text, "domain 3\nconcept A 0 2\nrole r 0,1 1,1\nindividual a 0\n");
        assert_eq!(Interpretation::parse(&text).unwrap(), i);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Interpretation::parse("domain 2\nconcept A 5\n").is_err());
        assert!(Interpretation::parse("concept A 0\n").is_err());
    }
}
