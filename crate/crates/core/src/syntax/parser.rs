use super::concept::{Concept, Inclusion, Node};
use super::ontology::Ontology;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Sub,
    Eq,
    Dot,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("\"{}\"", s),
        Tok::Sub => "\"[=\"".into(),
        Tok::Eq => "\"=\"".into(),
        Tok::Dot => "\".\"".into(),
        Tok::LParen => "\"(\"".into(),
        Tok::RParen => "\")\"".into(),
        Tok::LBrace => "\"{\"".into(),
        Tok::RBrace => "\"}\"".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, n: usize, i: &mut usize, col: &mut usize| {
            out.push(Token { tok, line: l0, col: c0 });
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '[' if chars.get(i + 1) == Some(&'=') => push(Tok::Sub, 2, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
            }
            other => {
                return Err(Error::Syntax { line, col, message: format!("unexpected character {:?}", other) })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

const KEYWORDS: &[&str] = &["top", "bot", "not", "and", "or", "some", "all", "nu"];

/// `X` alone or `X` followed by a name starting with a letter.
pub fn is_var_name(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty() && b[0] == b'X' && (b.len() == 1 || b[1].is_ascii_alphabetic())
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }
    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Syntax { line: t.line, col: t.col, message: msg.into() })
    }
    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        self.err(format!("unexpected {}, expected {}", describe(self.peek()), wanted))
    }
    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }
    fn expect(&mut self, t: Tok, wanted: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }
    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(what),
        }
    }

    fn concept(&mut self) -> Result<Concept> {
        let mut parts = vec![self.conj()?];
        while self.is_kw("or") {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Concept::or(parts))
    }

    fn conj(&mut self) -> Result<Concept> {
        let mut parts = vec![self.unary()?];
        while self.is_kw("and") {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(Concept::and(parts))
    }

    fn unary(&mut self) -> Result<Concept> {
        let tok = self.peek().clone();
        match tok {
            Tok::Ident(s) => match s.as_str() {
                "top" => {
                    self.bump();
                    Ok(Concept::top())
                }
                "bot" => {
                    self.bump();
                    Ok(Concept::bottom())
                }
                "not" => {
                    self.bump();
                    Ok(Concept::not(self.unary()?))
                }
                "some" | "all" => {
                    self.bump();
                    let r = self.name("a role name")?;
                    if is_var_name(&r) {
                        return self.err(format!("{} is a variable, expected a role name", r));
                    }
                    self.expect(Tok::Dot, "\".\"")?;
                    let c = self.unary()?;
                    Ok(if s == "some" { Concept::exists(&r, c) } else { Concept::forall(&r, c) })
                }
                "nu" => {
                    self.bump();
                    let x = self.name("a variable")?;
                    if !is_var_name(&x) {
                        return self.err(format!("{} is not a variable name (variables start with X)", x));
                    }
                    self.expect(Tok::Dot, "\".\"")?;
                    let body = self.concept()?;
                    Ok(Concept::nu(&x, body))
                }
                "and" | "or" => self.unexpected("a concept"),
                _ => {
                    self.bump();
                    if is_var_name(&s) {
                        Ok(Concept::var(&s))
                    } else {
                        Ok(Concept::name(&s))
                    }
                }
            },
            Tok::LBrace => {
                self.bump();
                let a = self.name("an individual name")?;
                self.expect(Tok::RBrace, "\"}\"")?;
                Ok(Concept::nominal(&a))
            }
            Tok::LParen => {
                self.bump();
                let c = self.concept()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(c)
            }
            _ => self.unexpected("a concept"),
        }
    }
}

/// Checks that every variable is bound and occurs under an even number of negations.
pub fn check_variables(c: &Concept) -> Result<()> {
    fn go(c: &Concept, env: &mut Vec<(String, bool)>, positive: bool) -> Result<()> {
        match &**c {
            Node::Var(x) => match env.iter().rev().find(|(n, _)| n.as_str() == &**x) {
                None => Err(Error::UnboundVariable(x.to_string())),
                Some((_, pol)) if *pol != positive => Err(Error::NegativeVariable(x.to_string())),
                Some(_) => Ok(()),
            },
            Node::Not(d) => go(d, env, !positive),
            Node::Nu(x, d) => {
                env.push((x.to_string(), positive));
                let r = go(d, env, positive);
                env.pop();
                r
            }
            _ => {
                for k in c.children() {
                    go(k, env, positive)?;
                }
                Ok(())
            }
        }
    }
    go(c, &mut Vec::new(), true)
}

pub fn parse_ontology(text: &str) -> Result<Ontology> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut o = Ontology::new();
    while *p.peek() != Tok::Eof {
        let lhs = p.concept()?;
        let equality = match p.peek() {
            Tok::Sub => false,
            Tok::Eq => true,
            _ => return p.unexpected("\"[=\" or \"=\""),
        };
        p.bump();
        let rhs = p.concept()?;
        p.expect(Tok::Dot, "\".\" ending the axiom")?;
        check_variables(&lhs)?;
        check_variables(&rhs)?;
        o.add(Inclusion::new(lhs.clone(), rhs.clone()));
        if equality {
            o.add(Inclusion::new(rhs, lhs));
        }
    }
    Ok(o)
}

pub fn parse_concept(text: &str) -> Result<Concept> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let c = p.concept()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of input");
    }
    check_variables(&c)?;
    Ok(c)
}

/// Parses a comma or whitespace separated symbol list.
pub fn split_names(text: &str) -> Vec<String> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn car_axiom() {
        let o = parse_ontology("Car [= some hasPart.PrimeMover.").unwrap();
        assert_eq!(o.len(), 1);
        let ax = &o.axioms()[0];
        assert_eq!(ax.lhs, Concept::name("Car"));
        assert_eq!(ax.rhs, Concept::exists("hasPart", Concept::name("PrimeMover")));
    }

    #[test]
    fn empty_input() {
        assert!(parse_ontology("").unwrap().is_empty());
        assert!(parse_ontology("  # nothing here\n").unwrap().is_empty());
    }

    #[test]
    fn dangling_and() {
        match parse_ontology("A [= and") {
            Err(Error::Syntax { line: 1, col: 6, message }) => assert!(message.contains("\"and\"")),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn precedence() {
        let c = parse_concept("A and B or not C and some r.D").unwrap();
        let want = Concept::or2(
            Concept::and2(Concept::name("A"), Concept::name("B")),
            Concept::and2(Concept::not(Concept::name("C")), Concept::exists("r", Concept::name("D"))),
        );
        assert_eq!(c, want);
        let c = parse_concept("A and B and C").unwrap();
        assert!(matches!(&*c, Node::And(cs) if cs.len() == 3));
        let c = parse_concept("(A and B) and C").unwrap();
        assert!(matches!(&*c, Node::And(cs) if cs.len() == 2));
    }

    #[test]
    fn equality_gives_two_axioms() {
        let o = parse_ontology("Mother = Woman and some hasChild.top.").unwrap();
        assert_eq!(o.len(), 2);
    }

    #[test]
    fn fixpoints() {
        let c = parse_concept("nu X. some r.X and A").unwrap();
        assert_eq!(c, Concept::nu("X", Concept::and2(Concept::exists("r", Concept::var("X")), Concept::name("A"))));
        assert_eq!(parse_concept("some r.X"), Err(Error::UnboundVariable("X".into())));
        assert_eq!(parse_concept("nu X. not X"), Err(Error::NegativeVariable("X".into())));
        assert!(parse_concept("nu X. not not X").is_ok());
        // names like X1 are ordinary concept names
        assert_eq!(parse_concept("X1").unwrap(), Concept::name("X1"));
        assert_eq!(parse_concept("Xv1").unwrap_err(), Error::UnboundVariable("Xv1".into()));
    }

    #[test]
    fn nominals_and_comments() {
        let o = parse_ontology("{a} [= A. # trailing\nB [= top.").unwrap();
        assert_eq!(o.axioms()[0].lhs, Concept::nominal("a"));
        assert_eq!(o.axioms()[1].rhs, Concept::top());
    }

    #[test]
    fn duplicates_up_to_order() {
        let o = parse_ontology("A [= B and C. A [= C and B.").unwrap();
        assert_eq!(o.len(), 1);
    }
}
