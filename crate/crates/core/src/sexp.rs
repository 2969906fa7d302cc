//! Minimal s-expression reader and printer used by every term grammar.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into())
    }

    pub fn list(items: Vec<Sexp>) -> Sexp {
        Sexp::List(items)
    }

    /// A list whose first element is the atom `head`.
    pub fn tagged(head: &str, mut rest: Vec<Sexp>) -> Sexp {
        rest.insert(0, Sexp::atom(head));
        Sexp::List(rest)
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a) => Some(a),
            Sexp::List(_) => None,
        }
    }

    /// Splits `(head args...)` into head and args.
    pub fn as_tagged(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items) => match items.first() {
                Some(Sexp::Atom(h)) => Some((h.as_str(), &items[1..])),
                _ => None,
            },
            Sexp::Atom(_) => None,
        }
    }

    pub fn expect_tagged(&self, head: &str) -> Result<&[Sexp]> {
        match self.as_tagged() {
            Some((h, args)) if h == head => Ok(args),
            _ => Err(Error::Parse(format!("expected ({head} ...), found {self}"))),
        }
    }

    pub fn parse_usize(&self) -> Result<usize> {
        self.as_atom()
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected a natural number, found {self}")))
    }

    pub fn parse_u64(&self) -> Result<u64> {
        self.as_atom()
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected a natural number, found {self}")))
    }

    pub fn parse_i64(&self) -> Result<i64> {
        self.as_atom()
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected an integer, found {self}")))
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a) => write!(f, "{a}"),
            Sexp::List(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Sexp> {
    let tokens = tokenize(src);
    let mut pos = 0;
    let sx = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input after {sx}")));
    }
    Ok(sx)
}

fn tokenize(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in src.chars() {
        match c {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(c.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    None => return Err(Error::Parse("unbalanced '('".into())),
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        a => Ok(Sexp::Atom(a.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for s in ["0", "(+)", "(+ (g (+) 0) (g 0 1))", "(cl (+ (g (+) 0)) (cl (+)))"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(parse("(+ (g 0 1)").is_err());
        assert!(parse("(+))").is_err());
        assert!(parse("").is_err());
    }
}
