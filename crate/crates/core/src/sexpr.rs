//! Minimal s-expression reader used by the term and formula syntaxes.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

pub fn parse(text: &str) -> Result<SExpr> {
    let tokens = tokenize(text);
    let mut pos = 0;
    let expr = parse_at(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::parse(1, format!("trailing input `{}`", tokens[pos])));
    }
    Ok(expr)
}

fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
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

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<SExpr> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::parse(1, "unexpected end of expression"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(parse_at(tokens, pos)?),
                    None => return Err(Error::parse(1, "unbalanced parentheses")),
                }
            }
        }
        ")" => Err(Error::parse(1, "unexpected `)`")),
        atom => Ok(SExpr::Atom(atom.to_string())),
    }
}

/// Parses `v<digits>` as a variable index.
pub fn variable(atom: &str) -> Option<usize> {
    atom.strip_prefix('v')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_lists() {
        let e = parse("(and (eq v0 v1) (not (eq (^ v0 v1) v2)))").unwrap();
        match e {
            SExpr::List(items) => assert_eq!(items.len(), 3),
            _ => panic!(),
        }
        assert!(parse("(a b").is_err());
        assert!(parse("a b").is_err());
        assert_eq!(variable("v12"), Some(12));
        assert_eq!(variable("v"), None);
        assert_eq!(variable("x1"), None);
    }
}
