//! Text grammar for polynomials: identifiers for variables, `^` for
//! non-negative integer powers, optional `*` between factors, rationals as
//! `a/b`, parentheses, unary minus. Example: `y^2 + x*z^3`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::{Polynomial, VarContext};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(src[start..i].parse().unwrap())));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
                continue;
            }
            other => return Err(Error::Parse { pos: start, msg: format!("unexpected character `{other}`") }),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<VarContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.offset(), msg: "exponent too large".into() })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => {
                            self.pos += 1;
                            q /= Rational::from_integer(d);
                        }
                        _ => return self.err("expected nonzero integer denominator"),
                    }
                }
                Ok(Polynomial::constant(self.ctx, q))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                match self.ctx.index_of(&name) {
                    Ok(v) => Ok(Polynomial::var(self.ctx, v)),
                    Err(_) => Err(Error::Parse { pos: at, msg: format!("unknown variable `{name}`") }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

impl Polynomial {
    pub fn parse(src: &str, ctx: &Arc<VarContext>) -> Result<Polynomial> {
        let toks = lex(src)?;
        let mut p = Parser { toks, pos: 0, end: src.len(), ctx };
        if p.peek().is_none() {
            return p.err("empty polynomial");
        }
        let r = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(r)
    }
}

/// Parses a comma-separated list of polynomials (commas inside parentheses are
/// not separators).
pub fn parse_list(src: &str, ctx: &Arc<VarContext>) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(parse_at(&src[start..i], start, ctx)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(parse_at(&src[start..], start, ctx)?);
    Ok(out)
}

fn parse_at(src: &str, offset: usize, ctx: &Arc<VarContext>) -> Result<Polynomial> {
    Polynomial::parse(src, ctx).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + offset, msg },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let c = ctx();
        let p = Polynomial::parse("x*z^3 + y^2", &c).unwrap();
        assert_eq!(p.to_string(), "x*z^3 + y^2");
        let q = Polynomial::parse("y^2 - x^2(x+1)", &c).unwrap();
        assert_eq!(q.to_string(), "-x^3 - x^2 + y^2");
        let r = Polynomial::parse("1/2 x - 3/4", &c).unwrap();
        assert_eq!(r.to_string(), "1/2*x - 3/4");
        assert_eq!(Polynomial::parse("2 y", &c).unwrap().to_string(), "2*y");
    }

    #[test]
    fn reports_positions() {
        let c = ctx();
        assert_eq!(
            Polynomial::parse("y^2 + w", &c),
            Err(Error::Parse { pos: 6, msg: "unknown variable `w`".into() })
        );
        assert!(matches!(Polynomial::parse("x^", &c), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Polynomial::parse("(x", &c), Err(Error::Parse { .. })));
        assert!(matches!(Polynomial::parse("1/0", &c), Err(Error::Parse { .. })));
    }

    #[test]
    fn list_parsing() {
        let c = ctx();
        let l = parse_list("z^6, x*z^3", &c).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[1].to_string(), "x*z^3");
        assert!(matches!(parse_list("x, y +", &c), Err(Error::Parse { pos: 6, .. })));
    }
}
