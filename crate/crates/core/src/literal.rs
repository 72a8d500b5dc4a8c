//! Number literals: integers, `p/q`, arithmetic with `sqrt(d)`,
//! continued-fraction literals `[a0; a1, (b1,…,bl)^w]`, and the names `phi`,
//! `e` and `word:<universal-14|universal-45|spiked>`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::contfrac::{expand, ContinuedFraction};
use crate::exact::{Exact, QuadraticSurd};
use crate::spectrum::euler;
use crate::words::{word_to_alpha, WordGenerator};
use crate::{Error, Result};

/// A parsed number: exact when it lives in `Q` or `Q(√d)`, otherwise a
/// digit stream.
#[derive(Clone, Debug)]
pub enum Literal {
    Exact(Exact),
    Stream(ContinuedFraction),
}

impl Literal {
    pub fn exact(&self) -> Option<&Exact> {
        match self {
            Literal::Exact(x) => Some(x),
            Literal::Stream(_) => None,
        }
    }

    pub fn to_cf(&self) -> ContinuedFraction {
        match self {
            Literal::Exact(x) => expand(x),
            Literal::Stream(cf) => cf.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Literal::Exact(x) => x.to_f64(),
            Literal::Stream(cf) => cf.to_f64(),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Exact(x) => write!(f, "{x}"),
            Literal::Stream(cf) => write!(f, "{cf}"),
        }
    }
}

pub fn parse_literal(s: &str) -> Result<Literal> {
    let t = s.trim();
    if t.starts_with('[') {
        let cf: ContinuedFraction = t.parse()?;
        return Ok(match cf.value() {
            Some(v) => Literal::Exact(v),
            None => Literal::Stream(cf),
        });
    }
    if t == "e" {
        return Ok(Literal::Stream(euler()));
    }
    if let Some(name) = t.strip_prefix("word:") {
        let w = match name {
            "universal-14" => WordGenerator::Universal14,
            "universal-45" => WordGenerator::Universal45,
            "spiked" => WordGenerator::Spiked,
            _ => return Err(Error::Parse(format!("unknown word {name:?}"))),
        };
        return Ok(Literal::Stream(word_to_alpha(w)));
    }
    parse_exact(t).map(Literal::Exact)
}

/// Parses an arithmetic expression over `Q(√d)`.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "unexpected {:?} in {s:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Int(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek_op() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Exact> {
        let mut v = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let r = self.term()?;
            v = if c == '+' { v.add(&r)? } else { v.sub(&r)? };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<Exact> {
        let mut v = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            v = if c == '*' {
                v.mul(&r)?
            } else {
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                v.div(&r)?
            };
        }
        Ok(v)
    }

    fn unary(&mut self) -> Result<Exact> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Exact> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Exact::from(n)),
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) if name == "phi" => Ok(Exact::golden()),
            Tok::Ident(name) if name == "sqrt" => {
                self.expect('(')?;
                let v = self.expr()?;
                self.expect(')')?;
                sqrt_rational(&v)
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

/// `√(p/q) = √(pq)/q` for a non-negative rational.
fn sqrt_rational(v: &Exact) -> Result<Exact> {
    let r = v.as_rational().ok_or(Error::NotQuadratic)?;
    if r.is_negative() {
        return Err(Error::NegativeRadicand(r.to_string()));
    }
    if r.is_zero() {
        return Ok(Exact::zero());
    }
    let root = QuadraticSurd::sqrt(r.numer() * r.denom())?;
    root.div(&Exact::from(r.denom().clone()))
}
