//! Text grammar shared by every polynomial-like input.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'.') power | '/' number)*
//! power  := atom ['^' integer]
//! atom   := number | ident | '(' expr ')'
//! ```
//!
//! `.` and `*` both multiply and keep operand order, so the same grammar
//! parses commutative polynomials in `x`, `t`, `L` and noncommutative words
//! such as `3/2*f0.f1.f1 - 1`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{FieldSpec, NumberField, Rational, Scalar, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        Self { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Num(src[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*./^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ParseError::new(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// How identifiers and arithmetic are interpreted while parsing.
pub trait ExprAlgebra {
    type Value: Clone;
    fn constant(&self, c: &Rational) -> Self::Value;
    fn ident(&self, name: &str, offset: usize) -> Result<Self::Value, ParseError>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;

    fn pow(&self, a: Self::Value, e: u32) -> Self::Value {
        let mut acc = self.constant(&Rational::one());
        for _ in 0..e {
            acc = self.mul(acc, a.clone());
        }
        acc
    }
}

struct Parser<'a, A: ExprAlgebra> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    alg: &'a A,
}

impl<A: ExprAlgebra> Parser<'_, A> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<A::Value, ParseError> {
        let mut negate = false;
        match self.peek() {
            Tok::Op('-') => {
                negate = true;
                self.bump();
            }
            Tok::Op('+') => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.alg.neg(acc);
        }
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.alg.add(acc, t);
                }
                Tok::Op('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = self.alg.add(acc, self.alg.neg(t));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Op('*') | Tok::Op('.') => {
                    self.bump();
                    let f = self.power()?;
                    acc = self.alg.mul(acc, f);
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        (Tok::Num(n), _) if !n.is_zero() => {
                            let inv = Rational::new(BigInt::one(), n);
                            acc = self.alg.mul(acc, self.alg.constant(&inv));
                        }
                        _ => return Err(ParseError::new(at, "expected a nonzero integer denominator")),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<A::Value, ParseError> {
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            self.bump();
            let at = self.offset();
            match self.bump() {
                (Tok::Num(n), _) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError::new(at, "exponent too large"))?;
                    return Ok(self.alg.pow(base, e));
                }
                _ => return Err(ParseError::new(at, "expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<A::Value, ParseError> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(n) => Ok(self.alg.constant(&Rational::from_integer(n))),
            Tok::Ident(name) => self.alg.ident(&name, at),
            Tok::Op('(') => {
                let v = self.expr()?;
                match self.bump() {
                    (Tok::Op(')'), _) => Ok(v),
                    (_, at) => Err(ParseError::new(at, "expected ')'")),
                }
            }
            Tok::End => Err(ParseError::new(at, "unexpected end of input")),
            Tok::Op(c) => Err(ParseError::new(at, format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `src` with the interpretation supplied by `alg`.
pub fn parse_with<A: ExprAlgebra>(src: &str, alg: &A) -> Result<A::Value, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, alg };
    let v = p.expr()?;
    match p.peek() {
        Tok::End => Ok(v),
        _ => Err(ParseError::new(p.offset(), "unexpected trailing input")),
    }
}

/// Univariate polynomials in `var`; `t` denotes the number-field generator
/// when `field` is a number field and `var` is something else.
pub struct UniPolyGrammar<'a> {
    pub var: &'a str,
    pub field: &'a FieldSpec,
}

impl ExprAlgebra for UniPolyGrammar<'_> {
    type Value = UniPoly;
    fn constant(&self, c: &Rational) -> UniPoly {
        UniPoly::constant(Scalar::Rat(c.clone()))
    }
    fn ident(&self, name: &str, offset: usize) -> Result<UniPoly, ParseError> {
        if name == self.var {
            return Ok(UniPoly::var());
        }
        if let (FieldSpec::NumberField(nf), "t") = (self.field, name) {
            return Ok(UniPoly::constant(Scalar::generator(nf)));
        }
        Err(ParseError::new(offset, format!("unknown variable '{name}' (expected '{}')", self.var)))
    }
    fn add(&self, a: UniPoly, b: UniPoly) -> UniPoly {
        a + b
    }
    fn mul(&self, a: UniPoly, b: UniPoly) -> UniPoly {
        a * b
    }
    fn neg(&self, a: UniPoly) -> UniPoly {
        -a
    }
}

pub fn parse_unipoly(src: &str, var: &str, field: &FieldSpec) -> Result<UniPoly, ParseError> {
    parse_with(src, &UniPolyGrammar { var, field })
}

struct ScalarGrammar<'a>(Option<&'a Arc<NumberField>>);

impl ExprAlgebra for ScalarGrammar<'_> {
    type Value = Scalar;
    fn constant(&self, c: &Rational) -> Scalar {
        Scalar::Rat(c.clone())
    }
    fn ident(&self, name: &str, offset: usize) -> Result<Scalar, ParseError> {
        match (self.0, name) {
            (Some(nf), "t") => Ok(Scalar::generator(nf)),
            (None, _) => Err(ParseError::new(offset, format!("'{name}' is not a rational constant"))),
            _ => Err(ParseError::new(offset, format!("unknown symbol '{name}' (number-field generator is 't')"))),
        }
    }
    fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: Scalar) -> Scalar {
        -a
    }
}

/// Parses `"p/q"`, or a polynomial in `t` reduced into `field`.
pub fn parse_scalar(src: &str, field: &FieldSpec) -> Result<Scalar, ParseError> {
    parse_with(src, &ScalarGrammar(field.as_number_field()))
}

/// Parses a field description: `Q`, or a monic modulus in `t`.
pub fn parse_field(src: &str) -> Result<FieldSpec, ParseError> {
    let s = src.trim();
    if s == "Q" || s.is_empty() {
        return Ok(FieldSpec::Rationals);
    }
    let inner = s
        .strip_prefix("Q[t]/(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    let shift = s.len() - s.trim_start().len() + (s.len() - inner.len()).min(6);
    let p = parse_unipoly(inner, "t", &FieldSpec::Rationals).map_err(|e| ParseError::new(e.offset + shift, e.message))?;
    let coeffs = p.rational_coeffs().expect("rational modulus");
    FieldSpec::number_field(coeffs).map_err(|e| ParseError::new(0, e.to_string()))
}

/// Comma separated list of scalars, commas inside parentheses ignored.
pub fn split_top_level(src: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Op(c) => write!(f, "{c}"),
            Tok::End => write!(f, "<end>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_algebra_polynomial() {
        let p = parse_unipoly("x^2+1", "x", &FieldSpec::Rationals).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[1, 0, 1]));
        let p = parse_unipoly("x^3 - 2", "x", &FieldSpec::Rationals).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[-2, 0, 0, 1]));
    }

    #[test]
    fn malformed_exponent_reports_offset() {
        let err = parse_unipoly("x^+1", "x", &FieldSpec::Rationals).unwrap_err();
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn rationals_and_field_elements() {
        assert_eq!(parse_scalar("3/2", &FieldSpec::Rationals).unwrap(), Scalar::frac(3, 2));
        assert_eq!(parse_scalar("-7", &FieldSpec::Rationals).unwrap(), Scalar::int(-7));
        let f = parse_field("t^2+1").unwrap();
        let t = parse_scalar("t", &f).unwrap();
        assert_eq!(&t * &t, Scalar::int(-1));
        assert_eq!(parse_scalar("t^2", &f).unwrap(), Scalar::int(-1));
        assert!(parse_scalar("t", &FieldSpec::Rationals).is_err());
    }

    #[test]
    fn reducible_field_rejected() {
        let err = parse_field("t^2-1").unwrap_err();
        assert!(err.message.contains("reducible"), "{err}");
    }

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(split_top_level("t, -(t+1), 3", ','), vec!["t", "-(t+1)", "3"]);
    }
}
