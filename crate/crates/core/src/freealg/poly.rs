use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactnum::{FieldSpec, Rational, Scalar};
use crate::text::{parse_with, ExprAlgebra, ParseError};

use super::word::{Alphabet, Word};

/// Noncommutative polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::one(), c)
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn pop_lead(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    /// Largest weight of a term; 0 for the zero polynomial.
    pub fn weight(&self) -> u32 {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    /// Adds `c * u * other * v`.
    pub fn add_sandwich(&mut self, c: &Scalar, u: &Word, other: &NcPoly, v: &Word) {
        for (w, x) in &other.terms {
            self.add_term(Word::concat3(u, w, v), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::int(-1))
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NcPoly {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead")),
            None => NcPoly::zero(),
        }
    }

    /// Renders as `3/2*f0.f1 - 1` with terms in decreasing order.
    pub fn display(&self, alpha: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative_rational() { (true, -c) } else { (false, c.clone()) };
            let sep = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            out.push_str(sep);
            let coef = if mag.needs_parens() { format!("({mag})") } else { mag.to_string() };
            if w.is_empty() {
                out.push_str(&coef);
            } else if mag.is_one() {
                out.push_str(&alpha.fmt_word(w));
            } else {
                out.push_str(&format!("{coef}*{}", alpha.fmt_word(w)));
            }
        }
        out
    }

    pub fn parse(src: &str, alpha: &Arc<Alphabet>, field: &FieldSpec) -> Result<NcPoly, ParseError> {
        parse_with(src, &NcGrammar { alpha, field })
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> NcPoly {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }
}

struct NcGrammar<'a> {
    alpha: &'a Arc<Alphabet>,
    field: &'a FieldSpec,
}

impl ExprAlgebra for NcGrammar<'_> {
    type Value = NcPoly;
    fn constant(&self, c: &Rational) -> NcPoly {
        NcPoly::constant(Scalar::Rat(c.clone()))
    }
    fn ident(&self, name: &str, offset: usize) -> Result<NcPoly, ParseError> {
        if let Some(g) = self.alpha.index_of(name) {
            return Ok(NcPoly::word(self.alpha.letter(g)));
        }
        if let (Some(nf), "t") = (self.field.as_number_field(), name) {
            return Ok(NcPoly::constant(Scalar::generator(nf)));
        }
        Err(ParseError::new(
            offset,
            format!("unknown generator '{name}' (known: {})", self.alpha.labels().join(", ")),
        ))
    }
    fn add(&self, a: NcPoly, b: NcPoly) -> NcPoly {
        NcPoly::add(&a, &b)
    }
    fn mul(&self, a: NcPoly, b: NcPoly) -> NcPoly {
        NcPoly::mul(&a, &b)
    }
    fn neg(&self, a: NcPoly) -> NcPoly {
        NcPoly::neg(&a)
    }
}
