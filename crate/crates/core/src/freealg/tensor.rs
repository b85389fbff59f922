use std::collections::BTreeMap;

use crate::exactnum::Scalar;

use super::poly::NcPoly;
use super::system::{RewriteError, RewritingSystem};
use super::word::{Alphabet, Word};

/// Element of a tensor product of free algebras, one word per leg.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1⊗…⊗1` with `legs` factors.
    pub fn one(legs: usize) -> Self {
        Self::basis(vec![Word::one(); legs], Scalar::one())
    }

    pub fn basis(words: Vec<Word>, c: Scalar) -> Self {
        let mut t = Self::zero();
        t.add_term(words, c);
        t
    }

    /// `p_1 ⊗ p_2 ⊗ …`.
    pub fn pure(legs: &[&NcPoly]) -> Self {
        let mut acc: BTreeMap<Vec<Word>, Scalar> = BTreeMap::new();
        acc.insert(Vec::new(), Scalar::one());
        for p in legs {
            let mut next = BTreeMap::new();
            for (ws, c) in &acc {
                for (w, d) in p.terms() {
                    let mut k = ws.clone();
                    k.push(w.clone());
                    next.insert(k, c * d);
                }
            }
            acc = next;
        }
        Self { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, words: Vec<Word>, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(words) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Scalar) {
        for (ws, d) in &other.terms {
            self.add_term(ws.clone(), c * d);
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorPoly {
        let mut out = TensorPoly::zero();
        out.add_scaled(self, c);
        out
    }

    /// Componentwise product.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let words = a.iter().zip(b).map(|(u, v)| u.concat(v)).collect();
                out.add_term(words, x * y);
            }
        }
        out
    }

    /// Reduces leg `i` with `systems[i]`.
    pub fn reduce(&self, systems: &[&RewritingSystem]) -> Result<TensorPoly, RewriteError> {
        let mut out = TensorPoly::zero();
        for (ws, c) in &self.terms {
            let legs: Vec<NcPoly> = ws
                .iter()
                .zip(systems)
                .map(|(w, s)| s.normal_form(&NcPoly::word(w.clone())))
                .collect::<Result<_, _>>()?;
            let refs: Vec<&NcPoly> = legs.iter().collect();
            out.add_scaled(&TensorPoly::pure(&refs), c);
        }
        Ok(out)
    }

    /// Applies a linear map to leg `leg`, expanding into more legs when the
    /// map produces tensors (e.g. a coproduct); `f` returns the replacement.
    pub fn map_leg(&self, leg: usize, f: &mut dyn FnMut(&Word) -> Result<TensorPoly, RewriteError>) -> Result<TensorPoly, RewriteError> {
        let mut out = TensorPoly::zero();
        for (ws, c) in &self.terms {
            let img = f(&ws[leg])?;
            for (iw, d) in img.terms() {
                let mut k = ws[..leg].to_vec();
                k.extend(iw.iter().cloned());
                k.extend(ws[leg + 1..].iter().cloned());
                out.add_term(k, c * d);
            }
        }
        Ok(out)
    }

    pub fn display(&self, alphas: &[&Alphabet]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (ws, c) in self.terms.iter().rev() {
            let legs: Vec<String> = ws.iter().zip(alphas).map(|(w, a)| a.fmt_word(w)).collect();
            let body = legs.join("⊗");
            parts.push(if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else if c.needs_parens() {
                format!("({c})*{body}")
            } else {
                format!("{c}*{body}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
