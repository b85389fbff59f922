use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{owned_ops, Rational, Ring, Scalar};

/// Dense univariate polynomial with [`Scalar`] coefficients, lowest degree
/// first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

/// Polynomials in the central parameter `L`.
pub type CentralPoly = UniPoly;

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Rational coefficients, if every coefficient is rational.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            push_term(&mut out, c, &mono, "*");
        }
        out
    }
}

/// Appends `c*mono` to a `+`/`-` separated sum, writing signs the way a
/// person would.
pub(crate) fn push_term(out: &mut String, c: &Scalar, mono: &str, sep: &str) {
    let negative = c.is_negative_rational();
    let mag = if negative { -c } else { c.clone() };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if mono.is_empty() {
        if mag.needs_parens() {
            out.push_str(&format!("({mag})"));
        } else {
            out.push_str(&mag.to_string());
        }
    } else if mag.is_one() {
        out.push_str(mono);
    } else if mag.needs_parens() {
        out.push_str(&format!("({mag}){sep}{mono}"));
    } else {
        out.push_str(&format!("{mag}{sep}{mono}"));
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("L"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

owned_ops!(UniPoly);

impl serde::Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::default()
    }
    fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_scalar(s: &Scalar) -> Self {
        UniPoly::constant(s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_identity_from_deformed_rep() {
        // (L+1)(L-1) - L^2 + 1 = 0
        let l = UniPoly::var();
        let one = UniPoly::one();
        let lhs = &(&(&(&l + &one) * &(&l - &one)) - &(&l * &l)) + &one;
        assert!(lhs.is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_ints(&[-1, 0, 1]).to_string(), "L^2 - 1");
        assert_eq!(UniPoly::from_ints(&[1, 0, 1]).display_in("x"), "x^2 + 1");
        assert_eq!(UniPoly::from_ints(&[0, -2]).display_in("x"), "-2*x");
    }
}
