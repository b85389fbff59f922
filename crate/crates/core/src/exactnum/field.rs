use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qpoly;
use super::{NumError, Rational};

/// `Q[t]/m(t)` for a monic irreducible `m` of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Vec<Rational>,
}

impl NumberField {
    /// Builds the field after a degree-bounded factor search on `modulus`
    /// (coefficients lowest degree first).
    pub fn new(modulus: Vec<Rational>) -> Result<Self, NumError> {
        let field = Self::new_asserted(modulus)?;
        if let Some((f, g)) = find_factor(&field.modulus)? {
            return Err(NumError::Reducible(format!(
                "({})({})",
                qpoly::fmt_poly(&f, "t"),
                qpoly::fmt_poly(&g, "t")
            )));
        }
        Ok(field)
    }

    /// Builds the field trusting the caller that `modulus` is irreducible.
    pub fn new_asserted(mut modulus: Vec<Rational>) -> Result<Self, NumError> {
        qpoly::trim(&mut modulus);
        if modulus.len() < 3 || !modulus.last().unwrap().is_one() {
            return Err(NumError::NotMonic(qpoly::fmt_poly(&modulus, "t")));
        }
        Ok(Self { modulus })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", qpoly::fmt_poly(&self.modulus, "t"))
    }
}

/// The field a scalar or algebra lives over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    NumberField(Arc<NumberField>),
}

impl FieldSpec {
    /// `Q[t]/m`; a degree-one modulus collapses to the rationals.
    pub fn number_field(modulus: Vec<Rational>) -> Result<Self, NumError> {
        let mut m = modulus;
        qpoly::trim(&mut m);
        if m.len() == 2 && m[1].is_one() {
            return Ok(FieldSpec::Rationals);
        }
        Ok(FieldSpec::NumberField(Arc::new(NumberField::new(m)?)))
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Rationals => 1,
            FieldSpec::NumberField(nf) => nf.degree(),
        }
    }

    pub fn as_number_field(&self) -> Option<&Arc<NumberField>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::NumberField(nf) => Some(nf),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::NumberField(nf) => write!(f, "{nf}"),
        }
    }
}

const KRONECKER_CAP: usize = 200_000;

/// Searches for a factorisation `m = f * g` with `1 <= deg f <= deg m / 2`.
/// Returns monic factors, `None` when the search proves there is none.
fn find_factor(m: &[Rational]) -> Result<Option<(Vec<Rational>, Vec<Rational>)>, NumError> {
    let ints = primitive_integer(m);
    let n = ints.len() - 1;
    // linear factors via the rational root theorem
    if let Some(root) = rational_root(&ints) {
        let f = vec![-root, Rational::one()];
        let (g, _) = qpoly::divrem(m, &f);
        return Ok(Some((f, g)));
    }
    for e in 2..=n / 2 {
        match kronecker(&ints, e)? {
            Some(f) => {
                let lead = f.last().unwrap().clone();
                let f = qpoly::scale(&f, &(Rational::one() / lead));
                let (g, _) = qpoly::divrem(m, &f);
                return Ok(Some((f, g)));
            }
            None => continue,
        }
    }
    Ok(None)
}

fn primitive_integer(m: &[Rational]) -> Vec<BigInt> {
    let lcm = m
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = m.iter().map(|c| (c * Rational::from(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let v = v.abs().to_u64()?;
    if v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

fn rational_root(ints: &[BigInt]) -> Option<Rational> {
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let num = divisors(&ints[0])?;
    let den = divisors(ints.last().unwrap())?;
    let p: Vec<Rational> = ints.iter().map(|c| Rational::from(c.clone())).collect();
    for a in &num {
        for b in &den {
            for sign in [1, -1] {
                let cand = Rational::new(a * sign, b.clone());
                if qpoly::eval(&p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Kronecker's method for a factor of degree exactly `e`.
fn kronecker(ints: &[BigInt], e: usize) -> Result<Option<Vec<Rational>>, NumError> {
    let p: Vec<Rational> = ints.iter().map(|c| Rational::from(c.clone())).collect();
    let undecided = || NumError::Undecided(qpoly::fmt_poly(&p, "t"));
    let mut points = Vec::new();
    let mut values = Vec::new();
    let mut k: i64 = 0;
    while points.len() <= e {
        let x = Rational::from(BigInt::from(k));
        let v = qpoly::eval(&p, &x);
        // no rational roots at this point, so v != 0
        points.push(x);
        values.push(divisors(&v.to_integer()).ok_or_else(undecided)?);
        k = if k <= 0 { 1 - k } else { -k };
    }
    let total: usize = values.iter().map(|d| 2 * d.len()).product();
    if total > KRONECKER_CAP {
        return Err(undecided());
    }
    let mut idx = vec![0usize; e + 1];
    loop {
        let targets: Vec<Rational> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let d = &values[i][j / 2];
                Rational::from(if j % 2 == 0 { d.clone() } else { -d.clone() })
            })
            .collect();
        let q = interpolate(&points, &targets);
        if q.len() == e + 1 && q.iter().all(|c| c.is_integer()) && q.last().unwrap().is_positive() {
            let (_, r) = qpoly::divrem(&p, &q);
            if r.is_empty() {
                return Ok(Some(q));
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < 2 * values[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let mut acc: Vec<Rational> = Vec::new();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = qpoly::mul(&basis, &[-xj.clone(), Rational::one()]);
                denom *= xi - xj;
            }
        }
        acc = qpoly::add(&acc, &qpoly::scale(&basis, &(yi / denom)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn gaussian_and_sqrt2_fields_accepted() {
        assert!(NumberField::new(q(&[1, 0, 1])).is_ok());
        assert!(NumberField::new(q(&[-2, 0, 1])).is_ok());
        assert!(NumberField::new(q(&[-2, 0, 0, 1])).is_ok());
    }

    #[test]
    fn difference_of_squares_rejected_with_factors() {
        let err = NumberField::new(q(&[-1, 0, 1])).unwrap_err();
        assert_eq!(err.to_string(), "reducible: (t - 1)(t + 1)");
    }

    #[test]
    fn quartic_with_quadratic_factors_rejected() {
        // (t^2+1)(t^2+2) = t^4 + 3t^2 + 2
        let err = NumberField::new(q(&[2, 0, 3, 0, 1])).unwrap_err();
        assert!(matches!(err, NumError::Reducible(_)), "{err}");
        // t^4 + 1 is irreducible
        assert!(NumberField::new(q(&[1, 0, 0, 0, 1])).is_ok());
    }

    #[test]
    fn degree_one_modulus_is_the_rationals() {
        assert_eq!(FieldSpec::number_field(q(&[-3, 1])).unwrap(), FieldSpec::Rationals);
    }

    #[test]
    fn non_monic_rejected() {
        assert!(matches!(NumberField::new(q(&[1, 0, 2])), Err(NumError::NotMonic(_))));
    }
}
