use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldSpec, NumberField};
use super::qpoly;

pub type Rational = BigRational;

/// An exact scalar: a rational, or a residue in a simple number field.
///
/// Residues of degree zero are always stored as [`Scalar::Rat`], so a
/// rational constant compares equal no matter which field it came from.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rational),
    Alg(Arc<NumberField>, Vec<Rational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn int(v: i64) -> Self {
        Scalar::Rat(Rational::from_integer(BigInt::from(v)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::Rat(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Residue class of the polynomial `coeffs` (lowest degree first).
    pub fn residue(field: &FieldSpec, coeffs: Vec<Rational>) -> Self {
        match field {
            FieldSpec::Rationals => {
                // only constants make sense over Q; t is not available
                assert!(coeffs.len() <= 1, "polynomial residue over the rationals");
                Scalar::Rat(coeffs.into_iter().next().unwrap_or_else(Rational::zero))
            }
            FieldSpec::NumberField(nf) => Self::from_residue(nf, coeffs),
        }
    }

    /// The generator `t` of a number field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_residue(field, vec![Rational::zero(), Rational::one()])
    }

    fn from_residue(nf: &Arc<NumberField>, coeffs: Vec<Rational>) -> Self {
        let mut r = qpoly::rem(&coeffs, nf.modulus());
        qpoly::trim(&mut r);
        if r.len() <= 1 {
            Scalar::Rat(r.pop().unwrap_or_else(Rational::zero))
        } else {
            Scalar::Alg(nf.clone(), r)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Alg(..) => None,
        }
    }

    /// Coefficients of the residue representative, lowest degree first.
    pub fn coeffs(&self) -> Vec<Rational> {
        match self {
            Scalar::Rat(q) if q.is_zero() => Vec::new(),
            Scalar::Rat(q) => vec![q.clone()],
            Scalar::Alg(_, c) => c.clone(),
        }
    }

    pub fn number_field(&self) -> Option<&Arc<NumberField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg(nf, _) => Some(nf),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(q) if q.is_zero() => None,
            Scalar::Rat(q) => Some(Scalar::Rat(q.recip())),
            Scalar::Alg(nf, c) => {
                let (g, s) = qpoly::ext_gcd(c, nf.modulus());
                // m irreducible so gcd is 1 for nonzero residues
                assert!(g.len() == 1, "modulus {nf} is not irreducible");
                Some(Self::from_residue(nf, s))
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Writes `self` with its own coefficients for `t`, for use as a
    /// coefficient in front of another expression.
    pub fn needs_parens(&self) -> bool {
        match self {
            Scalar::Rat(_) => false,
            Scalar::Alg(_, c) => c.iter().filter(|x| !x.is_zero()).count() > 1,
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(q) if q.is_negative())
    }

    /// Applies `t -> image` to the residue representative.
    pub fn substitute(&self, image: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs().iter().rev() {
            acc = &(&acc * image) + &Scalar::Rat(c.clone());
        }
        acc
    }
}

fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "scalars from different number fields: {a} and {b}"
    );
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(f, a), Scalar::Alg(g, b)) => (Arc::ptr_eq(f, g) || f == g) && a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs().hash(state);
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rat(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Rat(a), Scalar::Alg(nf, c)) | (Scalar::Alg(nf, c), Scalar::Rat(a)) => {
                let mut c = c.clone();
                c[0] += a;
                Scalar::from_residue(nf, c)
            }
            (Scalar::Alg(f, a), Scalar::Alg(g, b)) => {
                same_field(f, g);
                Scalar::from_residue(f, qpoly::add(a, b))
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Alg(nf, c)) | (Scalar::Alg(nf, c), Scalar::Rat(a)) => {
                Scalar::from_residue(nf, qpoly::scale(c, a))
            }
            (Scalar::Alg(f, a), Scalar::Alg(g, b)) => {
                same_field(f, g);
                Scalar::from_residue(f, qpoly::mul(a, b))
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Alg(nf, c) => Scalar::Alg(nf.clone(), qpoly::neg(c)),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(Scalar);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Alg(_, c) => write!(f, "{}", qpoly::fmt_poly(c, "t")),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The commutative coefficient rings matrices are built over.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(s: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gaussian() -> Arc<NumberField> {
        Arc::new(NumberField::new(vec![Rational::one(), Rational::zero(), Rational::one()]).unwrap())
    }

    fn cubic() -> Arc<NumberField> {
        let q = |v: i64| Rational::from_integer(v.into());
        Arc::new(NumberField::new(vec![q(-2), q(0), q(0), q(1)]).unwrap())
    }

    #[test]
    fn defining_relations() {
        let i = Scalar::generator(&gaussian());
        assert_eq!(&i * &i, Scalar::int(-1));
        let q = |v: i64| Rational::from_integer(v.into());
        let r2 = Arc::new(NumberField::new(vec![q(-2), q(0), q(1)]).unwrap());
        let s = Scalar::generator(&r2);
        assert_eq!(&s * &s, Scalar::int(2));
    }

    #[test]
    fn inverse_in_cubic_field() {
        let t = Scalar::generator(&cubic());
        let x = &(&t * &t) + &Scalar::int(1);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Scalar::one());
        assert!(Scalar::zero().inv().is_none());
    }

    fn arb_elem() -> impl Strategy<Value = (i64, i64, i64)> {
        (-9i64..10, -9i64..10, -9i64..10)
    }

    fn elem(nf: &Arc<NumberField>, (a, b, c): (i64, i64, i64)) -> Scalar {
        let q = |v: i64| Rational::from_integer(v.into());
        Scalar::residue(&FieldSpec::NumberField(nf.clone()), vec![q(a), q(b), q(c)])
    }

    proptest! {
        #[test]
        fn field_axioms_cubic(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            let nf = cubic();
            let (x, y, z) = (elem(&nf, x), elem(&nf, y), elem(&nf, z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn field_axioms_rationals(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let (x, y) = (Scalar::frac(a, b), Scalar::frac(c, d));
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
            }
        }
    }
}
