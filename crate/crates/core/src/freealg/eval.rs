use crate::exactnum::{Matrix, Ring, Scalar};
use crate::finalg::FinAlgebra;

use super::poly::NcPoly;
use super::system::{RewriteError, RewritingSystem};
use super::tensor::TensorPoly;

/// An algebra that generator images live in.
pub trait AlgebraTarget {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Scalar, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, RewriteError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Image of `p` under the algebra map sending generator `g` to `images[g]`.
pub fn eval_poly<T: AlgebraTarget>(t: &T, p: &NcPoly, images: &[T::Elem]) -> Result<T::Elem, RewriteError> {
    let mut acc = t.zero();
    for (w, c) in p.terms() {
        let mut term = t.one();
        for &g in w.letters() {
            term = t.mul(&term, &images[g as usize])?;
        }
        acc = t.add(&acc, &t.scale(c, &term));
    }
    Ok(acc)
}

/// The ground field.
pub struct FieldTarget;

impl AlgebraTarget for FieldTarget {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn scale(&self, c: &Scalar, a: &Scalar) -> Scalar {
        c * a
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, RewriteError> {
        Ok(a * b)
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
}

/// A finite-dimensional algebra in coordinates.
pub struct CoordTarget<'a>(pub &'a FinAlgebra);

impl AlgebraTarget for CoordTarget<'_> {
    type Elem = Vec<Scalar>;
    fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.0.dim()]
    }
    fn one(&self) -> Vec<Scalar> {
        self.0.unit().to_vec()
    }
    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    fn scale(&self, c: &Scalar, a: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().map(|x| c * x).collect()
    }
    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Result<Vec<Scalar>, RewriteError> {
        Ok(self.0.mul(a, b))
    }
    fn is_zero(&self, a: &Vec<Scalar>) -> bool {
        a.iter().all(Scalar::is_zero)
    }
}

/// `n x n` matrices over a commutative ring (scalars or `L`-polynomials);
/// build with `MatrixTarget::over`.
pub struct MatrixTarget;

impl<R: Ring> AlgebraTarget for MatrixTargetOf<R> {
    type Elem = Matrix<R>;
    fn zero(&self) -> Matrix<R> {
        Matrix::zeros(self.n, self.n)
    }
    fn one(&self) -> Matrix<R> {
        Matrix::identity(self.n)
    }
    fn add(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a + b
    }
    fn scale(&self, c: &Scalar, a: &Matrix<R>) -> Matrix<R> {
        a.scale(&R::from_scalar(c))
    }
    fn mul(&self, a: &Matrix<R>, b: &Matrix<R>) -> Result<Matrix<R>, RewriteError> {
        Ok(a * b)
    }
    fn is_zero(&self, a: &Matrix<R>) -> bool {
        a.is_zero()
    }
}

/// Matrix target with its coefficient ring fixed.
pub struct MatrixTargetOf<R> {
    pub n: usize,
    _ring: std::marker::PhantomData<R>,
}

impl MatrixTarget {
    pub fn over<R: Ring>(n: usize) -> MatrixTargetOf<R> {
        MatrixTargetOf { n, _ring: std::marker::PhantomData }
    }
}

/// Another presentation; elements are kept in normal form.
pub struct PresentationTarget<'a>(pub &'a RewritingSystem);

impl AlgebraTarget for PresentationTarget<'_> {
    type Elem = NcPoly;
    fn zero(&self) -> NcPoly {
        NcPoly::zero()
    }
    fn one(&self) -> NcPoly {
        NcPoly::one()
    }
    fn add(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        a.add(b)
    }
    fn scale(&self, c: &Scalar, a: &NcPoly) -> NcPoly {
        a.scale(c)
    }
    fn mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, RewriteError> {
        self.0.normal_form(&a.mul(b))
    }
    fn is_zero(&self, a: &NcPoly) -> bool {
        a.is_zero()
    }
}

/// A tensor product of presentations, reduced leg by leg.
pub struct TensorTarget<'a>(pub Vec<&'a RewritingSystem>);

impl AlgebraTarget for TensorTarget<'_> {
    type Elem = TensorPoly;
    fn zero(&self) -> TensorPoly {
        TensorPoly::zero()
    }
    fn one(&self) -> TensorPoly {
        TensorPoly::one(self.0.len())
    }
    fn add(&self, a: &TensorPoly, b: &TensorPoly) -> TensorPoly {
        a.add(b)
    }
    fn scale(&self, c: &Scalar, a: &TensorPoly) -> TensorPoly {
        a.scale(c)
    }
    fn mul(&self, a: &TensorPoly, b: &TensorPoly) -> Result<TensorPoly, RewriteError> {
        a.mul(b).reduce(&self.0)
    }
    fn is_zero(&self, a: &TensorPoly) -> bool {
        a.is_zero()
    }
}
