use crate::exactnum::{CentralPoly, FieldSpec, Matrix, Rational, Scalar, UniPoly};
use crate::finalg::FinAlgebra;
use crate::report::{CheckReport, Finding};
use crate::sweedler::{f_of_images, fmt_matrix, AlgebraMapImage, SweedlerPresentation};

use super::ExtensionError;

/// A monic `p` of degree `n` and a nilpotent `n x n` matrix `Z`.
#[derive(Debug, Clone)]
pub struct LoopData {
    p: UniPoly,
    z: Matrix<Scalar>,
    nilpotency: usize,
}

impl LoopData {
    pub fn new(p: UniPoly, z: Matrix<Scalar>) -> Result<Self, ExtensionError> {
        let n = match p.degree() {
            Some(d) if d >= 1 && p.is_monic() => d,
            _ => return Err(ExtensionError::Input(format!("{} is not monic of positive degree", p.display_in("x")))),
        };
        if z.rows() != n || z.cols() != n {
            return Err(ExtensionError::Input(format!("Z must be {n}x{n}, got {}x{}", z.rows(), z.cols())));
        }
        let mut power = Matrix::identity(n);
        let mut nilpotency = 0;
        while !power.is_zero() {
            if nilpotency == n {
                return Err(ExtensionError::NotNilpotent(n));
            }
            power = &power * &z;
            nilpotency += 1;
        }
        Ok(Self { p, z, nilpotency })
    }

    pub fn p(&self) -> &UniPoly {
        &self.p
    }

    pub fn z(&self) -> &Matrix<Scalar> {
        &self.z
    }

    /// Least `k` with `Z^k = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }
}

/// An element of `M_n(ℚ[λ])⊗A`, stored as one matrix per basis element of `A`.
type MatTensor = Vec<Matrix<CentralPoly>>;

#[derive(Debug, Clone)]
pub struct LoopExtension {
    pub algebra: FinAlgebra,
    /// `C, [Z,C], [Z,[Z,C]], …` up to the last nonzero term.
    pub ad_terms: Vec<Matrix<Scalar>>,
    /// `σ_Z(x)`.
    pub sigma_x: MatTensor,
    pub images: AlgebraMapImage,
    pub report: CheckReport,
}

impl LoopExtension {
    pub fn display(&self) -> String {
        display_tensor(&self.algebra, &self.sigma_x)
    }

    /// `σ_Z(x)` with `λ` set to `value`.
    pub fn specialize(&self, value: &Scalar) -> Vec<Matrix<Scalar>> {
        self.sigma_x.iter().map(|m| m.map(|e| e.eval(value))).collect()
    }
}

pub fn display_tensor(a: &FinAlgebra, t: &[Matrix<CentralPoly>]) -> String {
    let parts: Vec<String> = t
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(r, m)| format!("{}⊗{}", fmt_matrix(m), a.label(r)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `σ_Z(x) = Σ_k λ^k/k! ad(Z)^k(C) ⊗ x^k` with `x^k` reduced modulo `p`,
/// checked against `p(σ_Z(x)) = 0`, and pushed through `F(A,A)`.
pub fn loop_extension(ld: &LoopData, f: &SweedlerPresentation) -> Result<LoopExtension, ExtensionError> {
    let field = f.a().field().clone();
    let a = FinAlgebra::quotient_poly(&ld.p, &field)?;
    if !f.a().same_structure(&a) || !f.b().same_structure(&a) {
        return Err(ExtensionError::Input("the presentation must be F(ℚ[x]/p, ℚ[x]/p)".into()));
    }
    let n = a.dim();
    let x = if n >= 2 { a.basis_vector(1) } else { vec![-ld.p.coeff(0)] };
    let c = Matrix::from_fn(n, n, |k, s| a.mul(&x, &a.basis_vector(s))[k].clone());
    let mut ad_terms = vec![c];
    // ad(Z) is nilpotent of index ≤ 2n - 1 when Z is.
    loop {
        let next = ld.z.commutator(ad_terms.last().unwrap());
        if next.is_zero() {
            break;
        }
        if ad_terms.len() > 2 * n {
            return Err(ExtensionError::NotNilpotent(n));
        }
        ad_terms.push(next);
    }
    let mut sigma_x: MatTensor = vec![Matrix::zeros(n, n); n];
    let mut x_pow = a.unit().to_vec();
    let mut factorial = Rational::from_integer(1.into());
    for (k, term) in ad_terms.iter().enumerate() {
        if k > 0 {
            x_pow = a.mul(&x_pow, &x);
            factorial *= Rational::from_integer(k.into());
        }
        let mut lam = vec![Scalar::zero(); k + 1];
        lam[k] = Scalar::Rat(factorial.recip());
        let lam = UniPoly::new(lam);
        for (r, coef) in x_pow.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let scaled = term.map(|e| &lam * &UniPoly::constant(e * coef));
            sigma_x[r] = &sigma_x[r] + &scaled;
        }
    }

    let mut report = CheckReport::new();
    let one = unit_tensor(&a, n);
    // a_i = x^i on the power basis.
    let mut powers = vec![one.clone()];
    for i in 1..=n {
        powers.push(tensor_mul(&a, &powers[i - 1], &sigma_x));
    }
    let mut value = vec![Matrix::zeros(n, n); n];
    for (i, pw) in powers.iter().enumerate() {
        let pi = UniPoly::constant(ld.p.coeff(i));
        for (v, m) in value.iter_mut().zip(pw) {
            *v = &*v + &m.map(|e| &pi * e);
        }
    }
    if value.iter().any(|m| !m.is_zero()) {
        report.push(Finding::violation("polynomial-identity", format!("p(σ_Z(x)) = {}", display_tensor(&a, &value)), vec![]));
    }
    let images: Vec<Matrix<CentralPoly>> = (0..f.generator_count())
        .map(|g| {
            let (i, r) = f.generator_indices(g);
            powers[i][r].clone()
        })
        .collect();
    let images = f_of_images(f, &images)?;
    report.extend(images.report.clone());
    if field != FieldSpec::Rationals {
        report.push(Finding::info("field", format!("coefficients in {field}")));
    }
    Ok(LoopExtension { algebra: a, ad_terms, sigma_x, images, report })
}

fn unit_tensor(a: &FinAlgebra, n: usize) -> MatTensor {
    a.unit().iter().map(|u| Matrix::identity(n).map(|e: &CentralPoly| e * &UniPoly::constant(u.clone()))).collect()
}

fn tensor_mul(a: &FinAlgebra, x: &MatTensor, y: &MatTensor) -> MatTensor {
    let n = x[0].rows();
    let mut out = vec![Matrix::zeros(n, n); a.dim()];
    for (r, mx) in x.iter().enumerate() {
        if mx.is_zero() {
            continue;
        }
        for (s, my) in y.iter().enumerate() {
            if my.is_zero() {
                continue;
            }
            let prod = mx * my;
            for (t, o) in out.iter_mut().enumerate() {
                let c = a.c(r, s, t);
                if !c.is_zero() {
                    let cp = UniPoly::constant(c.clone());
                    *o = &*o + &prod.map(|e| &cp * e);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_nilpotent() {
        let z = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::zero()]]);
        assert!(matches!(LoopData::new(UniPoly::from_ints(&[1, 0, 1]), z), Err(ExtensionError::NotNilpotent(2))));
    }

    #[test]
    fn nilpotency_index() {
        let z = Matrix::from_fn(3, 3, |i, j| if j == i + 1 { Scalar::one() } else { Scalar::zero() });
        assert_eq!(LoopData::new(UniPoly::from_ints(&[-2, 0, 0, 1]), z).unwrap().nilpotency(), 3);
        assert_eq!(LoopData::new(UniPoly::from_ints(&[-2, 0, 0, 1]), Matrix::zeros(3, 3)).unwrap().nilpotency(), 1);
    }
}
