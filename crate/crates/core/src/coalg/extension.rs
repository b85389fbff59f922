use crate::exactnum::{Matrix, Scalar};
use crate::finalg::FinAlgebra;
use crate::report::{CheckReport, Finding};

use super::{dual_algebra, dual_coalgebra, CoalgError, FinCoalgebra};

/// `ρ: H → Hom(A,B)` with `ρ(h_i)(a_j) = sum_k rho[i][j][k] b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuringData {
    pub h: FinCoalgebra,
    pub a: FinAlgebra,
    pub b: FinAlgebra,
    rho: Vec<Scalar>,
}

impl MeasuringData {
    pub fn new(h: FinCoalgebra, a: FinAlgebra, b: FinAlgebra, rho: Vec<Vec<Vec<Scalar>>>) -> Result<Self, CoalgError> {
        let (nh, na, nb) = (h.dim(), a.dim(), b.dim());
        if rho.len() != nh || rho.iter().any(|r| r.len() != na || r.iter().any(|v| v.len() != nb)) {
            return Err(CoalgError::Shape(format!("rho must be {nh}x{na}x{nb}")));
        }
        Ok(Self { h, a, b, rho: rho.into_iter().flatten().flatten().collect() })
    }

    /// One matrix per `h_i`, column `j` holding the B-coordinates of `ρ(h_i)(a_j)`.
    pub fn from_maps(h: FinCoalgebra, a: FinAlgebra, b: FinAlgebra, maps: &[Matrix<Scalar>]) -> Result<Self, CoalgError> {
        if maps.len() != h.dim() || maps.iter().any(|m| m.rows() != b.dim() || m.cols() != a.dim()) {
            return Err(CoalgError::Shape("one dim(B) x dim(A) matrix per coalgebra basis element".into()));
        }
        let rho = maps
            .iter()
            .map(|m| (0..a.dim()).map(|j| m.column(j)).collect())
            .collect();
        Self::new(h, a, b, rho)
    }

    #[inline]
    pub fn rho(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.rho[(i * self.a.dim() + j) * self.b.dim() + k]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.h.dim())
            .map(|i| (0..self.a.dim()).map(|j| (0..self.b.dim()).map(|k| self.rho(i, j, k).clone()).collect()).collect())
            .collect()
    }

    /// `ρ(h_i)` applied to A-coordinates.
    pub fn apply(&self, i: usize, a: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.b.dim()];
        for (j, aj) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, o) in out.iter_mut().enumerate() {
                let r = self.rho(i, j, k);
                if !r.is_zero() {
                    *o += &(aj * r);
                }
            }
        }
        out
    }

    /// Lists every `(h, a, a′)` where the measuring law fails, and every `h`
    /// where the unit condition fails.
    pub fn verify(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let (nh, na) = (self.h.dim(), self.a.dim());
        let images: Vec<Vec<Vec<Scalar>>> =
            (0..nh).map(|i| (0..na).map(|j| self.apply(i, &self.a.basis_vector(j))).collect()).collect();
        for i in 0..nh {
            let cop = self.h.iterated_coproduct(i, 2);
            for j in 0..na {
                for jj in 0..na {
                    let lhs = self.apply(i, &self.a.mul_basis(j, jj));
                    let mut rhs = vec![Scalar::zero(); self.b.dim()];
                    for (slots, coef) in &cop {
                        let prod = self.b.mul(&images[slots[0]][j], &images[slots[1]][jj]);
                        for (r, p) in rhs.iter_mut().zip(prod) {
                            *r += &(coef * &p);
                        }
                    }
                    if lhs != rhs {
                        report.push(Finding::violation(
                            "measuring",
                            format!(
                                "ρ({})({}·{}) differs from the convolution of its coproduct",
                                self.h.labels()[i],
                                self.a.label(j),
                                self.a.label(jj)
                            ),
                            vec![i, j, jj],
                        ));
                    }
                }
            }
            let one = self.apply(i, self.a.unit());
            let want: Vec<Scalar> = self.b.unit().iter().map(|u| u * &self.h.counit()[i]).collect();
            if one != want {
                report.push(Finding::violation(
                    "measuring-unit",
                    format!("ρ({})(1) is not ε·1", self.h.labels()[i]),
                    vec![i],
                ));
            }
        }
        report
    }

    /// `σ: A → H*⊗B`, `σ(a_j) = sum rho[i][j][k] h_i*⊗b_k`.
    pub fn to_extension(&self) -> ExtensionMap {
        let (nh, na, nb) = (self.h.dim(), self.a.dim(), self.b.dim());
        let sigma = (0..na)
            .map(|j| (0..nh).map(|i| (0..nb).map(|k| self.rho(i, j, k).clone()).collect()).collect())
            .collect();
        ExtensionMap::new(self.a.clone(), dual_algebra(&self.h), self.b.clone(), sigma).expect("shape")
    }
}

/// Algebra map `σ: A → S⊗B`, `σ(a_i) = sum sigma[i][s][r] s_s⊗b_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionMap {
    pub a: FinAlgebra,
    pub s: FinAlgebra,
    pub b: FinAlgebra,
    sigma: Vec<Scalar>,
}

impl ExtensionMap {
    pub fn new(a: FinAlgebra, s: FinAlgebra, b: FinAlgebra, sigma: Vec<Vec<Vec<Scalar>>>) -> Result<Self, CoalgError> {
        let (na, ns, nb) = (a.dim(), s.dim(), b.dim());
        if sigma.len() != na || sigma.iter().any(|r| r.len() != ns || r.iter().any(|v| v.len() != nb)) {
            return Err(CoalgError::Shape(format!("sigma must be {na}x{ns}x{nb}")));
        }
        Ok(Self { a, s, b, sigma: sigma.into_iter().flatten().flatten().collect() })
    }

    /// `σ(a) = θ(a)⊗1` for a representation given by the images of the A-basis
    /// in `S` coordinates.
    pub fn from_representation(a: FinAlgebra, s: FinAlgebra, images: &[Vec<Scalar>]) -> Result<Self, CoalgError> {
        let b = FinAlgebra::base_field(a.field());
        let sigma = images.iter().map(|img| img.iter().map(|x| vec![x.clone()]).collect()).collect();
        Self::new(a, s, b, sigma)
    }

    /// `σ(a) = 1⊗φ(a)` for an algebra map `φ: A → B` given by the
    /// B-coordinates of each `φ(a_i)`; `S` is the base field.
    pub fn from_algebra_map(a: FinAlgebra, b: FinAlgebra, images: &[Vec<Scalar>]) -> Result<Self, CoalgError> {
        let s = FinAlgebra::base_field(a.field());
        let sigma = images.iter().map(|img| vec![img.clone()]).collect();
        Self::new(a, s, b, sigma)
    }

    #[inline]
    pub fn sigma(&self, i: usize, s: usize, r: usize) -> &Scalar {
        &self.sigma[(i * self.s.dim() + s) * self.b.dim() + r]
    }

    pub fn tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.a.dim())
            .map(|i| (0..self.s.dim()).map(|s| (0..self.b.dim()).map(|r| self.sigma(i, s, r).clone()).collect()).collect())
            .collect()
    }

    /// `σ(a_i)` as a flat element of `S⊗B`, index `s * dim B + r`.
    pub fn image(&self, i: usize) -> Vec<Scalar> {
        let n = self.s.dim() * self.b.dim();
        self.sigma[i * n..(i + 1) * n].to_vec()
    }

    fn image_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        let n = self.s.dim() * self.b.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (o, v) in out.iter_mut().zip(self.image(i)) {
                *o += &(ai * &v);
            }
        }
        out
    }

    /// Product in `S⊗B` on flat coordinates.
    pub fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let (ns, nb) = (self.s.dim(), self.b.dim());
        let mut out = vec![Scalar::zero(); ns * nb];
        for (p, xp) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (q, yq) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (s, r) = (p / nb, p % nb);
                let (t, u) = (q / nb, q % nb);
                let coef = xp * yq;
                for v in 0..ns {
                    let cs = self.s.c(s, t, v);
                    if cs.is_zero() {
                        continue;
                    }
                    for w in 0..nb {
                        let cb = self.b.c(r, u, w);
                        if !cb.is_zero() {
                            out[v * nb + w] += &(&coef * &(cs * cb));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn tensor_unit(&self) -> Vec<Scalar> {
        let nb = self.b.dim();
        let mut out = vec![Scalar::zero(); self.s.dim() * nb];
        for (s, us) in self.s.unit().iter().enumerate() {
            for (r, ub) in self.b.unit().iter().enumerate() {
                out[s * nb + r] = us * ub;
            }
        }
        out
    }

    /// Unitality and multiplicativity, every failing pair listed.
    pub fn verify(&self) -> CheckReport {
        let mut report = CheckReport::new();
        if self.image_of(self.a.unit()) != self.tensor_unit() {
            report.push(Finding::violation("extension-unit", "σ(1) is not 1⊗1", vec![]));
        }
        let na = self.a.dim();
        for i in 0..na {
            for j in 0..na {
                let lhs = self.image_of(&self.a.mul_basis(i, j));
                let rhs = self.tensor_mul(&self.image(i), &self.image(j));
                if lhs != rhs {
                    report.push(Finding::violation(
                        "extension-multiplicative",
                        format!("σ({}·{}) ≠ σ({})σ({})", self.a.label(i), self.a.label(j), self.a.label(i), self.a.label(j)),
                        vec![i, j],
                    ));
                }
            }
        }
        report
    }

    /// `ρ: S* → Hom(A,B)` on the dual coalgebra of `S`.
    pub fn to_measuring(&self) -> MeasuringData {
        let (na, ns, nb) = (self.a.dim(), self.s.dim(), self.b.dim());
        let rho = (0..ns)
            .map(|s| (0..na).map(|i| (0..nb).map(|r| self.sigma(i, s, r).clone()).collect()).collect())
            .collect();
        MeasuringData::new(dual_coalgebra(&self.s), self.a.clone(), self.b.clone(), rho).expect("shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FieldSpec, UniPoly};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn complex() -> FinAlgebra {
        FinAlgebra::quotient_poly(&UniPoly::from_ints(&[1, 0, 1]), &q()).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::int(v)).collect()).collect())
    }

    fn conjugation() -> MeasuringData {
        let a = complex();
        MeasuringData::from_maps(FinCoalgebra::grouplike(&q()), a.clone(), a, &[m(&[&[1, 0], &[0, -1]])]).unwrap()
    }

    fn derivation(delta: Matrix<Scalar>) -> MeasuringData {
        let a = FinAlgebra::dual_numbers(&q());
        MeasuringData::from_maps(FinCoalgebra::derivation_pair(&q()), a.clone(), a, &[Matrix::identity(2), delta])
            .unwrap()
    }

    #[test]
    fn grouplike_conjugation_measures() {
        assert!(conjugation().verify().is_clean());
    }

    #[test]
    fn euler_derivation_measures() {
        assert!(derivation(m(&[&[0, 0], &[0, 1]])).verify().is_clean());
    }

    #[test]
    fn bad_derivation_located() {
        let report = derivation(m(&[&[0, 1], &[0, 0]])).verify();
        let v: Vec<_> = report.violations().map(|f| f.location.clone()).collect();
        assert!(v.contains(&vec![1, 1, 1]), "{v:?}");
    }

    #[test]
    fn perturbed_conjugation_fails() {
        let a = complex();
        let bad = MeasuringData::from_maps(FinCoalgebra::grouplike(&q()), a.clone(), a, &[m(&[&[1, 0], &[0, -2]])])
            .unwrap();
        assert!(bad.verify().violations().any(|f| f.location == vec![0, 1, 1]));
    }

    #[test]
    fn conjugation_as_extension() {
        let ext = conjugation().to_extension();
        assert_eq!(ext.s.dim(), 1);
        assert_eq!(ext.image(1), vec![Scalar::zero(), Scalar::int(-1)]);
        assert!(ext.verify().is_clean());
    }

    #[test]
    fn dualize_round_trips() {
        for md in [conjugation(), derivation(m(&[&[0, 0], &[0, 1]]))] {
            let ext = md.to_extension();
            assert!(ext.verify().is_clean());
            let back = ext.to_measuring();
            assert_eq!(back.tensor(), md.tensor());
            assert!(back.h.same_structure(&md.h));
            assert!(back.verify().is_clean());
            let again = back.to_extension();
            assert_eq!(again.tensor(), ext.tensor());
        }
    }
}
