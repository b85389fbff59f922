//! Extensions of `ℚ[x]/p` built from roots of `p`: the Vandermonde family
//! `W_σ` and the nilpotent loop family `σ_Z`.

mod loops;

use serde::Serialize;
use thiserror::Error;

use crate::coalg::{CoalgError, ExtensionMap};
use crate::exactnum::{mat_inv, rank, FieldSpec, Matrix, NumError, Scalar, UniPoly};
use crate::finalg::{AlgebraError, FinAlgebra};
use crate::report::{CheckReport, Finding};
use crate::sweedler::{f_of_extension, AlgebraMapImage, SweedlerError, SweedlerPresentation};

pub use loops::{loop_extension, LoopData, LoopExtension};

#[derive(Debug, Clone, Error)]
pub enum ExtensionError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("Z is not nilpotent: Z^{0} ≠ 0")]
    NotNilpotent(usize),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    Sweedler(#[from] SweedlerError),
}

/// Roots `μ_0..μ_{n-1}` of a rational monic `p` in a field `k`, with
/// `V[i][j] = μ_j^i`.
#[derive(Debug, Clone)]
pub struct VandermondeData {
    p: UniPoly,
    field: FieldSpec,
    roots: Vec<Scalar>,
    v: Matrix<Scalar>,
    v_inv: Matrix<Scalar>,
    /// Default function, zero-indexed.
    pub sigma: Vec<usize>,
}

impl VandermondeData {
    pub fn new(p: UniPoly, field: FieldSpec, roots: Vec<Scalar>, sigma: Vec<usize>) -> Result<Self, ExtensionError> {
        let n = match p.degree() {
            Some(d) if d >= 1 && p.is_monic() => d,
            _ => return Err(ExtensionError::Input(format!("{} is not monic of positive degree", p.display_in("x")))),
        };
        if p.rational_coeffs().is_none() {
            return Err(ExtensionError::Input("p must have rational coefficients".into()));
        }
        if roots.len() != n {
            return Err(ExtensionError::Input(format!("need {n} roots, got {}", roots.len())));
        }
        for (j, mu) in roots.iter().enumerate() {
            if let (Some(nf), FieldSpec::NumberField(k)) = (mu.number_field(), &field) {
                if **nf != **k {
                    return Err(ExtensionError::Input(format!("root {} is not in {field}", j + 1)));
                }
            } else if mu.number_field().is_some() {
                return Err(ExtensionError::Input(format!("root {} is not in {field}", j + 1)));
            }
            if !p.eval(mu).is_zero() {
                return Err(ExtensionError::Input(format!("p({mu}) ≠ 0")));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if roots[i] == roots[j] {
                    return Err(ExtensionError::Input(format!("repeated root {}", roots[i])));
                }
            }
        }
        let v = Matrix::from_fn(n, n, |i, j| roots[j].pow(i as u32));
        let v_inv = mat_inv(&v)?;
        let vd = Self { p, field, roots, v, v_inv, sigma: Vec::new() };
        vd.check_function(&sigma)?;
        Ok(Self { sigma, ..vd })
    }

    pub fn p(&self) -> &UniPoly {
        &self.p
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    pub fn n(&self) -> usize {
        self.roots.len()
    }

    pub fn v(&self) -> &Matrix<Scalar> {
        &self.v
    }

    pub fn check_function(&self, sigma: &[usize]) -> Result<(), ExtensionError> {
        if sigma.len() != self.n() || sigma.iter().any(|&s| s >= self.n()) {
            return Err(ExtensionError::Input(format!("σ must map [{0}] to [{0}], got {sigma:?}", self.n())));
        }
        Ok(())
    }

    /// `W_σ` on the power basis: evaluate at the roots, read the value at
    /// `μ_{σ(j)}` into slot `j`, interpolate back.
    pub fn w_matrix(&self, sigma: &[usize]) -> Result<Matrix<Scalar>, ExtensionError> {
        self.check_function(sigma)?;
        let n = self.n();
        let p = Matrix::from_fn(n, n, |j, k| if sigma[j] == k { Scalar::one() } else { Scalar::zero() });
        // E = Vᵀ sends power coordinates to values at the roots.
        let e = self.v.transpose();
        let e_inv = self.v_inv.transpose();
        Ok(&(&e_inv * &p) * &e)
    }

    /// Coordinates of `W_σ(x)`.
    pub fn w(&self, sigma: &[usize]) -> Result<Vec<Scalar>, ExtensionError> {
        let m = self.w_matrix(sigma)?;
        let x = self.x_coords();
        Ok(m.apply(&x))
    }

    fn x_coords(&self) -> Vec<Scalar> {
        let n = self.n();
        let mut x = vec![Scalar::zero(); n];
        if n >= 2 {
            x[1] = Scalar::one();
        } else {
            x[0] = -self.p.coeff(0);
        }
        x
    }

    pub fn algebra(&self) -> Result<FinAlgebra, ExtensionError> {
        Ok(FinAlgebra::quotient_poly(&self.p, &FieldSpec::Rationals)?)
    }

    /// `k` as a `ℚ`-algebra on the basis `1, t, t^2, …`.
    pub fn scalars(&self) -> Result<FinAlgebra, ExtensionError> {
        match &self.field {
            FieldSpec::Rationals => Ok(FinAlgebra::base_field(&FieldSpec::Rationals)),
            FieldSpec::NumberField(nf) => {
                let m = UniPoly::new(nf.modulus().iter().cloned().map(Scalar::Rat).collect());
                let labels = (0..nf.degree())
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "t".to_string(),
                        _ => format!("t^{i}"),
                    })
                    .collect();
                Ok(FinAlgebra::quotient_poly(&m, &FieldSpec::Rationals)?.with_labels(labels))
            }
        }
    }

    fn rational_coords(&self, s: &Scalar) -> Vec<Scalar> {
        let d = self.field.degree();
        let mut c: Vec<Scalar> = s.coeffs().into_iter().map(Scalar::Rat).collect();
        c.resize(d, Scalar::zero());
        c
    }

    fn show_function(sigma: &[usize]) -> String {
        format!("({})", sigma.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(","))
    }
}

#[derive(Debug, Clone)]
pub struct VandermondeExtension {
    pub sigma: Vec<usize>,
    pub w_matrix: Matrix<Scalar>,
    /// `W_σ(x) = Σ w_i ⊗ x^i`.
    pub w: Vec<Scalar>,
    pub extension: ExtensionMap,
    pub images: AlgebraMapImage,
    pub report: CheckReport,
}

/// `x ↦ Σ w_i ⊗ x^i` as an extension `ℚ[x]/p → k⊗ℚ[x]/p` and its image
/// under `F(-)` for `f = F(ℚ[x]/p, ℚ[x]/p)`.
pub fn vandermonde_extension(
    vd: &VandermondeData,
    sigma: &[usize],
    f: &SweedlerPresentation,
) -> Result<VandermondeExtension, ExtensionError> {
    let a = vd.algebra()?;
    if !f.a().same_structure(&a) || !f.b().same_structure(&a) {
        return Err(ExtensionError::Input("the presentation must be F(ℚ[x]/p, ℚ[x]/p)".into()));
    }
    let s = vd.scalars()?;
    let wm = vd.w_matrix(sigma)?;
    let n = vd.n();
    let tensor: Vec<Vec<Vec<Scalar>>> = (0..n)
        .map(|i| {
            let coords: Vec<Vec<Scalar>> = (0..n).map(|r| vd.rational_coords(wm.get(r, i))).collect();
            (0..s.dim()).map(|k| (0..n).map(|r| coords[r][k].clone()).collect()).collect()
        })
        .collect();
    let extension = ExtensionMap::new(a.clone(), s, a, tensor)?;
    let mut report = extension.verify();
    let images = f_of_extension(f, &extension)?;
    report.extend(images.report.clone());
    let w = vd.w(sigma)?;
    Ok(VandermondeExtension { sigma: sigma.to_vec(), w_matrix: wm, w, extension, images, report })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCheck {
    pub root: String,
    /// `π_μ(W_σ(x)) = Σ w_i μ^i`.
    pub value: String,
    /// `σ̄(μ)` for the field map determined by the first generating root.
    pub expected: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub sigma: String,
    pub w: Vec<String>,
    pub automorphism: Option<String>,
    pub roots: Vec<RootCheck>,
    pub galois: bool,
    pub summary: String,
    pub report: CheckReport,
}

/// Decides whether `W_σ` comes from a field automorphism `σ̄` with
/// `π_{σ̄(μ)}(x) = π_μ(W_σ(x))` at every root.
///
/// `π_μ(W_σ(x)) = μ_{σ(j)}` at `μ_j` for every function σ, so `σ̄` is pinned
/// by a root generating `k`: `σ̄(t) = h(ν)` when `t = h(μ)`. It must be a
/// root of the modulus and then has to match at every other root.
pub fn galois_check(vd: &VandermondeData, sigma: &[usize]) -> Result<GaloisReport, ExtensionError> {
    let w = vd.w(sigma)?;
    let values: Vec<Scalar> = vd
        .roots
        .iter()
        .map(|mu| w.iter().enumerate().fold(Scalar::zero(), |acc, (i, wi)| &acc + &(wi * &mu.pow(i as u32))))
        .collect();
    let mut report = CheckReport::new();
    for (j, v) in values.iter().enumerate() {
        if *v != vd.roots[sigma[j]] {
            report.push(Finding::violation("evaluation", format!("π_μ(W_σ(x)) = {v} at μ{}", j + 1), vec![j]));
        }
    }
    let t_image = field_map(vd, &values, &mut report);
    let mut roots = Vec::new();
    for (j, mu) in vd.roots.iter().enumerate() {
        let expected = t_image.as_ref().map(|t| mu.substitute(t));
        let ok = expected.as_ref() == Some(&values[j]);
        roots.push(RootCheck {
            root: mu.to_string(),
            value: values[j].to_string(),
            expected: expected.map_or_else(|| "undetermined".into(), |e| e.to_string()),
            ok,
        });
    }
    let galois = roots.iter().all(|r| r.ok);
    let sigma_s = VandermondeData::show_function(sigma);
    let summary = if galois {
        format!("σ = {sigma_s} corresponds to a Galois transformation")
    } else {
        let bad: Vec<String> = roots.iter().enumerate().filter(|(_, r)| !r.ok).map(|(j, _)| format!("μ{}", j + 1)).collect();
        format!("σ = {sigma_s} does not correspond to a Galois transformation (fails at {})", bad.join(", "))
    };
    let automorphism = t_image.map(|t| match vd.field {
        FieldSpec::Rationals => "identity of Q".to_string(),
        _ => format!("t ↦ {t}"),
    });
    Ok(GaloisReport { sigma: sigma_s, w: w.iter().map(|x| x.to_string()).collect(), automorphism, roots, galois, summary, report })
}

/// `σ̄(t)`, or `None` if no single root generates `k` or the candidate is
/// not a root of the modulus.
fn field_map(vd: &VandermondeData, values: &[Scalar], report: &mut CheckReport) -> Option<Scalar> {
    let FieldSpec::NumberField(nf) = &vd.field else {
        return Some(Scalar::zero());
    };
    let d = nf.degree();
    for (j, mu) in vd.roots.iter().enumerate() {
        let rows: Vec<Vec<Scalar>> = (0..d).map(|i| vd.rational_coords(&mu.pow(i as u32))).collect();
        let m = Matrix::from_rows(rows);
        if rank(&m) < d {
            continue;
        }
        // t = Σ h_i μ^i, so h solves hᵀ M = coords(t).
        let mt_inv = mat_inv(&m.transpose()).ok()?;
        let h = mt_inv.apply(&vd.rational_coords(&Scalar::generator(nf)));
        let image = h.iter().enumerate().fold(Scalar::zero(), |acc, (i, hi)| &acc + &(hi * &values[j].pow(i as u32)));
        let modulus = UniPoly::new(nf.modulus().iter().cloned().map(Scalar::Rat).collect());
        if !modulus.eval(&image).is_zero() {
            report.push(Finding::info("field-map", format!("t ↦ {image} is not a root of the modulus, so no field map exists")));
            return None;
        }
        return Some(image);
    }
    report.push(Finding::warn("field-map", "no single root generates the field; σ̄ is undetermined"));
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub sigma: String,
    pub tau: String,
    /// `W_σ·W_τ = W_{σ∘τ}`.
    pub sigma_tau: bool,
    /// `W_σ·W_τ = W_{τ∘σ}`.
    pub tau_sigma: bool,
    pub product: Vec<Vec<String>>,
}

/// `W_σ·W_τ` against both composites; `(σ∘τ)(j) = σ(τ(j))`.
pub fn monoid_check(vd: &VandermondeData, sigma: &[usize], tau: &[usize]) -> Result<MonoidReport, ExtensionError> {
    let prod = &vd.w_matrix(sigma)? * &vd.w_matrix(tau)?;
    let st = compose(sigma, tau);
    let ts = compose(tau, sigma);
    Ok(MonoidReport {
        sigma: VandermondeData::show_function(sigma),
        tau: VandermondeData::show_function(tau),
        sigma_tau: prod == vd.w_matrix(&st)?,
        tau_sigma: prod == vd.w_matrix(&ts)?,
        product: prod.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
    })
}

pub fn compose(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&t| sigma[t]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidClosure {
    pub functions: Vec<String>,
    pub law: String,
    /// `table[a][b]` is the index of the function `f` with `W_a·W_b = W_f`.
    pub table: Vec<Vec<usize>>,
    pub report: CheckReport,
}

/// All `n^n` functions, pairwise. The composition law is read off the
/// first pair that distinguishes the two orders and then demanded of all.
pub fn monoid_closure(vd: &VandermondeData) -> Result<MonoidClosure, ExtensionError> {
    let n = vd.n();
    if n > 4 {
        return Err(ExtensionError::Input(format!("{n}^{n} functions is too many to enumerate")));
    }
    let mut functions: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        functions = functions
            .into_iter()
            .flat_map(|f| (0..n).map(move |k| {
                let mut g = f.clone();
                g.push(k);
                g
            }))
            .collect();
    }
    let ws: Vec<Matrix<Scalar>> = functions.iter().map(|f| vd.w_matrix(f)).collect::<Result<_, _>>()?;
    let checks: Vec<Vec<MonoidReport>> = functions
        .iter()
        .map(|s| functions.iter().map(|t| monoid_check(vd, s, t)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let tau_sigma = checks.iter().flatten().all(|c| c.tau_sigma);
    let sigma_tau = checks.iter().flatten().all(|c| c.sigma_tau);
    let law = match (sigma_tau, tau_sigma) {
        (_, true) if !sigma_tau => "W_σ·W_τ = W_{τ∘σ}",
        (true, false) => "W_σ·W_τ = W_{σ∘τ}",
        (true, true) => "W_σ·W_τ = W_{σ∘τ} = W_{τ∘σ}",
        _ => "no composition law holds for all pairs",
    }
    .to_string();
    let mut report = CheckReport::new();
    let mut table = vec![vec![0; functions.len()]; functions.len()];
    for (a, row) in checks.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            let prod = &ws[a] * &ws[b];
            match ws.iter().position(|w| *w == prod) {
                Some(k) => table[a][b] = k,
                None => report.push(Finding::violation("closure", format!("W_{}·W_{} is not of the form W_f", c.sigma, c.tau), vec![a, b])),
            }
            if !(tau_sigma && c.tau_sigma || sigma_tau && c.sigma_tau) {
                report.push(Finding::violation("composition", format!("{law} fails for σ = {}, τ = {}", c.sigma, c.tau), vec![a, b]));
            }
        }
    }
    Ok(MonoidClosure {
        functions: functions.iter().map(|f| VandermondeData::show_function(f)).collect(),
        law,
        table,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> VandermondeData {
        let k = FieldSpec::number_field(UniPoly::from_ints(&[1, 0, 1]).rational_coeffs().unwrap()).unwrap();
        let t = Scalar::generator(k.as_number_field().unwrap());
        VandermondeData::new(UniPoly::from_ints(&[1, 0, 1]), k, vec![t.clone(), -t], vec![1, 0]).unwrap()
    }

    #[test]
    fn swap_is_conjugation() {
        let vd = gaussian();
        assert_eq!(vd.w(&[1, 0]).unwrap(), vec![Scalar::zero(), Scalar::int(-1)]);
        assert_eq!(vd.w(&[0, 1]).unwrap(), vec![Scalar::zero(), Scalar::one()]);
        assert_eq!(vd.w_matrix(&[0, 1]).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn rejects_bad_roots() {
        let k = FieldSpec::number_field(UniPoly::from_ints(&[1, 0, 1]).rational_coeffs().unwrap()).unwrap();
        let t = Scalar::generator(k.as_number_field().unwrap());
        let p = UniPoly::from_ints(&[1, 0, 1]);
        assert!(VandermondeData::new(p.clone(), k.clone(), vec![t.clone(), t.clone()], vec![0, 1]).is_err());
        assert!(VandermondeData::new(p.clone(), k.clone(), vec![t.clone(), Scalar::one()], vec![0, 1]).is_err());
        assert!(VandermondeData::new(p, k, vec![t.clone(), -t], vec![0, 2]).is_err());
    }

    #[test]
    fn swap_squared_is_identity() {
        let vd = gaussian();
        let m = monoid_check(&vd, &[1, 0], &[1, 0]).unwrap();
        assert!(m.sigma_tau && m.tau_sigma);
        assert_eq!(m.product, vec![vec!["1", "0"], vec!["0", "1"]]);
    }

    #[test]
    fn composition_order() {
        // constant-at-0 after swap vs swap after constant-at-0 differ.
        let vd = gaussian();
        let m = monoid_check(&vd, &[0, 0], &[1, 0]).unwrap();
        assert!(m.tau_sigma && !m.sigma_tau);
        assert_eq!(compose(&[0, 0], &[1, 0]), vec![0, 0]);
        assert_eq!(compose(&[1, 0], &[0, 0]), vec![1, 1]);
    }

    #[test]
    fn identity_is_galois() {
        let vd = gaussian();
        let g = galois_check(&vd, &[0, 1]).unwrap();
        assert!(g.galois);
        assert_eq!(g.automorphism.as_deref(), Some("t ↦ t"));
    }
}
