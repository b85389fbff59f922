//! Finite-dimensional modules and comodules, measuring comodules, and the
//! universal measuring module `D(M,N)`.

mod dmodule;

use serde::Serialize;
use thiserror::Error;

use crate::coalg::{dual_coalgebra, CoalgError, ExtensionMap, FinCoalgebra, MeasuringData};
use crate::exactnum::{Matrix, Scalar};
use crate::finalg::FinAlgebra;
use crate::freealg::RewriteError;
use crate::report::{CheckReport, Finding};
use crate::sweedler::SweedlerError;

pub use dmodule::{
    build_d, d_of_extension, naturality_check, tau_map, DExtensionImages, ModulePresentation, TauTable,
};

#[derive(Debug, Clone, Error)]
pub enum ModuleError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("not a module: {0}")]
    NotModule(String),
    #[error("not a comodule: {0}")]
    NotComodule(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Sweedler(#[from] SweedlerError),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
}

/// Left module: `ρ(a_i)` acts on column vectors of length `dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinModule {
    algebra: FinAlgebra,
    action: Vec<Matrix<Scalar>>,
    labels: Vec<String>,
    weights: Vec<u32>,
}

impl FinModule {
    pub fn new(algebra: FinAlgebra, action: Vec<Matrix<Scalar>>) -> Result<Self, ModuleError> {
        let m = Self::new_unchecked(algebra, action)?;
        if let Some(v) = m.validate().first_violation() {
            return Err(ModuleError::NotModule(v.detail.clone()));
        }
        Ok(m)
    }

    pub fn new_unchecked(algebra: FinAlgebra, action: Vec<Matrix<Scalar>>) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::Shape(format!("need {} action matrices, got {}", algebra.dim(), action.len())));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(ModuleError::Shape("action matrices must all be square of one size".into()));
        }
        let labels = (0..dim).map(|p| format!("m{p}")).collect();
        Ok(Self { algebra, action, labels, weights: vec![0; dim] })
    }

    /// `A` acting on itself by left multiplication, weights inherited.
    pub fn regular(a: &FinAlgebra) -> Self {
        let n = a.dim();
        let action = (0..n).map(|i| Matrix::from_fn(n, n, |k, s| a.c(i, s, k).clone())).collect();
        Self { algebra: a.clone(), action, labels: a.labels().to_vec(), weights: a.weights().to_vec() }
    }

    /// `k^dim` over the scalars of `a`, where `a` is one-dimensional.
    pub fn trivial(a: &FinAlgebra, dim: usize) -> Result<Self, ModuleError> {
        if a.dim() != 1 {
            return Err(ModuleError::Input("a trivial module needs a one-dimensional algebra".into()));
        }
        Self::new(a.clone(), vec![Matrix::identity(dim).scale(&a.unit()[0].inv().expect("unit ≠ 0"))])
    }

    /// `k^n` as a module over `matrix_algebra(n)`.
    pub fn standard(n: usize, field: &crate::exactnum::FieldSpec) -> Self {
        let action = (0..n * n)
            .map(|e| Matrix::from_fn(n, n, |i, j| if i * n + j == e { Scalar::one() } else { Scalar::zero() }))
            .collect();
        Self::new(FinAlgebra::matrix_algebra(n, field), action).expect("matrix units act on k^n")
    }

    /// The zero module.
    pub fn zero(a: &FinAlgebra) -> Self {
        Self { algebra: a.clone(), action: vec![Matrix::zeros(0, 0); a.dim()], labels: vec![], weights: vec![] }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.dim());
        self.weights = weights;
        self
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn action(&self, i: usize) -> &Matrix<Scalar> {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix<Scalar>] {
        &self.action
    }

    /// `ρ(a)` for `a` in coordinates.
    pub fn act(&self, a: &[Scalar]) -> Matrix<Scalar> {
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (c, m) in a.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: usize) -> &str {
        &self.labels[p]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn validate(&self) -> CheckReport {
        let a = &self.algebra;
        let mut report = CheckReport::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if &self.action[i] * &self.action[j] != self.act(&a.mul_basis(i, j)) {
                    report.push(Finding::violation(
                        "module-associativity",
                        format!("ρ({})ρ({}) ≠ ρ({}{})", a.label(i), a.label(j), a.label(i), a.label(j)),
                        vec![i, j],
                    ));
                }
            }
        }
        if self.act(a.unit()) != Matrix::identity(self.dim()) {
            report.push(Finding::violation("module-unit", "ρ(1) is not the identity", vec![]));
        }
        report
    }

    /// Block sum; labels of the second summand get a prime.
    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule, ModuleError> {
        if !self.algebra.same_structure(&other.algebra) {
            return Err(ModuleError::Input("summands are modules over different algebras".into()));
        }
        let (d1, d2) = (self.dim(), other.dim());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                Matrix::from_fn(d1 + d2, d1 + d2, |i, j| match (i < d1, j < d1) {
                    (true, true) => x.get(i, j).clone(),
                    (false, false) => y.get(i - d1, j - d1).clone(),
                    _ => Scalar::zero(),
                })
            })
            .collect();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        let mut weights = self.weights.clone();
        weights.extend(&other.weights);
        Ok(FinModule { algebra: self.algebra.clone(), action, labels, weights })
    }

    /// Whether `φ` (`dim other x dim self`) commutes with the action.
    pub fn is_module_map(&self, other: &FinModule, phi: &Matrix<Scalar>) -> bool {
        phi.rows() == other.dim()
            && phi.cols() == self.dim()
            && self.action.iter().zip(&other.action).all(|(x, y)| &(phi * x) == &(y * phi))
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            basis: self.labels.clone(),
            weights: self.weights.clone(),
            action: self.action.iter().map(|m| m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()).collect(),
        }
    }

    /// A module over `algebra` from its action matrices; missing labels and
    /// weights take the defaults.
    pub fn from_json(algebra: &FinAlgebra, j: &ModuleJson) -> Result<Self, ModuleError> {
        let field = algebra.field();
        let action = j
            .action
            .iter()
            .map(|m| {
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(|s| crate::text::parse_scalar(s, field)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| ModuleError::Input(format!("action entry: {e}")))?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(ModuleError::Shape("action matrices must be square".into()));
                }
                Ok(if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_rows(rows) })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut m = Self::new(algebra.clone(), action)?;
        if !j.basis.is_empty() {
            if j.basis.len() != m.dim() {
                return Err(ModuleError::Shape(format!("{} labels for dimension {}", j.basis.len(), m.dim())));
            }
            m.labels = j.basis.clone();
        }
        if !j.weights.is_empty() {
            if j.weights.len() != m.dim() {
                return Err(ModuleError::Shape(format!("{} weights for dimension {}", j.weights.len(), m.dim())));
            }
            m.weights = j.weights.clone();
        }
        Ok(m)
    }
}

/// A module as its action matrices, one per basis element of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct ModuleJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<u32>,
    pub action: Vec<Vec<Vec<String>>>,
}

/// `Δ_X x_u = Σ delta[u][h][v] h_h⊗x_v`; the coalgebra leg comes first.
#[derive(Debug, Clone, PartialEq)]
pub struct FinComodule {
    coalgebra: FinCoalgebra,
    labels: Vec<String>,
    delta: Vec<Vec<Vec<Scalar>>>,
}

impl FinComodule {
    pub fn new(coalgebra: FinCoalgebra, labels: Vec<String>, delta: Vec<Vec<Vec<Scalar>>>) -> Result<Self, ModuleError> {
        let c = Self::new_unchecked(coalgebra, labels, delta)?;
        if let Some(v) = c.validate().first_violation() {
            return Err(ModuleError::NotComodule(v.detail.clone()));
        }
        Ok(c)
    }

    pub fn new_unchecked(coalgebra: FinCoalgebra, labels: Vec<String>, delta: Vec<Vec<Vec<Scalar>>>) -> Result<Self, ModuleError> {
        let (n, h) = (labels.len(), coalgebra.dim());
        if delta.len() != n || delta.iter().any(|r| r.len() != h || r.iter().any(|v| v.len() != n)) {
            return Err(ModuleError::Shape(format!("coaction must be {n}x{h}x{n}")));
        }
        Ok(Self { coalgebra, labels, delta })
    }

    pub fn coalgebra(&self) -> &FinCoalgebra {
        &self.coalgebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn delta(&self, u: usize, h: usize, v: usize) -> &Scalar {
        &self.delta[u][h][v]
    }

    /// `(Δ_C⊗1)Δ_X = (1⊗Δ_X)Δ_X` and `(ε⊗1)Δ_X = id`, coordinatewise.
    pub fn validate(&self) -> CheckReport {
        let (n, nh) = (self.dim(), self.coalgebra.dim());
        let mut report = CheckReport::new();
        for u in 0..n {
            for h1 in 0..nh {
                for h2 in 0..nh {
                    for v in 0..n {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for h in 0..nh {
                            lhs += &(&self.delta[u][h][v] * self.coalgebra.d(h, h1, h2));
                        }
                        for w in 0..n {
                            rhs += &(&self.delta[u][h1][w] * &self.delta[w][h2][v]);
                        }
                        if lhs != rhs {
                            report.push(Finding::violation(
                                "comodule-coassociativity",
                                format!("coefficient of {}⊗{}⊗{} in the coaction of {}", self.coalgebra.labels()[h1], self.coalgebra.labels()[h2], self.labels[v], self.labels[u]),
                                vec![u, h1, h2, v],
                            ));
                        }
                    }
                }
            }
            for v in 0..n {
                let mut e = Scalar::zero();
                for h in 0..nh {
                    e += &(&self.coalgebra.counit()[h] * &self.delta[u][h][v]);
                }
                let want = if u == v { Scalar::one() } else { Scalar::zero() };
                if e != want {
                    report.push(Finding::violation("comodule-counit", format!("(ε⊗1)Δ({}) ≠ {}", self.labels[u], self.labels[u]), vec![u, v]));
                }
            }
        }
        report
    }

    pub fn coaction_table(&self) -> Vec<String> {
        let hl = self.coalgebra.labels();
        (0..self.dim())
            .map(|u| {
                let mut parts = Vec::new();
                for h in 0..self.coalgebra.dim() {
                    for v in 0..self.dim() {
                        let c = &self.delta[u][h][v];
                        if c.is_zero() {
                            continue;
                        }
                        let body = format!("{}⊗{}", hl[h], self.labels[v]);
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
                }
                let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ").replace("+ -", "- ") };
                format!("Δ({}) = {rhs}", self.labels[u])
            })
            .collect()
    }
}

/// `N* = N°` over `B° = B*`: `⟨ν, b·n⟩ = Σ⟨ν₍₁₎,b⟩⟨ν₍₀₎,n⟩`.
pub fn dual_comodule(n: &FinModule) -> FinComodule {
    let d = n.dim();
    let b = n.algebra();
    let delta = (0..d)
        .map(|u| (0..b.dim()).map(|r| (0..d).map(|v| n.action(r).get(u, v).clone()).collect()).collect())
        .collect();
    let labels = n.labels().iter().map(|l| format!("{l}*")).collect();
    FinComodule::new_unchecked(dual_coalgebra(b), labels, delta).expect("shape")
}

/// Checks `γ(x)(a·m) = Σ ρ(x₍₁₎)(a)·γ(x₍₀₎)(m)` for a measuring `ρ: H → Hom(A,B)`;
/// `gamma[x]` is `γ(x_x)` as a `dim N x dim M` matrix.
pub fn verify_measuring_comodule(
    gamma: &[Matrix<Scalar>],
    rho: &MeasuringData,
    x: &FinComodule,
    m: &FinModule,
    n: &FinModule,
) -> Result<CheckReport, ModuleError> {
    if !x.coalgebra().same_structure(&rho.h) || !m.algebra().same_structure(&rho.a) || !n.algebra().same_structure(&rho.b) {
        return Err(ModuleError::Input("comodule, modules and measuring map do not fit together".into()));
    }
    if gamma.len() != x.dim() || gamma.iter().any(|g| g.rows() != n.dim() || g.cols() != m.dim()) {
        return Err(ModuleError::Shape(format!("need {} matrices of size {}x{}", x.dim(), n.dim(), m.dim())));
    }
    let mut report = CheckReport::new();
    for u in 0..x.dim() {
        for i in 0..rho.a.dim() {
            let lhs = &gamma[u] * m.action(i);
            let mut rhs = Matrix::zeros(n.dim(), m.dim());
            for h in 0..x.coalgebra().dim() {
                for v in 0..x.dim() {
                    let c = x.delta(u, h, v);
                    if c.is_zero() {
                        continue;
                    }
                    let b = rho.apply(h, &rho.a.basis_vector(i));
                    rhs = &rhs + &(&n.act(&b) * &gamma[v]).scale(c);
                }
            }
            if lhs != rhs {
                for p in 0..m.dim() {
                    if lhs.column(p) != rhs.column(p) {
                        report.push(Finding::violation(
                            "measuring-comodule",
                            format!("γ({})({}·{}) differs from the coaction side", x.labels()[u], rho.a.label(i), m.label(p)),
                            vec![u, i, p],
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Module map `ρ: M → W⊗N` over an extension `σ: A → S⊗B`, `W` an
/// `S`-module. `rho[p]` holds `ρ(m_p)` as a `dim W x dim N` matrix.
#[derive(Debug, Clone)]
pub struct ModuleExtension {
    pub sigma: ExtensionMap,
    pub m: FinModule,
    pub w: FinModule,
    pub n: FinModule,
    rho: Vec<Matrix<Scalar>>,
}

impl ModuleExtension {
    pub fn new(sigma: ExtensionMap, m: FinModule, w: FinModule, n: FinModule, rho: Vec<Matrix<Scalar>>) -> Result<Self, ModuleError> {
        if !m.algebra().same_structure(&sigma.a) || !w.algebra().same_structure(&sigma.s) || !n.algebra().same_structure(&sigma.b) {
            return Err(ModuleError::Input("modules do not match the extension's algebras".into()));
        }
        if rho.len() != m.dim() || rho.iter().any(|r| r.rows() != w.dim() || r.cols() != n.dim()) {
            return Err(ModuleError::Shape(format!("need {} matrices of size {}x{}", m.dim(), w.dim(), n.dim())));
        }
        Ok(Self { sigma, m, w, n, rho })
    }

    pub fn rho(&self, p: usize) -> &Matrix<Scalar> {
        &self.rho[p]
    }

    /// `σ(a)` acting on `W⊗N`-matrices: `R ↦ Σ θ(s)·R·ρ_N(b)ᵀ`.
    fn act(&self, i: usize, r: &Matrix<Scalar>) -> Matrix<Scalar> {
        let mut out = Matrix::zeros(self.w.dim(), self.n.dim());
        for k in 0..self.sigma.s.dim() {
            for b in 0..self.sigma.b.dim() {
                let c = self.sigma.sigma(i, k, b);
                if !c.is_zero() {
                    out = &out + &(&(self.w.action(k) * r) * &self.n.action(b).transpose()).scale(c);
                }
            }
        }
        out
    }

    /// `ρ(a_i·m_p) = σ(a_i)·ρ(m_p)` for all basis pairs.
    pub fn verify(&self) -> CheckReport {
        let mut report = self.sigma.verify();
        for i in 0..self.m.algebra().dim() {
            for p in 0..self.m.dim() {
                let mut lhs = Matrix::zeros(self.w.dim(), self.n.dim());
                for q in 0..self.m.dim() {
                    let c = self.m.action(i).get(q, p);
                    if !c.is_zero() {
                        lhs = &lhs + &self.rho[q].scale(c);
                    }
                }
                if lhs != self.act(i, &self.rho[p]) {
                    report.push(Finding::violation(
                        "module-extension",
                        format!("ρ({}·{}) ≠ σ({})ρ({})", self.m.algebra().label(i), self.m.label(p), self.m.algebra().label(i), self.m.label(p)),
                        vec![i, p],
                    ));
                }
            }
        }
        report
    }

    /// The dual picture: `X = W°` over `S°`, `γ(ω)(m) = (ω⊗1)ρ(m)`, measuring
    /// through `σ`.
    pub fn to_measuring_comodule(&self) -> (FinComodule, Vec<Matrix<Scalar>>, MeasuringData) {
        let x = dual_comodule(&self.w);
        let gamma = (0..self.w.dim())
            .map(|u| Matrix::from_fn(self.n.dim(), self.m.dim(), |v, p| self.rho[p].get(u, v).clone()))
            .collect();
        (x, gamma, self.sigma.to_measuring())
    }
}
