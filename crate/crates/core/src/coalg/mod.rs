//! Finite-dimensional coalgebras, duality with algebras, convolution
//! algebras and measuring maps.
//!
//! Coproducts are stored as `Δh_i = sum d[i][j][k] h_j ⊗ h_k`. In Sweedler
//! notation the first slot is `h₍₂₎` and the second `h₍₁₎`; every formula
//! below pairs the first slot with the first factor of a product.

mod extension;

pub use extension::{ExtensionMap, MeasuringData};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{FieldSpec, Scalar};
use crate::finalg::{AlgebraError, FinAlgebra};
use crate::report::{CheckReport, Finding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoalgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("coassociativity fails for h{0} at slots ({1},{2},{3})", .at[0], .at[1], .at[2], .at[3])]
    Coassociativity { at: [usize; 4] },
    #[error("counit law fails for h{0}, coordinate {1}", .at[0], .at[1])]
    Counit { at: [usize; 2] },
    #[error("unknown coalgebra catalog entry '{0}'; valid entries: grouplike, derivation_pair, matrix_coalgebra(n)")]
    UnknownCatalog(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinCoalgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    d: Vec<Scalar>,
    counit: Vec<Scalar>,
}

/// Sparse element of `H^{⊗n}` keyed by basis index tuples (slot order).
pub type TensorCoords = BTreeMap<Vec<usize>, Scalar>;

impl FinCoalgebra {
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        d: Vec<Vec<Vec<Scalar>>>,
        counit: Vec<Scalar>,
    ) -> Result<Self, CoalgError> {
        let h = Self::new_unchecked(field, labels, d, counit)?;
        if let Some(v) = h.validate().first_violation() {
            let l = &v.location;
            return Err(if v.check == "coassociativity" {
                CoalgError::Coassociativity { at: [l[0], l[1], l[2], l[3]] }
            } else {
                CoalgError::Counit { at: [l[0], l[1]] }
            });
        }
        Ok(h)
    }

    pub fn new_unchecked(
        field: FieldSpec,
        labels: Vec<String>,
        d: Vec<Vec<Vec<Scalar>>>,
        counit: Vec<Scalar>,
    ) -> Result<Self, CoalgError> {
        let n = labels.len();
        if n == 0 {
            return Err(CoalgError::Shape("coalgebra must have positive dimension".into()));
        }
        if counit.len() != n {
            return Err(CoalgError::Shape(format!("counit has {} entries, expected {n}", counit.len())));
        }
        if d.len() != n || d.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(CoalgError::Shape(format!("coproduct tensor must be {n}x{n}x{n}")));
        }
        Ok(Self { field, dim: n, labels, d: d.into_iter().flatten().flatten().collect(), counit })
    }

    fn from_flat(field: FieldSpec, labels: Vec<String>, d: Vec<Scalar>, counit: Vec<Scalar>) -> Self {
        Self { field, dim: labels.len(), labels, d, counit }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.d[(i * self.dim + j) * self.dim + k]
    }

    pub fn coproduct_tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.d(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn same_structure(&self, other: &FinCoalgebra) -> bool {
        self.dim == other.dim && self.d == other.d && self.counit == other.counit
    }

    /// `Δ^{n-1} h_i` as coordinates on `H^{⊗n}`; `n = 1` gives `h_i` itself
    /// and `n = 0` gives `ε(h_i)` on the empty tuple.
    pub fn iterated_coproduct(&self, i: usize, n: usize) -> TensorCoords {
        let mut out = TensorCoords::new();
        if n == 0 {
            if !self.counit[i].is_zero() {
                out.insert(Vec::new(), self.counit[i].clone());
            }
            return out;
        }
        out.insert(vec![i], Scalar::one());
        for _ in 1..n {
            let mut next = TensorCoords::new();
            for (tuple, coef) in &out {
                let last = *tuple.last().expect("nonempty tuple");
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        let djk = self.d(last, j, k);
                        if djk.is_zero() {
                            continue;
                        }
                        let mut t = tuple[..tuple.len() - 1].to_vec();
                        t.push(j);
                        t.push(k);
                        let entry = next.entry(t).or_insert_with(Scalar::zero);
                        *entry += &(coef * djk);
                    }
                }
            }
            next.retain(|_, v| !v.is_zero());
            out = next;
        }
        out
    }

    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let n = self.dim;
        for i in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let mut left = Scalar::zero();
                        let mut right = Scalar::zero();
                        for m in 0..n {
                            left += &(self.d(i, m, z) * self.d(m, x, y));
                            right += &(self.d(i, x, m) * self.d(m, y, z));
                        }
                        if left != right {
                            report.push(Finding::violation(
                                "coassociativity",
                                format!("(Δ⊗1)Δ and (1⊗Δ)Δ differ on {} at ({x},{y},{z}): {left} vs {right}", self.labels[i]),
                                vec![i, x, y, z],
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                let mut first = Scalar::zero();
                let mut second = Scalar::zero();
                for j in 0..n {
                    first += &(self.d(i, j, k) * &self.counit[j]);
                    second += &(self.d(i, k, j) * &self.counit[j]);
                }
                let want = if i == k { Scalar::one() } else { Scalar::zero() };
                if first != want || second != want {
                    report.push(Finding::violation(
                        "counit",
                        format!("counit law fails on {} at coordinate {k}", self.labels[i]),
                        vec![i, k],
                    ));
                }
            }
        }
        report
    }

    /// `Δg = g⊗g`, `ε(g) = 1`.
    pub fn grouplike(field: &FieldSpec) -> Self {
        Self::from_flat(field.clone(), vec!["g".into()], vec![Scalar::one()], vec![Scalar::one()])
    }

    /// Basis `g, γ` with `Δg = g⊗g`, `Δγ = γ⊗g + g⊗γ`, `ε(γ) = 0`.
    pub fn derivation_pair(field: &FieldSpec) -> Self {
        let (z, o) = (Scalar::zero, Scalar::one);
        let d = vec![vec![vec![o(), z()], vec![z(), z()]], vec![vec![z(), o()], vec![o(), z()]]];
        Self::new_unchecked(field.clone(), vec!["g".into(), "γ".into()], d, vec![o(), z()]).expect("shape")
    }

    /// `Δξ_ij = sum_k ξ_ik ⊗ ξ_kj`, `ε(ξ_ij) = δ_ij`, row-major basis.
    pub fn matrix_coalgebra(n: usize, field: &FieldSpec) -> Self {
        let dim = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut d = vec![Scalar::zero(); dim * dim * dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    d[(idx(i, j) * dim + idx(i, k)) * dim + idx(k, j)] = Scalar::one();
                }
            }
        }
        let counit = (0..dim).map(|a| if a / n == a % n { Scalar::one() } else { Scalar::zero() }).collect();
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("ξ{}{}", i + 1, j + 1))).collect();
        Self::from_flat(field.clone(), labels, d, counit)
    }

    pub fn parse_catalog(text: &str, field: &FieldSpec) -> Result<Self, CoalgError> {
        let t = text.trim();
        if t == "grouplike" {
            return Ok(Self::grouplike(field));
        }
        if t == "derivation_pair" {
            return Ok(Self::derivation_pair(field));
        }
        if let Some(n) = t.strip_prefix("matrix_coalgebra(").and_then(|r| r.strip_suffix(')')) {
            if let Ok(n) = n.trim().parse::<usize>() {
                if n >= 1 {
                    return Ok(Self::matrix_coalgebra(n, field));
                }
            }
        }
        Err(CoalgError::UnknownCatalog(t.to_string()))
    }

    /// Inverse of `to_json`; the coalgebra axioms are checked.
    pub fn from_json(j: &CoalgebraJson) -> Result<Self, CoalgError> {
        let field = crate::text::parse_field(&j.field).map_err(|e| CoalgError::Shape(format!("field: {e}")))?;
        let sc = |s: &String| crate::text::parse_scalar(s, &field).map_err(|e| CoalgError::Shape(format!("scalar '{s}': {e}")));
        let d = j
            .d
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(sc).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let counit = j.counit.iter().map(sc).collect::<Result<Vec<_>, _>>()?;
        if j.labels.len() != j.dim {
            return Err(CoalgError::Shape(format!("{} labels for dimension {}", j.labels.len(), j.dim)));
        }
        Self::new(field, j.labels.clone(), d, counit)
    }

    pub fn to_json(&self) -> CoalgebraJson {
        CoalgebraJson {
            field: self.field.to_string(),
            dim: self.dim,
            labels: self.labels.clone(),
            counit: self.counit.iter().map(ToString::to_string).collect(),
            d: self
                .coproduct_tensor()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CoalgebraJson {
    pub field: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub counit: Vec<String>,
    pub d: Vec<Vec<Vec<String>>>,
}

fn star(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{label}*"),
    }
}

/// `B* = B°` with `Δa_k* = sum c[i][j][k] a_i*⊗a_j*` and `ε(a_k*) = unit_k`.
pub fn dual_coalgebra(b: &FinAlgebra) -> FinCoalgebra {
    let n = b.dim();
    let mut d = vec![Scalar::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                d[(k * n + i) * n + j] = b.c(i, j, k).clone();
            }
        }
    }
    let labels = b.labels().iter().map(|l| star(l)).collect();
    FinCoalgebra::from_flat(b.field().clone(), labels, d, b.unit().to_vec())
}

/// `H*` with `(αβ)(h) = sum α(h₍₂₎)β(h₍₁₎)`; the unit is the counit.
pub fn dual_algebra(h: &FinCoalgebra) -> FinAlgebra {
    let n = h.dim();
    let c = (0..n)
        .map(|j| (0..n).map(|k| (0..n).map(|i| h.d(i, j, k).clone()).collect()).collect())
        .collect();
    let labels = h.labels().iter().map(|l| star(l)).collect();
    FinAlgebra::new_unchecked(h.field().clone(), labels, c, h.counit().to_vec()).expect("shape")
}

/// `[H, B] = Hom(H, B)` on the basis `h_i*⊗b_k` (index `i * dim B + k`).
pub fn convolution_algebra(h: &FinCoalgebra, b: &FinAlgebra) -> FinAlgebra {
    let (nh, nb) = (h.dim(), b.dim());
    let n = nh * nb;
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..nh {
        for k in 0..nb {
            for j in 0..nh {
                for l in 0..nb {
                    for m in 0..nh {
                        let dm = h.d(m, i, j);
                        if dm.is_zero() {
                            continue;
                        }
                        for o in 0..nb {
                            let cb = b.c(k, l, o);
                            if !cb.is_zero() {
                                c[i * nb + k][j * nb + l][m * nb + o] = dm * cb;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![Scalar::zero(); n];
    for i in 0..nh {
        for k in 0..nb {
            unit[i * nb + k] = &h.counit()[i] * &b.unit()[k];
        }
    }
    let labels = (0..nh)
        .flat_map(|i| (0..nb).map(move |k| (i, k)))
        .map(|(i, k)| format!("{}*⊗{}", h.labels()[i], b.labels()[k]))
        .collect();
    FinAlgebra::new_unchecked(h.field().clone(), labels, c, unit).expect("shape")
}
