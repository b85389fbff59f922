//! Finite-dimensional unital associative algebras given by structure
//! constants `a_i a_j = sum_k c[i][j][k] a_k`.

mod catalog;

pub use catalog::{parse_catalog, CATALOG_NAMES};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{mat_inv, FieldSpec, Matrix, NumError, Scalar};
use crate::report::{CheckReport, Finding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("associativity fails at (i,j,k,l) = ({0},{1},{2},{3})", .at[0], .at[1], .at[2], .at[3])]
    Associativity { at: [usize; 4] },
    #[error("unit law fails at (i,l) = ({0},{1}) ({side} side)", .at[0], .at[1])]
    Unit { at: [usize; 2], side: &'static str },
    #[error("unknown catalog entry '{name}'; valid entries: {}", CATALOG_NAMES.join(", "))]
    UnknownCatalog { name: String },
    #[error("bad catalog parameters: {0}")]
    Parameters(String),
    #[error("unit is zero")]
    ZeroUnit,
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    c: Vec<Scalar>,
    unit: Vec<Scalar>,
    weights: Vec<u32>,
}

impl FinAlgebra {
    /// Builds and validates an algebra from nested structure constants.
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        c: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::new_unchecked(field, labels, c, unit)?;
        if let Some(err) = alg.first_error() {
            return Err(err);
        }
        Ok(alg)
    }

    /// Shape checks only; `validate` reports algebraic failures.
    pub fn new_unchecked(
        field: FieldSpec,
        labels: Vec<String>,
        c: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::Shape("algebra must have positive dimension".into()));
        }
        if unit.len() != n {
            return Err(AlgebraError::Shape(format!("unit has {} coordinates, expected {n}", unit.len())));
        }
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::Shape(format!("structure constants must be {n}x{n}x{n}")));
        }
        let flat = c.into_iter().flatten().flatten().collect();
        let weights = unit_weights(&unit);
        Ok(Self { field, dim: n, labels, c: flat, unit, weights })
    }

    fn from_flat(field: FieldSpec, labels: Vec<String>, c: Vec<Scalar>, unit: Vec<Scalar>) -> Self {
        let weights = unit_weights(&unit);
        Self { field, dim: labels.len(), labels, c, unit, weights }
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Filtration weight of each basis element, used to grade `F(A,B)`.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        assert_eq!(weights.len(), self.dim);
        self.weights = weights;
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()).collect())
            .collect()
    }

    /// True when basis element 0 is the unit.
    pub fn unit_is_first(&self) -> bool {
        self.unit.iter().enumerate().all(|(i, u)| if i == 0 { u.is_one() } else { u.is_zero() })
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for (k, o) in out.iter_mut().enumerate() {
                    let cijk = self.c(i, j, k);
                    if !cijk.is_zero() {
                        *o += &(&ab * cijk);
                    }
                }
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// Every associativity and unit-law failure.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut lhs = Scalar::zero();
                        let mut rhs = Scalar::zero();
                        for m in 0..n {
                            lhs += &(self.c(i, j, m) * self.c(m, k, l));
                            rhs += &(self.c(j, k, m) * self.c(i, m, l));
                        }
                        if lhs != rhs {
                            report.push(Finding::violation(
                                "associativity",
                                format!(
                                    "(a{i} a{j}) a{k} and a{i} (a{j} a{k}) differ in coordinate {l}: {lhs} vs {rhs}"
                                ),
                                vec![i, j, k, l],
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            for (side, prod) in [("left", self.mul(&self.unit, &e)), ("right", self.mul(&e, &self.unit))] {
                for (l, v) in prod.iter().enumerate() {
                    let want = if l == i { Scalar::one() } else { Scalar::zero() };
                    if *v != want {
                        report.push(Finding::violation(
                            "unit",
                            format!("{side} unit law fails on a{i}, coordinate {l}: {v}"),
                            vec![i, l],
                        ));
                    }
                }
            }
        }
        report
    }

    fn first_error(&self) -> Option<AlgebraError> {
        let report = self.validate();
        let v = report.first_violation()?;
        Some(if v.check == "associativity" {
            AlgebraError::Associativity { at: [v.location[0], v.location[1], v.location[2], v.location[3]] }
        } else {
            let side = if v.detail.starts_with("left") { "left" } else { "right" };
            AlgebraError::Unit { at: [v.location[0], v.location[1]], side }
        })
    }

    /// Left multiplication matrices `B_r`, acting on column coordinate vectors.
    pub fn regular_representation(&self) -> RegularRep {
        let n = self.dim;
        let matrices = (0..n)
            .map(|r| Matrix::from_fn(n, n, |k, s| self.c(r, s, k).clone()))
            .collect();
        RegularRep { matrices }
    }

    /// Re-expresses the algebra in the basis `b_i = sum_j p[i][j] a_j`.
    pub fn change_basis(&self, p: &Matrix<Scalar>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n || labels.len() != n {
            return Err(AlgebraError::Shape("change of basis must be square of the algebra dimension".into()));
        }
        let q = mat_inv(p)?;
        let mut c = vec![Scalar::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let prod = self.mul(p.row(i), p.row(j));
                for k in 0..n {
                    let mut acc = Scalar::zero();
                    for (m, pm) in prod.iter().enumerate() {
                        if !pm.is_zero() {
                            acc += &(pm * q.get(m, k));
                        }
                    }
                    c[(i * n + j) * n + k] = acc;
                }
            }
        }
        let mut unit = vec![Scalar::zero(); n];
        for (m, um) in self.unit.iter().enumerate() {
            for (k, u) in unit.iter_mut().enumerate() {
                *u += &(um * q.get(m, k));
            }
        }
        Ok(Self::from_flat(self.field.clone(), labels, c, unit))
    }

    /// Rebases so that basis element 0 is the unit, keeping the other
    /// basis elements in order. Returns the algebra unchanged if it already
    /// satisfies this.
    pub fn unit_first(&self) -> Result<Self, AlgebraError> {
        if self.unit_is_first() {
            return Ok(self.clone());
        }
        let pivot = self.unit.iter().position(|u| !u.is_zero()).ok_or(AlgebraError::ZeroUnit)?;
        let n = self.dim;
        let mut rows = vec![self.unit.clone()];
        let mut labels = vec!["1".to_string()];
        for k in (0..n).filter(|&k| k != pivot) {
            rows.push(self.basis_vector(k));
            labels.push(self.labels[k].clone());
        }
        let mut out = self.change_basis(&Matrix::from_rows(rows), labels)?;
        out.weights = unit_weights(&out.unit);
        Ok(out)
    }

    /// Whether `other` has identical structure constants and unit.
    pub fn same_structure(&self, other: &FinAlgebra) -> bool {
        self.dim == other.dim && self.c == other.c && self.unit == other.unit
    }

    /// Inverse of `to_json`; structure is validated.
    pub fn from_json(j: &AlgebraJson) -> Result<Self, AlgebraError> {
        let field = crate::text::parse_field(&j.field).map_err(|e| AlgebraError::Parameters(format!("field: {e}")))?;
        let sc = |s: &String| crate::text::parse_scalar(s, &field).map_err(|e| AlgebraError::Parameters(format!("scalar '{s}': {e}")));
        let c = j
            .c
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(sc).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = j.unit.iter().map(sc).collect::<Result<Vec<_>, _>>()?;
        if j.labels.len() != j.dim {
            return Err(AlgebraError::Parameters(format!("{} labels for dimension {}", j.labels.len(), j.dim)));
        }
        let alg = Self::new(field, j.labels.clone(), c, unit)?;
        if j.weights.is_empty() {
            Ok(alg)
        } else if j.weights.len() == j.dim {
            Ok(alg.with_weights(j.weights.clone()))
        } else {
            Err(AlgebraError::Parameters(format!("{} weights for dimension {}", j.weights.len(), j.dim)))
        }
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            field: self.field.to_string(),
            dim: self.dim,
            labels: self.labels.clone(),
            unit: self.unit.iter().map(ToString::to_string).collect(),
            c: self
                .constants()
                .into_iter()
                .map(|r| r.into_iter().map(|v| v.into_iter().map(|x| x.to_string()).collect()).collect())
                .collect(),
            weights: self.weights.clone(),
        }
    }
}

fn unit_weights(unit: &[Scalar]) -> Vec<u32> {
    (0..unit.len())
        .map(|i| {
            let is_unit = unit.iter().enumerate().all(|(k, u)| if k == i { u.is_one() } else { u.is_zero() });
            u32::from(!is_unit)
        })
        .collect()
}

/// Serialized algebra: every scalar as a string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct AlgebraJson {
    pub field: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub c: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<u32>,
}

impl fmt::Display for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra of dimension {} over {}", self.dim, self.field)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = self.mul_basis(i, j);
                let terms: Vec<String> = prod
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(k, v)| format!("({v}){}", self.labels[k]))
                    .collect();
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                writeln!(f, "  {}*{} = {rhs}", self.labels[i], self.labels[j])?;
            }
        }
        Ok(())
    }
}

/// Left regular representation `B_r = (a -> a_r a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularRep {
    pub matrices: Vec<Matrix<Scalar>>,
}

impl RegularRep {
    /// Checks `B_r B_s = sum_t c[r][s][t] B_t` for every pair.
    pub fn verify(&self, alg: &FinAlgebra) -> CheckReport {
        let mut report = CheckReport::new();
        let n = alg.dim();
        for r in 0..n {
            for s in 0..n {
                let lhs = &self.matrices[r] * &self.matrices[s];
                let mut rhs = Matrix::<Scalar>::zeros(n, n);
                for t in 0..n {
                    rhs = &rhs + &self.matrices[t].scale(alg.c(r, s, t));
                }
                if lhs != rhs {
                    report.push(Finding::violation("regular-rep", format!("B{r} B{s} mismatch"), vec![r, s]));
                }
            }
        }
        report
    }
}
