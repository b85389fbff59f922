use crate::exactnum::{FieldSpec, Scalar, UniPoly};
use crate::text::parse_unipoly;

use super::{AlgebraError, FinAlgebra};

pub const CATALOG_NAMES: &[&str] =
    &["quotient_poly(p)", "matrix_algebra(n)", "dual_numbers", "conjugation_algebra", "base_field"];

fn power_label(i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{i}"),
    }
}

impl FinAlgebra {
    /// `field[x]/(p)` on the power basis `1, x, ..., x^(n-1)`; `x^i` has weight `i`.
    pub fn quotient_poly(p: &UniPoly, field: &FieldSpec) -> Result<Self, AlgebraError> {
        let n = match p.degree() {
            Some(d) if d >= 1 && p.is_monic() => d,
            _ => return Err(AlgebraError::Parameters(format!("quotient_poly needs a monic polynomial of degree >= 1, got {p}"))),
        };
        // x^m for m < 2n - 1, reduced modulo p.
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * n);
        let mut cur = vec![Scalar::zero(); n];
        cur[0] = Scalar::one();
        for _ in 0..(2 * n - 1) {
            powers.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![Scalar::zero(); n];
            for k in 1..n {
                next[k] = cur[k - 1].clone();
            }
            if !top.is_zero() {
                for (k, nk) in next.iter_mut().enumerate() {
                    *nk = &*nk - &(&top * &p.coeff(k));
                }
            }
            cur = next;
        }
        let c = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = Scalar::one();
        let labels = (0..n).map(power_label).collect();
        let alg = Self::new_unchecked(field.clone(), labels, c, unit)?;
        Ok(alg.with_weights((0..n as u32).collect()))
    }

    /// `n x n` matrices on the matrix units `E_ij`, row-major. The unit is
    /// `sum E_ii`, not a basis element; use `unit_first` before building
    /// measuring algebras from it.
    pub fn matrix_algebra(n: usize, field: &FieldSpec) -> Self {
        let dim = n * n;
        let idx = |i: usize, j: usize| i * n + j;
        let mut c = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    c[idx(i, j)][idx(j, l)][idx(i, l)] = Scalar::one();
                }
            }
        }
        let mut unit = vec![Scalar::zero(); dim];
        for i in 0..n {
            unit[idx(i, i)] = Scalar::one();
        }
        let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1))).collect();
        Self::new_unchecked(field.clone(), labels, c, unit).expect("matrix algebra shape")
    }

    pub fn dual_numbers(field: &FieldSpec) -> Self {
        let z = Scalar::zero;
        let o = Scalar::one;
        let c = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![z(), z()]]];
        Self::new_unchecked(field.clone(), vec!["1".into(), "d".into()], c, vec![o(), z()]).expect("shape")
    }

    /// Basis `1, x, J, xJ` with `x^2 = -1`, `J^2 = 1`, `Jx = -xJ`.
    pub fn conjugation_algebra(field: &FieldSpec) -> Self {
        // (sign, index) of a_i * a_j.
        const TABLE: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (1, 0), (-1, 1)],
            [(1, 3), (1, 2), (1, 1), (1, 0)],
        ];
        let c = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let (s, k) = TABLE[i][j];
                        (0..4).map(|l| if l == k { Scalar::int(s) } else { Scalar::zero() }).collect()
                    })
                    .collect()
            })
            .collect();
        let unit = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        let labels = ["1", "x", "J", "xJ"].iter().map(|s| s.to_string()).collect();
        Self::new_unchecked(field.clone(), labels, c, unit).expect("shape").with_weights(vec![0, 1, 1, 2])
    }

    pub fn base_field(field: &FieldSpec) -> Self {
        Self::new_unchecked(field.clone(), vec!["1".into()], vec![vec![vec![Scalar::one()]]], vec![Scalar::one()])
            .expect("shape")
    }
}

/// Parses catalog shorthand such as `quotient_poly(x^2+1)` or `matrix_algebra(2)`.
pub fn parse_catalog(text: &str, field: &FieldSpec) -> Result<FinAlgebra, AlgebraError> {
    let text = text.trim();
    let (name, arg) = match text.find('(') {
        Some(open) if text.ends_with(')') => (text[..open].trim(), Some(&text[open + 1..text.len() - 1])),
        _ => (text, None),
    };
    match (name, arg) {
        ("quotient_poly", Some(p)) => {
            let poly = parse_unipoly(p, "x", field).map_err(|e| AlgebraError::Parameters(format!("quotient_poly: {e}")))?;
            FinAlgebra::quotient_poly(&poly, field)
        }
        ("matrix_algebra", Some(n)) => {
            let n: usize = n
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| AlgebraError::Parameters(format!("matrix_algebra needs a positive size, got '{n}'")))?;
            Ok(FinAlgebra::matrix_algebra(n, field))
        }
        ("dual_numbers", None) => Ok(FinAlgebra::dual_numbers(field)),
        ("conjugation_algebra", None) => Ok(FinAlgebra::conjugation_algebra(field)),
        ("base_field", None) => Ok(FinAlgebra::base_field(field)),
        _ => Err(AlgebraError::UnknownCatalog { name: text.to_string() }),
    }
}
