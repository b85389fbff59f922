use serde::Serialize;

use crate::exactnum::{rank, Matrix, Scalar};
use crate::finalg::FinAlgebra;
use crate::freealg::{NcPoly, RewritingSystem, Word};
use crate::report::{CheckReport, Finding};

use super::{build_f, BuildOptions, SweedlerError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseFieldReport {
    pub algebra: Vec<String>,
    /// Basis elements of `A` per weight.
    pub algebra_sequence: Vec<u64>,
    pub presentation_sequence: Vec<u64>,
    pub rules: Vec<String>,
    pub report: CheckReport,
}

/// `F(A,k) ≅ A`: the presentation is finite-dimensional with the weight
/// profile of `A`, and `a_i ↦ f_i0` is an isomorphism of algebras.
pub fn base_field_check(a: &FinAlgebra, bound: u32) -> Result<BaseFieldReport, SweedlerError> {
    let k = FinAlgebra::base_field(a.field());
    let f = build_f(a, &k, &BuildOptions::with_bound(bound))?;
    let sys = f.system();
    let mut report = f.checks().clone();
    let max_w = a.weights().iter().copied().max().unwrap_or(0);
    let mut algebra_sequence = vec![0u64; bound as usize + 1];
    for &w in a.weights() {
        if let Some(slot) = algebra_sequence.get_mut(w as usize) {
            *slot += 1;
        }
    }
    let presentation_sequence = sys.dimension_sequence(bound);
    if max_w >= bound {
        report.push(Finding::violation("bound", format!("bound {bound} must exceed the top weight {max_w}"), vec![]));
    } else if presentation_sequence != algebra_sequence {
        report.push(Finding::violation(
            "dimension-sequence",
            format!("{presentation_sequence:?} vs {algebra_sequence:?}"),
            vec![],
        ));
    } else {
        let basis = sys.normal_words_up_to(bound);
        let n = a.dim();
        // Row i: coordinates of φ(a_i) on the normal words.
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|i| coords(sys, &f.g(i, 0), &basis))
            .collect::<Result<_, _>>()?;
        if rank(&Matrix::from_rows(rows.clone())) != n {
            report.push(Finding::violation("isomorphism", "a_i ↦ f_i0 is not bijective", vec![]));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = coords(sys, &f.g(i, 0).mul(&f.g(j, 0)), &basis)?;
                let mut rhs = vec![Scalar::zero(); basis.len()];
                for (kk, c) in a.mul_basis(i, j).iter().enumerate() {
                    for (x, y) in rhs.iter_mut().zip(&rows[kk]) {
                        *x += &(c * y);
                    }
                }
                if lhs != rhs {
                    report.push(Finding::violation(
                        "structure-constants",
                        format!("φ({})φ({}) ≠ φ({}{})", a.label(i), a.label(j), a.label(i), a.label(j)),
                        vec![i, j],
                    ));
                }
            }
        }
    }
    Ok(BaseFieldReport {
        algebra: a.labels().to_vec(),
        algebra_sequence,
        presentation_sequence,
        rules: sys.rule_strings(),
        report,
    })
}

fn coords(sys: &RewritingSystem, p: &NcPoly, basis: &[Word]) -> Result<Vec<Scalar>, SweedlerError> {
    let nf = sys.normal_form(p)?;
    Ok(basis.iter().map(|w| nf.coeff(w)).collect())
}

/// `F(k,B) = k`: no generators and nothing above degree 0.
pub fn trivial_source_check(b: &FinAlgebra, bound: u32) -> Result<CheckReport, SweedlerError> {
    let k = FinAlgebra::base_field(b.field());
    let f = build_f(&k, b, &BuildOptions::with_bound(bound))?;
    let mut report = f.checks().clone();
    if f.generator_count() != 0 {
        report.push(Finding::violation("generators", format!("{} generators", f.generator_count()), vec![]));
    }
    let mut expected = vec![0u64; bound as usize + 1];
    expected[0] = 1;
    let seq = f.system().dimension_sequence(bound);
    if seq != expected {
        report.push(Finding::violation("dimension-sequence", format!("{seq:?}"), vec![]));
    }
    Ok(report)
}
