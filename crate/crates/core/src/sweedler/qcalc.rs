use std::sync::Arc;

use serde::Serialize;

use crate::coalg::{dual_coalgebra, FinCoalgebra};
use crate::exactnum::{FieldSpec, Scalar, UniPoly};
use crate::finalg::FinAlgebra;
use crate::freealg::{complete, eval_poly, Alphabet, CompletionOptions, NcPoly, PresentationTarget, RewritingSystem};
use crate::report::{CheckReport, Finding};

use super::{build_f, BuildOptions, SweedlerError};

/// The tensor algebra on the dual basis `α_j` of `(k[x]/p)*` modulo one
/// relation per `α_j`.
#[derive(Debug, Clone)]
pub struct QcalcPresentation {
    pub p: UniPoly,
    pub algebra: FinAlgebra,
    pub coalgebra: FinCoalgebra,
    pub alphabet: Arc<Alphabet>,
    pub relations: Vec<NcPoly>,
    pub system: Arc<RewritingSystem>,
}

/// Relation for `α_j`: `Σ_i p_i · (word sum of Δ^{i-1} α_j)`, where the
/// `i = 0` term is `p_0 ε(α_j)` and factors follow the coproduct slots.
pub fn qcalc_presentation(p: &UniPoly, field: &FieldSpec, opts: CompletionOptions) -> Result<QcalcPresentation, SweedlerError> {
    let algebra = FinAlgebra::quotient_poly(p, field)?;
    let n = algebra.dim();
    let coalgebra = dual_coalgebra(&algebra);
    let alphabet = Alphabet::uniform((0..n).map(|j| format!("a{j}")).collect());
    let relations: Vec<NcPoly> = (0..n)
        .map(|j| {
            let mut rel = NcPoly::zero();
            for (i, pi) in p.coeffs().iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                for (tuple, c) in coalgebra.iterated_coproduct(j, i) {
                    let letters: Vec<u16> = tuple.iter().map(|&t| t as u16).collect();
                    rel.add_term(alphabet.word(&letters), pi * &c);
                }
            }
            rel
        })
        .collect();
    let system = Arc::new(complete(alphabet.clone(), &relations, opts)?);
    Ok(QcalcPresentation { p: p.clone(), algebra, coalgebra, alphabet, relations, system })
}

impl QcalcPresentation {
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.display(&self.alphabet)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QcalcReport {
    pub qcalc_relations: Vec<String>,
    pub qcalc_rules: Vec<String>,
    pub matrix_rules: Vec<String>,
    pub qcalc_sequence: Vec<u64>,
    pub matrix_sequence: Vec<u64>,
    pub report: CheckReport,
}

/// Compares the dual-basis presentation with `F(A,A)`, `A = k[x]/p`:
/// `α_r ↦ f_{x,r}` must kill every relation, and the dimension sequences
/// must agree up to the bound.
pub fn verify_qcalc_equivalence(p: &UniPoly, field: &FieldSpec, bound: u32) -> Result<QcalcReport, SweedlerError> {
    let q = qcalc_presentation(p, field, CompletionOptions::with_bound(bound))?;
    let f = build_f(&q.algebra, &q.algebra, &BuildOptions::with_bound(bound))?;
    let mut report = CheckReport::new();
    let n = q.algebra.dim();
    // α_r goes to the b_r coefficient of η(x); in degree one x is a scalar.
    let x: Vec<Scalar> = if n >= 2 { q.algebra.basis_vector(1) } else { vec![-&p.coeff(0)] };
    let images: Vec<NcPoly> = (0..n)
        .map(|r| {
            let mut img = NcPoly::zero();
            for (i, c) in x.iter().enumerate() {
                img.add_scaled(&f.g(i, r), c);
            }
            img
        })
        .collect();
    let target = PresentationTarget(f.system());
    for (j, rel) in q.relations.iter().enumerate() {
        let img = eval_poly(&target, rel, &images)?;
        if !img.is_zero() {
            report.push(Finding::violation(
                "qcalc-relation-image",
                format!("{} maps to {}", rel.display(&q.alphabet), f.display(&img)),
                vec![j],
            ));
        }
    }
    let qs = q.system.dimension_sequence(bound);
    let fs = f.system().dimension_sequence(bound);
    if qs != fs {
        report.push(Finding::violation("dimension-sequence", format!("{qs:?} vs {fs:?}"), vec![]));
    }
    Ok(QcalcReport {
        qcalc_relations: q.relation_strings(),
        qcalc_rules: q.system.rule_strings(),
        matrix_rules: f.system().rule_strings(),
        qcalc_sequence: qs,
        matrix_sequence: fs,
        report,
    })
}
