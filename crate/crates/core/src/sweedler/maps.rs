use serde::Serialize;

use crate::coalg::{ExtensionMap, FinCoalgebra, MeasuringData};
use crate::exactnum::{CentralPoly, Matrix, Ring, Scalar};
use crate::finalg::FinAlgebra;
use crate::freealg::{eval_poly, AlgebraTarget, CoordTarget, MatrixTarget};
use crate::report::{CheckReport, Finding};

use super::{SweedlerError, SweedlerPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
}

/// Where the generators of a presentation go, and whether the relations
/// survive the trip.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraMapImage {
    pub target: String,
    pub images: Vec<GeneratorImage>,
    pub report: CheckReport,
}

/// Evaluates every relation of `f` under `images`; each nonzero image is a
/// violation located at the relation's index.
pub fn check_images<T: AlgebraTarget>(
    f: &SweedlerPresentation,
    target: &T,
    images: &[T::Elem],
    show: impl Fn(&T::Elem) -> String,
) -> Result<CheckReport, SweedlerError> {
    if images.len() != f.generator_count() {
        return Err(SweedlerError::Input(format!(
            "{} generator images given, presentation has {} generators",
            images.len(),
            f.generator_count()
        )));
    }
    let mut report = CheckReport::new();
    for (k, rel) in f.relations().iter().enumerate() {
        let img = eval_poly(target, rel, images)?;
        if !target.is_zero(&img) {
            report.push(Finding::violation(
                "relation-image",
                format!("{} maps to {}", f.display(rel), show(&img)),
                vec![k],
            ));
        }
    }
    Ok(report)
}

fn named<E>(f: &SweedlerPresentation, images: &[E], show: impl Fn(&E) -> String) -> Vec<GeneratorImage> {
    images
        .iter()
        .enumerate()
        .map(|(g, e)| GeneratorImage { generator: f.alphabet().label(g).to_string(), image: show(e) })
        .collect()
}

pub(crate) fn fmt_coords(labels: &[String], v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (x, l) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let body = if l == "1" {
            x.to_string()
        } else if x.is_one() {
            l.clone()
        } else if (-x).is_one() {
            format!("-{l}")
        } else if x.needs_parens() {
            format!("({x})*{l}")
        } else {
            format!("{x}*{l}")
        };
        parts.push(body);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub fn fmt_matrix<R: Ring>(m: &Matrix<R>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// `F(σ): f_ir ↦ s_ir` where `σ(a_i) = Σ_r s_ir ⊗ b_r`; relations are checked
/// in `S`, and `(F(σ)⊗1)∘η = σ` coordinatewise.
pub fn f_of_extension(f: &SweedlerPresentation, sigma: &ExtensionMap) -> Result<AlgebraMapImage, SweedlerError> {
    if !sigma.a.same_structure(f.a()) || !sigma.b.same_structure(f.b()) {
        return Err(SweedlerError::Input("extension does not run from A to S⊗B for this presentation".into()));
    }
    let s = &sigma.s;
    let images: Vec<Vec<Scalar>> = (0..f.generator_count())
        .map(|g| {
            let (i, r) = f.generator_indices(g);
            (0..s.dim()).map(|k| sigma.sigma(i, k, r).clone()).collect()
        })
        .collect();
    let target = CoordTarget(s);
    let show = |v: &Vec<Scalar>| fmt_coords(s.labels(), v);
    let mut report = check_images(f, &target, &images, show)?;
    for i in 0..f.a().dim() {
        for r in 0..f.b().dim() {
            let lhs = eval_poly(&target, &f.g(i, r), &images)?;
            let rhs: Vec<Scalar> = (0..s.dim()).map(|k| sigma.sigma(i, k, r).clone()).collect();
            if lhs != rhs {
                report.push(Finding::violation(
                    "compatibility",
                    format!(
                        "coefficient of {} in F(σ)η({}) is {} but σ gives {}",
                        f.b().label(r),
                        f.a().label(i),
                        show(&lhs),
                        show(&rhs)
                    ),
                    vec![i, r],
                ));
            }
        }
    }
    Ok(AlgebraMapImage { target: format!("algebra of dimension {}", s.dim()), images: named(f, &images, show), report })
}

/// `F(θ)` for a representation `θ: A → End(W)`, read as `a ↦ θ(a)⊗1`:
/// `f_i0 ↦ θ(a_i)` and `f_ir ↦ 0` for `r ≥ 1`.
pub fn f_of_representation<R: Ring>(
    f: &SweedlerPresentation,
    theta: &[Matrix<R>],
) -> Result<AlgebraMapImage, SweedlerError> {
    let n = check_square(theta, f.a().dim())?;
    let images: Vec<Matrix<R>> = (0..f.generator_count())
        .map(|g| {
            let (i, r) = f.generator_indices(g);
            if r == 0 {
                theta[i].clone()
            } else {
                Matrix::zeros(n, n)
            }
        })
        .collect();
    let mut out = matrix_images(f, n, &images)?;
    if theta[0] != Matrix::identity(n) {
        out.report.push(Finding::violation("compatibility", "θ(1) is not the identity", vec![0, 0]));
    }
    Ok(out)
}

/// Generator images given directly as `n x n` matrices.
pub fn f_of_images<R: Ring>(f: &SweedlerPresentation, images: &[Matrix<R>]) -> Result<AlgebraMapImage, SweedlerError> {
    let n = check_square(images, f.generator_count())?;
    matrix_images(f, n, images)
}

fn check_square<R: Ring>(ms: &[Matrix<R>], expected: usize) -> Result<usize, SweedlerError> {
    if ms.len() != expected {
        return Err(SweedlerError::Input(format!("expected {expected} matrices, got {}", ms.len())));
    }
    let n = ms.first().map_or(0, |m| m.rows());
    if ms.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(SweedlerError::Input("matrices must all be square of one size".into()));
    }
    Ok(n)
}

fn matrix_images<R: Ring>(f: &SweedlerPresentation, n: usize, images: &[Matrix<R>]) -> Result<AlgebraMapImage, SweedlerError> {
    let target = MatrixTarget::over::<R>(n);
    let report = check_images(f, &target, images, fmt_matrix)?;
    Ok(AlgebraMapImage { target: format!("{n}x{n} matrices"), images: named(f, images, fmt_matrix), report })
}

/// Result of turning a representation of `F(A,B)` into a measuring coalgebra.
#[derive(Debug, Clone)]
pub struct RepMeasure {
    pub map: AlgebraMapImage,
    /// `None` when the relation check failed or the target is parameterized.
    pub measuring: Option<MeasuringData>,
    pub report: CheckReport,
}

/// `(θ⊗1)∘η: A → End(V)⊗B` on the matrix units of `End(V)`, index `p·n + q`.
/// The generator images are trusted to satisfy the relations.
pub fn representation_extension(f: &SweedlerPresentation, images: &[Matrix<Scalar>]) -> Result<ExtensionMap, SweedlerError> {
    let n = check_square(images, f.generator_count())?;
    let (na, nb) = (f.a().dim(), f.b().dim());
    let target = MatrixTarget::over::<Scalar>(n);
    let mut sigma = vec![vec![vec![Scalar::zero(); nb]; n * n]; na];
    for (i, row) in sigma.iter_mut().enumerate() {
        for r in 0..nb {
            let m = eval_poly(&target, &f.g(i, r), images)?;
            for p in 0..n {
                for q in 0..n {
                    row[p * n + q][r] = m.get(p, q).clone();
                }
            }
        }
    }
    let s = FinAlgebra::matrix_algebra(n, f.a().field());
    Ok(ExtensionMap::new(f.a().clone(), s, f.b().clone(), sigma)?)
}

/// `θ: F → End(V)` composed with `η` gives an extension `A → End(V)⊗B`;
/// its dual is a measuring `matrix_coalgebra(n) → Hom(A,B)`.
pub fn representation_to_measuring_coalgebra(
    f: &SweedlerPresentation,
    images: &[Matrix<Scalar>],
) -> Result<RepMeasure, SweedlerError> {
    let map = f_of_images(f, images)?;
    let mut report = map.report.clone();
    if !map.report.is_clean() {
        return Ok(RepMeasure { map, measuring: None, report });
    }
    let n = images.first().map_or(0, |m| m.rows());
    let ext = representation_extension(f, images)?;
    if let Some(v) = ext.verify().first_violation() {
        return Err(SweedlerError::Internal(format!("composite extension fails: {v}")));
    }
    let m = ext.to_measuring();
    if let Some(v) = m.verify().first_violation() {
        return Err(SweedlerError::Internal(format!("dual measuring fails: {v}")));
    }
    if !m.h.same_structure(&FinCoalgebra::matrix_coalgebra(n, f.a().field())) {
        return Err(SweedlerError::Internal("dual of End(V) is not the matrix coalgebra".into()));
    }
    report.push(Finding::info(
        "measuring",
        format!("measuring coalgebra of dimension {} verified", m.h.dim()),
    ));
    Ok(RepMeasure { map, measuring: Some(m), report })
}

/// The parameterized (`L`-polynomial) variant: relation check only.
pub fn representation_relation_check(
    f: &SweedlerPresentation,
    images: &[Matrix<CentralPoly>],
) -> Result<RepMeasure, SweedlerError> {
    let map = f_of_images(f, images)?;
    let mut report = map.report.clone();
    report.push(Finding::info("measuring", "measuring coalgebra extraction skipped for parameterized targets"));
    Ok(RepMeasure { map, measuring: None, report })
}
