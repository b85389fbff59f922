use std::sync::Arc;

use crate::exactnum::Scalar;
use crate::finalg::FinAlgebra;
use crate::freealg::{eval_poly, NcPoly, RewriteError, TensorPoly, TensorTarget, Word};
use crate::report::{CheckReport, Finding};

use super::{build_f, BuildOptions, SweedlerError, SweedlerPresentation};

/// `Δ_B: F(A,C) → F(A,B)⊗F(B,C)` on generators.
#[derive(Debug, Clone)]
pub struct Comultiplication {
    pub source: Arc<SweedlerPresentation>,
    pub left: Arc<SweedlerPresentation>,
    pub right: Arc<SweedlerPresentation>,
    images: Vec<TensorPoly>,
    /// Images of the source relations that failed to reduce to zero.
    pub report: CheckReport,
}

/// Builds `F(A,B)` and `F(B,C)` at the bound of `fac` and factors through `B`.
pub fn comultiplication(fac: &Arc<SweedlerPresentation>, b: &FinAlgebra) -> Result<Comultiplication, SweedlerError> {
    let opts = BuildOptions::with_bound(fac.bound());
    let fab = Arc::new(build_f(fac.a(), b, &opts)?);
    let fbc = Arc::new(build_f(b, fac.b(), &opts)?);
    comultiplication_with(fac, &fab, &fbc)
}

pub fn comultiplication_with(
    fac: &Arc<SweedlerPresentation>,
    fab: &Arc<SweedlerPresentation>,
    fbc: &Arc<SweedlerPresentation>,
) -> Result<Comultiplication, SweedlerError> {
    if !fab.a().same_structure(fac.a()) || !fbc.b().same_structure(fac.b()) || !fab.b().same_structure(fbc.a()) {
        return Err(SweedlerError::Input("presentations do not compose as F(A,C) → F(A,B)⊗F(B,C)".into()));
    }
    let nb = fab.b().dim();
    let images: Vec<TensorPoly> = (0..fac.generator_count())
        .map(|g| {
            let (i, u) = fac.generator_indices(g);
            let mut t = TensorPoly::zero();
            for r in 0..nb {
                t.add_scaled(&TensorPoly::pure(&[&fab.g(i, r), &fbc.g(r, u)]), &Scalar::one());
            }
            t
        })
        .collect();
    let mut out =
        Comultiplication { source: fac.clone(), left: fab.clone(), right: fbc.clone(), images, report: CheckReport::new() };
    let mut report = CheckReport::new();
    let target = out.target();
    for (k, rel) in fac.relations().iter().enumerate() {
        let img = eval_poly(&target, rel, &out.images)?;
        if !img.is_zero() {
            report.push(Finding::violation(
                "comultiplication-relations",
                format!("Δ_B({}) = {}", fac.display(rel), out.display(&img)),
                vec![k],
            ));
        }
    }
    out.report = report;
    Ok(out)
}

impl Comultiplication {
    fn target(&self) -> TensorTarget<'_> {
        TensorTarget(vec![self.left.system(), self.right.system()])
    }

    pub fn images(&self) -> &[TensorPoly] {
        &self.images
    }

    /// Image of a source word, reduced in `F(A,B)⊗F(B,C)`.
    pub fn apply_word(&self, w: &Word) -> Result<TensorPoly, RewriteError> {
        eval_poly(&self.target(), &NcPoly::word(w.clone()), &self.images)
    }

    pub fn display(&self, t: &TensorPoly) -> String {
        t.display(&[self.left.alphabet(), self.right.alphabet()])
    }

    pub fn table(&self) -> Vec<String> {
        self.images
            .iter()
            .enumerate()
            .map(|(g, t)| format!("Δ_B {} = {}", self.source.alphabet().label(g), self.display(t)))
            .collect()
    }

    /// For `A = B = C`: whether the images equal the stored coproduct.
    pub fn matches_delta(&self) -> Result<bool, SweedlerError> {
        let stored = self.source.delta_images()?;
        let systems = [&**self.left.system(), &**self.right.system()];
        for (mine, theirs) in self.images.iter().zip(&stored) {
            if mine.reduce(&systems)? != theirs.reduce(&systems)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `(1⊗Δ_C)∘Δ_B = (Δ_B⊗1)∘Δ_C` on the generators of `F(A,D)`, both sides
/// landing in `F(A,B)⊗F(B,C)⊗F(C,D)`. Relation checks of the four
/// factorizations involved are included.
pub fn coassociativity_check(
    a: &FinAlgebra,
    b: &FinAlgebra,
    c: &FinAlgebra,
    d: &FinAlgebra,
    bound: u32,
) -> Result<CheckReport, SweedlerError> {
    let opts = BuildOptions::with_bound(bound);
    let mut cache: Vec<(FinAlgebra, FinAlgebra, Arc<SweedlerPresentation>)> = Vec::new();
    let mut get = |x: &FinAlgebra, y: &FinAlgebra| -> Result<Arc<SweedlerPresentation>, SweedlerError> {
        if let Some((_, _, f)) = cache.iter().find(|(p, q, _)| p.same_structure(x) && q.same_structure(y)) {
            return Ok(f.clone());
        }
        let f = Arc::new(build_f(x, y, &opts)?);
        cache.push((x.clone(), y.clone(), f.clone()));
        Ok(f)
    };
    let (fad, fab, fbd, fbc, fcd, fac) = (get(a, d)?, get(a, b)?, get(b, d)?, get(b, c)?, get(c, d)?, get(a, c)?);
    let b_ad = comultiplication_with(&fad, &fab, &fbd)?;
    let c_bd = comultiplication_with(&fbd, &fbc, &fcd)?;
    let c_ad = comultiplication_with(&fad, &fac, &fcd)?;
    let b_ac = comultiplication_with(&fac, &fab, &fbc)?;
    let mut report = CheckReport::new();
    for m in [&b_ad, &c_bd, &c_ad, &b_ac] {
        report.extend(m.report.clone());
    }
    let systems = [&**fab.system(), &**fbc.system(), &**fcd.system()];
    let alphas = [&**fab.alphabet(), &**fbc.alphabet(), &**fcd.alphabet()];
    for g in 0..fad.generator_count() {
        let lhs = b_ad.images[g].map_leg(1, &mut |w| c_bd.apply_word(w))?.reduce(&systems)?;
        let rhs = c_ad.images[g].map_leg(0, &mut |w| b_ac.apply_word(w))?.reduce(&systems)?;
        if lhs != rhs {
            report.push(Finding::violation(
                "coassociativity",
                format!(
                    "on {}: (1⊗Δ_C)Δ_B = {} but (Δ_B⊗1)Δ_C = {}",
                    fad.alphabet().label(g),
                    lhs.display(&alphas),
                    rhs.display(&alphas)
                ),
                vec![g],
            ));
        }
    }
    Ok(report)
}
