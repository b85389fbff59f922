//! Universal measuring algebras `F(A,B)` as finite presentations, built by
//! expanding `η(a_i)η(a_j) = η(a_i a_j)` with noncommuting coefficients.

mod base;
mod chain;
mod coda;
mod comul;
mod maps;
mod pareigis;
mod qcalc;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coalg::CoalgError;
use crate::exactnum::Scalar;
use crate::finalg::{AlgebraError, FinAlgebra};
use crate::freealg::{
    complete, eval_poly, Alphabet, CompletionOptions, FieldTarget, NcPoly, RewriteError, RewritingSystem, TensorPoly,
    TensorTarget, Word,
};
use crate::report::{CheckReport, Finding};
use crate::text::ParseError;

pub use base::{base_field_check, trivial_source_check, BaseFieldReport};
pub use chain::{chain_to_comodule, chain_to_comodule_shifted, ChainComplex, GradedComodule};
pub use coda::{coda_identities, CodaIdentity};
pub use comul::{coassociativity_check, comultiplication, comultiplication_with, Comultiplication};
pub use maps::{
    check_images, f_of_extension, f_of_images, f_of_representation, representation_extension, representation_relation_check,
    representation_to_measuring_coalgebra,
    fmt_matrix, AlgebraMapImage, GeneratorImage, RepMeasure,
};
pub use pareigis::{pareigis_check, PareigisReport};
pub use qcalc::{qcalc_presentation, verify_qcalc_equivalence, QcalcPresentation, QcalcReport};

#[derive(Debug, Clone, Error)]
pub enum SweedlerError {
    #[error("{which} must have its unit as basis element 0 (apply unit_first)")]
    UnitNotFirst { which: &'static str },
    #[error("algebras live over different fields: {0} and {1}")]
    FieldMismatch(String, String),
    #[error("basis element {label} of A has weight 0; only the unit may")]
    ZeroWeight { label: String },
    #[error("{0} is only defined for F(A,A)")]
    NotEndomorphic(&'static str),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coalg(#[from] CoalgError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Default)]
pub struct BuildOptions {
    pub completion: CompletionOptions,
    /// Generator prefix, `f` by default.
    pub prefix: Option<String>,
}

impl BuildOptions {
    pub fn with_bound(bound: u32) -> Self {
        Self { completion: CompletionOptions::with_bound(bound), prefix: None }
    }

    pub fn prefix(mut self, p: &str) -> Self {
        self.prefix = Some(p.to_string());
        self
    }
}

/// `F(A,B)` on generators `f_ir` (`i ≥ 1`), the unit row being the constants
/// `f_0r = δ_0r`.
#[derive(Debug, Clone)]
pub struct SweedlerPresentation {
    a: FinAlgebra,
    b: FinAlgebra,
    alphabet: Arc<Alphabet>,
    relations: Vec<NcPoly>,
    /// `(i, j, t)` for each relation: the `b_t` coordinate of `η(a_i)η(a_j) - η(a_i a_j)`.
    sources: Vec<[usize; 3]>,
    system: Arc<RewritingSystem>,
    checks: CheckReport,
}

/// `F(A,B)` completed to the bound in `opts`; every invariant is checked
/// and recorded in `checks()`.
pub fn build_f(a: &FinAlgebra, b: &FinAlgebra, opts: &BuildOptions) -> Result<SweedlerPresentation, SweedlerError> {
    if a.field() != b.field() {
        return Err(SweedlerError::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    for (alg, which) in [(a, "A"), (b, "B")] {
        if !alg.unit_is_first() {
            return Err(SweedlerError::UnitNotFirst { which });
        }
        if let Some(v) = alg.validate().first_violation() {
            return Err(SweedlerError::Input(format!("{which} is not a unital associative algebra: {v}")));
        }
    }
    let (na, nb) = (a.dim(), b.dim());
    let prefix = opts.prefix.as_deref().unwrap_or("f");
    let mut labels = Vec::new();
    let mut weights = Vec::new();
    for i in 1..na {
        let w = a.weights()[i];
        if w == 0 {
            return Err(SweedlerError::ZeroWeight { label: a.label(i).to_string() });
        }
        for r in 0..nb {
            labels.push(if na == 2 { format!("{prefix}{r}") } else { format!("{prefix}{i}_{r}") });
            weights.push(w);
        }
    }
    let alphabet = Alphabet::new(labels, weights);
    let g = |i: usize, r: usize| g_poly(&alphabet, nb, i, r);
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    for i in 0..na {
        for j in 0..na {
            for t in 0..nb {
                let mut rel = NcPoly::zero();
                for r in 0..nb {
                    for s in 0..nb {
                        let c = b.c(r, s, t);
                        if !c.is_zero() {
                            rel.add_scaled(&g(i, r).mul(&g(j, s)), c);
                        }
                    }
                }
                for k in 0..na {
                    let c = a.c(i, j, k);
                    if !c.is_zero() {
                        rel.add_scaled(&g(k, t), &-c);
                    }
                }
                if !rel.is_zero() {
                    relations.push(rel);
                    sources.push([i, j, t]);
                }
            }
        }
    }
    let system = Arc::new(complete(alphabet.clone(), &relations, opts.completion)?);
    let mut f = SweedlerPresentation {
        a: a.clone(),
        b: b.clone(),
        alphabet,
        relations,
        sources,
        system,
        checks: CheckReport::new(),
    };
    let mut checks = f.relation_report()?;
    if f.is_endomorphic() {
        checks.extend(f.bialgebra_report()?);
    }
    f.checks = checks;
    Ok(f)
}

fn g_poly(alpha: &Arc<Alphabet>, nb: usize, i: usize, r: usize) -> NcPoly {
    if i == 0 {
        if r == 0 {
            NcPoly::one()
        } else {
            NcPoly::zero()
        }
    } else {
        NcPoly::word(alpha.letter((i - 1) * nb + r))
    }
}

impl SweedlerPresentation {
    pub fn a(&self) -> &FinAlgebra {
        &self.a
    }

    pub fn b(&self) -> &FinAlgebra {
        &self.b
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn system(&self) -> &Arc<RewritingSystem> {
        &self.system
    }

    pub fn bound(&self) -> u32 {
        self.system.bound()
    }

    /// The relations before completion, in generation order.
    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    /// `(i, j, t)` per relation.
    pub fn relation_sources(&self) -> &[[usize; 3]] {
        &self.sources
    }

    /// Build-time invariant checks.
    pub fn checks(&self) -> &CheckReport {
        &self.checks
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Letter index of `f_ir`, `i ≥ 1`.
    pub fn generator(&self, i: usize, r: usize) -> usize {
        assert!(i >= 1 && i < self.a.dim() && r < self.b.dim(), "f_{i}{r} out of range");
        (i - 1) * self.b.dim() + r
    }

    /// `(i, r)` of a letter.
    pub fn generator_indices(&self, g: usize) -> (usize, usize) {
        (g / self.b.dim() + 1, g % self.b.dim())
    }

    /// `f_ir` as a polynomial, with `f_0r = δ_0r`.
    pub fn g(&self, i: usize, r: usize) -> NcPoly {
        g_poly(&self.alphabet, self.b.dim(), i, r)
    }

    /// Coefficients of `η(a_i) = Σ_r f_ir ⊗ b_r`.
    pub fn eta(&self, i: usize) -> Vec<NcPoly> {
        (0..self.b.dim()).map(|r| self.g(i, r)).collect()
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, RewriteError> {
        self.system.normal_form(p)
    }

    pub fn parse(&self, src: &str) -> Result<NcPoly, ParseError> {
        NcPoly::parse(src, &self.alphabet, self.a.field())
    }

    pub fn display(&self, p: &NcPoly) -> String {
        p.display(&self.alphabet)
    }

    pub fn display_tensor(&self, t: &TensorPoly) -> String {
        let legs: Vec<&Alphabet> = (0..t.terms().next().map_or(2, |(w, _)| w.len())).map(|_| &*self.alphabet).collect();
        t.display(&legs)
    }

    /// `A = B` with the identical basis.
    pub fn is_endomorphic(&self) -> bool {
        self.a.same_structure(&self.b) && self.a.labels() == self.b.labels()
    }

    fn require_endo(&self, what: &'static str) -> Result<(), SweedlerError> {
        if self.is_endomorphic() {
            Ok(())
        } else {
            Err(SweedlerError::NotEndomorphic(what))
        }
    }

    /// `Δf_iu = Σ_s f_is ⊗ f_su`.
    pub fn delta(&self, g: usize) -> Result<TensorPoly, SweedlerError> {
        self.require_endo("the coproduct")?;
        let (i, u) = self.generator_indices(g);
        let mut out = TensorPoly::zero();
        for s in 0..self.a.dim() {
            out.add_scaled(&TensorPoly::pure(&[&self.g(i, s), &self.g(s, u)]), &Scalar::one());
        }
        Ok(out)
    }

    pub fn delta_images(&self) -> Result<Vec<TensorPoly>, SweedlerError> {
        (0..self.generator_count()).map(|g| self.delta(g)).collect()
    }

    /// `ε(f_ir) = δ_ir`.
    pub fn epsilon(&self, g: usize) -> Result<Scalar, SweedlerError> {
        self.require_endo("the counit")?;
        let (i, r) = self.generator_indices(g);
        Ok(if i == r { Scalar::one() } else { Scalar::zero() })
    }

    pub fn epsilon_images(&self) -> Result<Vec<Scalar>, SweedlerError> {
        (0..self.generator_count()).map(|g| self.epsilon(g)).collect()
    }

    /// `Δ` of a word, reduced in `F⊗F`.
    pub fn delta_word(&self, w: &Word) -> Result<TensorPoly, SweedlerError> {
        let images = self.delta_images()?;
        let target = TensorTarget(vec![&self.system, &self.system]);
        Ok(eval_poly(&target, &NcPoly::word(w.clone()), &images)?)
    }

    pub fn epsilon_poly(&self, p: &NcPoly) -> Result<Scalar, SweedlerError> {
        Ok(eval_poly(&FieldTarget, p, &self.epsilon_images()?)?)
    }

    /// Relations reduce to zero and `η` is multiplicative.
    pub fn relation_report(&self) -> Result<CheckReport, SweedlerError> {
        let mut report = CheckReport::new();
        for (k, rel) in self.relations.iter().enumerate() {
            let nf = self.normal_form(rel)?;
            if !nf.is_zero() {
                report.push(Finding::violation(
                    "relations",
                    format!("{} reduces to {}", self.display(rel), self.display(&nf)),
                    vec![k],
                ));
            }
        }
        let (na, nb) = (self.a.dim(), self.b.dim());
        for i in 0..na {
            for j in 0..na {
                let prod: Vec<Scalar> = self.a.mul_basis(i, j);
                for t in 0..nb {
                    let mut x = NcPoly::zero();
                    for r in 0..nb {
                        for s in 0..nb {
                            let c = self.b.c(r, s, t);
                            if !c.is_zero() {
                                x.add_scaled(&self.g(i, r).mul(&self.g(j, s)), c);
                            }
                        }
                    }
                    for (k, c) in prod.iter().enumerate() {
                        x.add_scaled(&self.g(k, t), &-c);
                    }
                    let nf = self.normal_form(&x)?;
                    if !nf.is_zero() {
                        report.push(Finding::violation(
                            "eta-multiplicative",
                            format!("coordinate {} of η({})η({}) - η({}{}) is {}", self.b.label(t), self.a.label(i), self.a.label(j), self.a.label(i), self.a.label(j), self.display(&nf)),
                            vec![i, j, t],
                        ));
                    }
                }
            }
        }
        Ok(report)
    }

    /// Coproduct multiplicative on relations, coassociative on generators,
    /// and the counit laws, all after reduction.
    pub fn bialgebra_report(&self) -> Result<CheckReport, SweedlerError> {
        self.require_endo("the bialgebra structure")?;
        let mut report = CheckReport::new();
        let sys = &*self.system;
        let delta = self.delta_images()?;
        let eps = self.epsilon_images()?;
        let square = TensorTarget(vec![sys, sys]);
        for (k, rel) in self.relations.iter().enumerate() {
            let img = eval_poly(&square, rel, &delta)?;
            if !img.is_zero() {
                report.push(Finding::violation(
                    "delta-multiplicative",
                    format!("Δ({}) = {}", self.display(rel), self.display_tensor(&img)),
                    vec![k],
                ));
            }
            let e = eval_poly(&FieldTarget, rel, &eps)?;
            if !e.is_zero() {
                report.push(Finding::violation("counit-relations", format!("ε({}) = {e}", self.display(rel)), vec![k]));
            }
        }
        let cube = [sys, sys, sys];
        let mut apply_delta = |w: &Word| eval_poly(&square, &NcPoly::word(w.clone()), &delta);
        for g in 0..self.generator_count() {
            let d = &delta[g];
            let left = d.map_leg(0, &mut apply_delta)?.reduce(&cube)?;
            let right = d.map_leg(1, &mut apply_delta)?.reduce(&cube)?;
            if left != right {
                report.push(Finding::violation(
                    "coassociativity",
                    format!(
                        "(Δ⊗1)Δ{0} = {1} but (1⊗Δ)Δ{0} = {2}",
                        self.alphabet.label(g),
                        self.display_tensor(&left),
                        self.display_tensor(&right)
                    ),
                    vec![g],
                ));
            }
            let f = NcPoly::word(self.alphabet.letter(g));
            for (side, leg) in [("left", 0usize), ("right", 1usize)] {
                let mut acc = NcPoly::zero();
                for (ws, c) in d.terms() {
                    let e = eval_poly(&FieldTarget, &NcPoly::word(ws[leg].clone()), &eps)?;
                    acc.add_scaled(&NcPoly::word(ws[1 - leg].clone()), &(c * &e));
                }
                if self.normal_form(&acc)? != self.normal_form(&f)? {
                    report.push(Finding::violation(
                        "counit",
                        format!("{side} counit law fails on {}: got {}", self.alphabet.label(g), self.display(&acc)),
                        vec![g, leg],
                    ));
                }
            }
        }
        Ok(report)
    }

    /// `Δf = …` lines, one per generator.
    pub fn delta_table(&self) -> Result<Vec<String>, SweedlerError> {
        (0..self.generator_count())
            .map(|g| Ok(format!("Δ{} = {}", self.alphabet.label(g), self.display_tensor(&self.delta(g)?))))
            .collect()
    }

    pub fn epsilon_table(&self) -> Result<Vec<String>, SweedlerError> {
        (0..self.generator_count())
            .map(|g| Ok(format!("ε({}) = {}", self.alphabet.label(g), self.epsilon(g)?)))
            .collect()
    }

    pub fn eta_table(&self) -> Vec<String> {
        (0..self.a.dim())
            .map(|i| {
                let parts: Vec<String> = self
                    .eta(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(r, p)| format!("{}⊗{}", self.display(p), self.b.label(r)))
                    .collect();
                format!("η({}) = {}", self.a.label(i), parts.join(" + "))
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<PresentationJson, SweedlerError> {
        Ok(PresentationJson {
            a: self.a.labels().to_vec(),
            b: self.b.labels().to_vec(),
            generators: self.alphabet.labels().to_vec(),
            weights: self.alphabet.weights().to_vec(),
            bound: self.bound(),
            relations: self.relations.iter().map(|r| self.display(r)).collect(),
            rules: self.system.rule_strings(),
            eta: self.eta_table(),
            delta: if self.is_endomorphic() { Some(self.delta_table()?) } else { None },
            epsilon: if self.is_endomorphic() { Some(self.epsilon_table()?) } else { None },
            dimension_sequence: self.system.dimension_sequence(self.bound()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub generators: Vec<String>,
    pub weights: Vec<u32>,
    pub bound: u32,
    pub relations: Vec<String>,
    pub rules: Vec<String>,
    pub eta: Vec<String>,
    pub delta: Option<Vec<String>>,
    pub epsilon: Option<Vec<String>>,
    pub dimension_sequence: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FieldSpec, UniPoly};

    fn complex(bound: u32) -> SweedlerPresentation {
        let a = FinAlgebra::quotient_poly(&UniPoly::from_ints(&[1, 0, 1]), &FieldSpec::Rationals).unwrap();
        build_f(&a, &a, &BuildOptions::with_bound(bound)).unwrap()
    }

    #[test]
    fn complex_case_generators_and_rules() {
        let f = complex(6);
        assert_eq!(f.alphabet().labels(), ["f0", "f1"]);
        assert!(f.checks().is_clean(), "{:?}", f.checks());
        let rules = f.system().rule_strings();
        assert_eq!(rules, ["f1.f0 -> -f0.f1", "f0.f0 -> f1.f1 - 1"]);
        assert_eq!(f.system().dimension_sequence(6), vec![1, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn complex_case_coproduct() {
        let f = complex(4);
        assert_eq!(f.delta_table().unwrap(), ["Δf0 = f0⊗1 + f1⊗f0", "Δf1 = f1⊗f1"]);
        assert_eq!(f.epsilon_table().unwrap(), ["ε(f0) = 0", "ε(f1) = 1"]);
        assert_eq!(f.eta_table()[1], "η(x) = f0⊗1 + f1⊗x");
    }

    #[test]
    fn dual_numbers_relations() {
        let a = FinAlgebra::dual_numbers(&FieldSpec::Rationals);
        let f = build_f(&a, &a, &BuildOptions::with_bound(5).prefix("g")).unwrap();
        assert!(f.checks().is_clean());
        for r in ["g0.g0", "g0.g1 + g1.g0"] {
            assert!(f.normal_form(&f.parse(r).unwrap()).unwrap().is_zero(), "{r}");
        }
        assert!(!f.normal_form(&f.parse("g0.g1").unwrap()).unwrap().is_zero());
        assert_eq!(f.delta_table().unwrap(), ["Δg0 = g0⊗1 + g1⊗g0", "Δg1 = g1⊗g1"]);
    }

    #[test]
    fn non_unit_first_rejected() {
        let m = FinAlgebra::matrix_algebra(2, &FieldSpec::Rationals);
        assert!(matches!(build_f(&m, &m, &BuildOptions::with_bound(3)), Err(SweedlerError::UnitNotFirst { which: "A" })));
    }

    #[test]
    fn counit_needs_endomorphic() {
        let a = FinAlgebra::dual_numbers(&FieldSpec::Rationals);
        let k = FinAlgebra::base_field(&FieldSpec::Rationals);
        let f = build_f(&a, &k, &BuildOptions::with_bound(3)).unwrap();
        assert!(matches!(f.epsilon(0), Err(SweedlerError::NotEndomorphic(_))));
    }
}
