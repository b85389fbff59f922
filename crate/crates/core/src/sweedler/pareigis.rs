use serde::Serialize;

use crate::exactnum::{FieldSpec, Scalar};
use crate::finalg::FinAlgebra;
use crate::freealg::{complete, eval_poly, Alphabet, CompletionOptions, NcPoly, PresentationTarget, TensorPoly, TensorTarget};
use crate::report::{CheckReport, Finding};

use super::{build_f, BuildOptions, SweedlerError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PareigisReport {
    pub f_rules: Vec<String>,
    pub h_rules: Vec<String>,
    pub f_sequence: Vec<u64>,
    pub h_sequence: Vec<u64>,
    /// How the second relation of `H⁻` follows from `xy + yx = 0`.
    pub derivation: String,
    pub slot_assignment: String,
    pub report: CheckReport,
}

/// Compares `F(k[d]/d², k[d]/d²)` with `H⁻ = k⟨x̂, ŵ⟩/(x̂², x̂ŵ + ŵx̂)` under
/// `g0 ↦ x̂`, `g1 ↦ ŵ`.
pub fn pareigis_check(bound: u32) -> Result<PareigisReport, SweedlerError> {
    let q = FieldSpec::Rationals;
    let dn = FinAlgebra::dual_numbers(&q);
    let f = build_f(&dn, &dn, &BuildOptions::with_bound(bound).prefix("g"))?;
    let h_alpha = Alphabet::uniform(vec!["xh".into(), "wh".into()]);
    let h_rel: Vec<NcPoly> = ["xh.xh", "xh.wh + wh.xh"]
        .iter()
        .map(|s| NcPoly::parse(s, &h_alpha, &q))
        .collect::<Result<_, _>>()?;
    let h = complete(h_alpha.clone(), &h_rel, CompletionOptions::with_bound(bound))?;
    let mut report = CheckReport::new();

    let x = NcPoly::word(h_alpha.letter(0));
    let w = NcPoly::word(h_alpha.letter(1));
    let forward = [x.clone(), w.clone()];
    let to_h = PresentationTarget(&h);
    for (k, rel) in f.relations().iter().enumerate() {
        let img = eval_poly(&to_h, rel, &forward)?;
        if !img.is_zero() {
            report.push(Finding::violation("relations-forward", format!("{} ↦ {}", f.display(rel), img.display(&h_alpha)), vec![k]));
        }
    }
    let backward = [f.g(1, 0), f.g(1, 1)];
    let to_f = PresentationTarget(f.system());
    for (k, rel) in h_rel.iter().enumerate() {
        let img = eval_poly(&to_f, rel, &backward)?;
        if !img.is_zero() {
            report.push(Finding::violation("relations-backward", format!("{} ↦ {}", rel.display(&h_alpha), f.display(&img)), vec![k]));
        }
    }
    let f_sequence = f.system().dimension_sequence(bound);
    let h_sequence = h.dimension_sequence(bound);
    if f_sequence != h_sequence {
        report.push(Finding::violation("dimension-sequence", format!("{f_sequence:?} vs {h_sequence:?}"), vec![]));
    }

    // Coproduct of H⁻: x̂ ↦ x̂⊗1 + ŵ⊗x̂, ŵ ↦ ŵ⊗ŵ.
    let one = NcPoly::one();
    let dh = [
        TensorPoly::pure(&[&x, &one]).add(&TensorPoly::pure(&[&w, &x])),
        TensorPoly::pure(&[&w, &w]),
    ];
    let hh = TensorTarget(vec![&h, &h]);
    for (k, rel) in h_rel.iter().enumerate() {
        if !eval_poly(&hh, rel, &dh)?.is_zero() {
            report.push(Finding::violation("h-coproduct", format!("Δ is not multiplicative on {}", rel.display(&h_alpha)), vec![k]));
        }
    }
    // g_i and the H⁻ generator share the letter index, so words carry over unchanged.
    let df = f.delta_images()?;
    let flipped = |t: &TensorPoly| {
        let mut out = TensorPoly::zero();
        for (ws, c) in t.terms() {
            out.add_term(vec![ws[1].clone(), ws[0].clone()], c.clone());
        }
        out
    };
    let same = df.iter().zip(&dh).all(|(a, b)| a == b);
    let same_flipped = df.iter().zip(&dh).all(|(a, b)| &flipped(a) == b);
    let slot_assignment = match (same, same_flipped) {
        (true, false) => "first tensor slot of Δg matches the first slot of Δx̂ (both carry h(2))".to_string(),
        (false, true) => "coproducts agree only after swapping tensor slots".to_string(),
        (true, true) => "coproducts agree in either slot order".to_string(),
        (false, false) => "coproducts disagree in both slot orders".to_string(),
    };
    if !same {
        report.push(Finding::violation("coproduct", slot_assignment.clone(), vec![]));
    }
    let ef = f.epsilon_images()?;
    let eh = [Scalar::zero(), Scalar::one()];
    if ef != eh {
        report.push(Finding::violation("counit", format!("ε(g0), ε(g1) = {}, {}", ef[0], ef[1]), vec![]));
    }

    let g01 = f.normal_form(&f.parse("g0.g1")?)?;
    let xw = h.normal_form(&NcPoly::parse("xh.wh", &h_alpha, &q)?)?;
    if !g01.is_zero() && !xw.is_zero() {
        report.push(Finding::warn(
            "printed-relations",
            format!(
                "the literature form \"g0g1 = g1g0 = 0 = g0^2\" is stronger than what η(d)² = 0 forces \
                 (g0^2 = 0 and g0g1 + g1g0 = 0); here g0.g1 has normal form {} and x̂ŵ = {} ≠ 0 in H⁻, \
                 so the anticommutator form is used",
                f.display(&g01),
                xw.display(&h_alpha)
            ),
        ));
    }
    Ok(PareigisReport {
        f_rules: f.system().rule_strings(),
        h_rules: h.rule_strings(),
        f_sequence,
        h_sequence,
        derivation: "w(xy + yx)w = wx(yw) + (wy)xw = wx + xw with w = 1/y, so x̂ = x and ŵ = w satisfy x̂ŵ + ŵx̂ = 0".into(),
        slot_assignment,
        report,
    })
}
