use std::sync::Arc;

use rand::Rng;

use crate::exactnum::{nullspace, Matrix, Scalar};
use crate::freealg::{eval_poly, Alphabet, FieldTarget, NcPoly, RewritingSystem, TensorPoly, TensorTarget, Word};
use crate::report::{CheckReport, Finding};

use super::{SweedlerError, SweedlerPresentation};

/// `M_0 ← M_1 ← … ← M_N`; `d[i-1]` is `d_i: M_i → M_{i-1}` as a
/// `dim M_{i-1} x dim M_i` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    d: Vec<Matrix<Scalar>>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, d: Vec<Matrix<Scalar>>) -> Result<Self, SweedlerError> {
        if dims.is_empty() || d.len() + 1 != dims.len() {
            return Err(SweedlerError::Input("need one differential per positive degree".into()));
        }
        for (i, m) in d.iter().enumerate() {
            if m.rows() != dims[i] || m.cols() != dims[i + 1] {
                return Err(SweedlerError::Input(format!(
                    "d_{} must be {}x{}, got {}x{}",
                    i + 1,
                    dims[i],
                    dims[i + 1],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for i in 1..d.len() {
            if !(&d[i - 1] * &d[i]).is_zero() {
                return Err(SweedlerError::Input(format!("d_{} ∘ d_{} ≠ 0", i, i + 1)));
            }
        }
        Ok(Self { dims, d })
    }

    /// Random complex with `d² = 0`: each `d_i` is a random combination of
    /// functionals vanishing on the image of `d_{i+1}`.
    pub fn random<R: Rng>(rng: &mut R, max_dim: usize, max_degree: usize) -> Self {
        let top = rng.gen_range(1..=max_degree);
        let dims: Vec<usize> = (0..=top).map(|_| rng.gen_range(1..=max_dim)).collect();
        let mut d: Vec<Matrix<Scalar>> = vec![Matrix::zeros(0, 0); top];
        let entry = |rng: &mut R| Scalar::int(rng.gen_range(-3..=3));
        for i in (1..=top).rev() {
            let (rows, cols) = (dims[i - 1], dims[i]);
            let m = if i == top {
                Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect())
            } else {
                // Rows of d_i lie in the left kernel of d_{i+1}.
                let kernel = nullspace(&d[i].transpose());
                Matrix::from_rows(
                    (0..rows)
                        .map(|_| {
                            let mut row = vec![Scalar::zero(); cols];
                            for v in &kernel {
                                let c = entry(rng);
                                for (x, y) in row.iter_mut().zip(v) {
                                    *x += &(&c * y);
                                }
                            }
                            row
                        })
                        .collect(),
                )
            };
            d[i - 1] = m;
        }
        Self::new(dims, d).expect("random complex satisfies d² = 0")
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// `d_i`, `i ≥ 1`.
    pub fn differential(&self, i: usize) -> &Matrix<Scalar> {
        &self.d[i - 1]
    }

    /// Offset of degree `i` in the flat basis.
    pub fn offset(&self, i: usize) -> usize {
        self.dims[..i].iter().sum()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// A chain complex as a comodule over `F(k[d]/d², k[d]/d²)`.
#[derive(Debug, Clone)]
pub struct GradedComodule {
    pub coalgebra: Arc<SweedlerPresentation>,
    pub complex: ChainComplex,
    /// The `g0` exponent shift relative to `i - 1`.
    pub exponent_shift: i64,
    space: Arc<Alphabet>,
    /// `ρ(m)` for each flat basis element, legs (coalgebra word, basis letter).
    coaction: Vec<TensorPoly>,
}

/// `ρ(m) = g1^i⊗m + g0 g1^{i-1}⊗dm` on `M_i`, `i ≥ 1`, and `1⊗m` on `M_0`.
pub fn chain_to_comodule(c: &ChainComplex, f: &Arc<SweedlerPresentation>) -> Result<GradedComodule, SweedlerError> {
    chain_to_comodule_shifted(c, f, 0)
}

/// As `chain_to_comodule` with the `g1` exponent of the differential term
/// moved to `i - 1 + shift`.
pub fn chain_to_comodule_shifted(
    c: &ChainComplex,
    f: &Arc<SweedlerPresentation>,
    shift: i64,
) -> Result<GradedComodule, SweedlerError> {
    if f.a().dim() != 2 || !f.is_endomorphic() || !f.a().c(1, 1, 0).is_zero() || !f.a().c(1, 1, 1).is_zero() {
        return Err(SweedlerError::Input("the coalgebra must be F(k[d]/d², k[d]/d²)".into()));
    }
    let labels: Vec<String> = (0..=c.top_degree()).flat_map(|i| (0..c.dims[i]).map(move |k| format!("m{i}_{k}"))).collect();
    let space = Alphabet::uniform(labels);
    let (g0, g1) = (f.generator(1, 0) as u16, f.generator(1, 1) as u16);
    let alpha = f.alphabet();
    let mut coaction = Vec::with_capacity(c.total_dim());
    for i in 0..=c.top_degree() {
        for k in 0..c.dims[i] {
            let m = space.letter(c.offset(i) + k);
            let mut rho = TensorPoly::basis(vec![alpha.word(&vec![g1; i]), m], Scalar::one());
            if i >= 1 {
                let e = i as i64 - 1 + shift;
                if e < 0 {
                    return Err(SweedlerError::Input(format!("negative exponent {e} in degree {i}")));
                }
                let mut letters = vec![g0];
                letters.extend(std::iter::repeat(g1).take(e as usize));
                let word = alpha.word(&letters);
                let d = c.differential(i);
                for r in 0..c.dims[i - 1] {
                    let coef = d.get(r, k);
                    if !coef.is_zero() {
                        rho.add_term(vec![word.clone(), space.letter(c.offset(i - 1) + r)], coef.clone());
                    }
                }
            }
            coaction.push(rho);
        }
    }
    Ok(GradedComodule { coalgebra: f.clone(), complex: c.clone(), exponent_shift: shift, space, coaction })
}

impl GradedComodule {
    pub fn space(&self) -> &Arc<Alphabet> {
        &self.space
    }

    pub fn coaction(&self, m: usize) -> &TensorPoly {
        &self.coaction[m]
    }

    pub fn coaction_table(&self) -> Vec<String> {
        let alphas = [&**self.coalgebra.alphabet(), &*self.space];
        (0..self.coaction.len())
            .map(|m| format!("ρ({}) = {}", self.space.label(m), self.coaction[m].display(&alphas)))
            .collect()
    }

    /// Coassociativity `(Δ⊗1)ρ = (1⊗ρ)ρ` and the counit law `(ε⊗1)ρ = id`.
    pub fn verify(&self) -> Result<CheckReport, SweedlerError> {
        let f = &self.coalgebra;
        let sys = &**f.system();
        // The space leg never rewrites; this system only carries its alphabet.
        let free = RewritingSystem::free(self.space.clone(), 1);
        let systems = [sys, sys, &free];
        let delta = f.delta_images()?;
        let eps = f.epsilon_images()?;
        let square = TensorTarget(vec![sys, sys]);
        let mut report = CheckReport::new();
        let alphas = [&**f.alphabet(), &**f.alphabet(), &*self.space];
        for (m, rho) in self.coaction.iter().enumerate() {
            let lhs = rho
                .map_leg(0, &mut |w: &Word| eval_poly(&square, &NcPoly::word(w.clone()), &delta))?
                .reduce(&systems)?;
            let rhs = rho
                .map_leg(1, &mut |w: &Word| Ok(self.coaction[w.letters()[0] as usize].clone()))?
                .reduce(&systems)?;
            if lhs != rhs {
                report.push(Finding::violation(
                    "comodule-coassociativity",
                    format!(
                        "on {}: (Δ⊗1)ρ = {} but (1⊗ρ)ρ = {}",
                        self.space.label(m),
                        lhs.display(&alphas),
                        rhs.display(&alphas)
                    ),
                    vec![m],
                ));
            }
            let mut back = vec![Scalar::zero(); self.coaction.len()];
            for (ws, c) in rho.terms() {
                let e = eval_poly(&FieldTarget, &NcPoly::word(ws[0].clone()), &eps)?;
                back[ws[1].letters()[0] as usize] += &(c * &e);
            }
            let expected: Vec<Scalar> = (0..back.len()).map(|j| if j == m { Scalar::one() } else { Scalar::zero() }).collect();
            if back != expected {
                report.push(Finding::violation("comodule-counit", format!("(ε⊗1)ρ({}) ≠ {}", self.space.label(m), self.space.label(m)), vec![m]));
            }
        }
        Ok(report)
    }
}
