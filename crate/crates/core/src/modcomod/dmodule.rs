use std::sync::Arc;

use serde::Serialize;

use crate::exactnum::{Matrix, Scalar};
use crate::freealg::{complete_module, eval_poly, CompletionOptions, MatrixTarget, ModElem, ModuleSystem, NcPoly};
use crate::report::{CheckReport, Finding};
use crate::sweedler::{f_of_images, SweedlerPresentation};

use super::{FinModule, ModuleError, ModuleExtension};

/// `D(M,N)` as a module over `F(A,B)` on generators `[m_p⊗n_u*]`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    f: Arc<SweedlerPresentation>,
    m: FinModule,
    n: FinModule,
    relations: Vec<ModElem>,
    /// `(i, p, u)` per relation.
    sources: Vec<[usize; 3]>,
    system: ModuleSystem,
    checks: CheckReport,
}

/// One relation per `(a_i, m_p, n_u*)`:
/// `[(a_i m_p)⊗n_u*] = Σ_{r,v} ⟨n_u*, b_r n_v⟩ f_ir·[m_p⊗n_v*]`.
/// `[m_p⊗n_u*]` has the weight of `m_p`.
pub fn build_d(m: &FinModule, n: &FinModule, f: &Arc<SweedlerPresentation>, bound: u32) -> Result<ModulePresentation, ModuleError> {
    if !m.algebra().same_structure(f.a()) || !n.algebra().same_structure(f.b()) {
        return Err(ModuleError::Input("M and N must be modules over the algebras of F".into()));
    }
    if bound > f.bound() {
        return Err(ModuleError::Input(format!("F was completed to {}, below the requested bound {bound}", f.bound())));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let gen = |p: usize, u: usize| p * dn + u;
    let labels: Vec<String> = (0..dm).flat_map(|p| (0..dn).map(move |u| (p, u))).map(|(p, u)| format!("[{}⊗{}*]", m.label(p), n.label(u))).collect();
    let weights: Vec<u32> = (0..dm).flat_map(|p| std::iter::repeat(m.weights()[p]).take(dn)).collect();
    let a = f.a();
    let mut relations = Vec::new();
    let mut sources = Vec::new();
    for i in 0..a.dim() {
        for p in 0..dm {
            for u in 0..dn {
                let mut rel = ModElem::zero();
                for q in 0..dm {
                    let c = m.action(i).get(q, p);
                    if !c.is_zero() {
                        rel.add_poly_gen(c, &NcPoly::one(), gen(q, u), weights[gen(q, u)]);
                    }
                }
                for r in 0..f.b().dim() {
                    let g = f.g(i, r);
                    for v in 0..dn {
                        let c = n.action(r).get(u, v);
                        if !c.is_zero() {
                            rel.add_poly_gen(&-c, &g, gen(p, v), weights[gen(p, v)]);
                        }
                    }
                }
                if !rel.is_zero() {
                    relations.push(rel);
                    sources.push([i, p, u]);
                }
            }
        }
    }
    let cap = CompletionOptions::default().rule_cap;
    let system = complete_module(f.system().clone(), labels, weights, &relations, bound, cap)?;
    let mut checks = CheckReport::new();
    for (k, r) in relations.iter().enumerate() {
        if !system.normal_form(r)?.is_zero() {
            checks.push(Finding::violation("module-relations", format!("relation {} does not reduce to 0", r.display(&system)), vec![k]));
        }
    }
    for amb in system.check_confluence()? {
        checks.push(Finding::violation("module-confluence", amb, vec![]));
    }
    Ok(ModulePresentation { f: f.clone(), m: m.clone(), n: n.clone(), relations, sources, system, checks })
}

impl ModulePresentation {
    pub fn f(&self) -> &Arc<SweedlerPresentation> {
        &self.f
    }

    pub fn m(&self) -> &FinModule {
        &self.m
    }

    pub fn n(&self) -> &FinModule {
        &self.n
    }

    pub fn system(&self) -> &ModuleSystem {
        &self.system
    }

    pub fn relations(&self) -> &[ModElem] {
        &self.relations
    }

    pub fn relation_sources(&self) -> &[[usize; 3]] {
        &self.sources
    }

    pub fn checks(&self) -> &CheckReport {
        &self.checks
    }

    pub fn bound(&self) -> u32 {
        self.system.bound()
    }

    /// `[m_p⊗n_u*]`.
    pub fn gen(&self, p: usize, u: usize) -> ModElem {
        self.system.generator(p * self.n.dim() + u)
    }

    pub fn dimension_sequence(&self, dmax: u32) -> Vec<u64> {
        self.system.dimension_sequence(dmax)
    }

    pub fn rule_strings(&self) -> Vec<String> {
        self.system.rule_strings()
    }

    pub fn display(&self, e: &ModElem) -> String {
        e.display(&self.system)
    }

    /// `Σ_q c_q [m_q⊗n_u*]` for `a·m_p = Σ c_q m_q`.
    fn act_m(&self, i: usize, p: usize, u: usize) -> ModElem {
        let mut out = ModElem::zero();
        for q in 0..self.m.dim() {
            let c = self.m.action(i).get(q, p);
            if !c.is_zero() {
                out.add_scaled(&self.gen(q, u), c);
            }
        }
        out
    }

    /// Coefficient of `n_u` in `η(a_i)·τ(m_p)`.
    fn eta_tau(&self, i: usize, p: usize, u: usize) -> ModElem {
        let mut out = ModElem::zero();
        for r in 0..self.f.b().dim() {
            let g = self.f.g(i, r);
            for v in 0..self.n.dim() {
                let c = self.n.action(r).get(u, v);
                if !c.is_zero() {
                    out.add_scaled(&self.gen(p, v).left_mul(&g), c);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauTable {
    pub table: Vec<String>,
    pub report: CheckReport,
}

/// `τ(m_p) = Σ_v [m_p⊗n_v*]⊗n_v`, checked against `τ(a·m) = η(a)·τ(m)`.
pub fn tau_map(d: &ModulePresentation) -> TauTable {
    let (m, n) = (d.m(), d.n());
    let table = (0..m.dim())
        .map(|p| {
            let parts: Vec<String> = (0..n.dim()).map(|v| format!("{}⊗{}", d.system.gen_labels()[p * n.dim() + v], n.label(v))).collect();
            let rhs = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
            format!("τ({}) = {rhs}", m.label(p))
        })
        .collect();
    let mut report = CheckReport::new();
    let a = d.f.a();
    for i in 0..a.dim() {
        for p in 0..m.dim() {
            for u in 0..n.dim() {
                let diff = d.act_m(i, p, u).sub(&d.eta_tau(i, p, u));
                match d.system.normal_form(&diff) {
                    Ok(nf) if nf.is_zero() => {}
                    Ok(nf) => report.push(Finding::violation(
                        "tau-module-map",
                        format!("coefficient of {} in τ({}·{}) - η({})τ({}) is {}", n.label(u), a.label(i), m.label(p), a.label(i), m.label(p), d.display(&nf)),
                        vec![i, p, u],
                    )),
                    Err(e) => report.push(Finding::violation("bound", format!("τ({}·{}): {e}", a.label(i), m.label(p)), vec![i, p, u])),
                }
            }
        }
    }
    TauTable { table, report }
}

/// For a module map `φ: M → M′` over the identity of `A`,
/// `[m_p⊗ν] ↦ [φ(m_p)⊗ν]` must kill the relations of `D(M,N)` inside
/// `D(M′,N)` and commute with the two `τ` tables.
pub fn naturality_check(d: &ModulePresentation, d2: &ModulePresentation, phi: &Matrix<Scalar>) -> Result<CheckReport, ModuleError> {
    if !Arc::ptr_eq(d.f(), d2.f()) || d.n() != d2.n() {
        return Err(ModuleError::Input("both presentations must share F and N".into()));
    }
    let (m, m2, n) = (d.m(), d2.m(), d.n());
    if !m.is_module_map(m2, phi) {
        return Err(ModuleError::Input("φ is not a module map".into()));
    }
    let image = |gen: usize| {
        let (p, u) = (gen / n.dim(), gen % n.dim());
        let mut out = ModElem::zero();
        for q in 0..m2.dim() {
            let c = phi.get(q, p);
            if !c.is_zero() {
                out.add_scaled(&d2.gen(q, u), c);
            }
        }
        out
    };
    let push = |e: &ModElem| {
        let mut out = ModElem::zero();
        for (t, c) in e.terms() {
            out.add_scaled(&image(t.gen).left_mul(&NcPoly::word(t.word.clone())), c);
        }
        out
    };
    let mut report = CheckReport::new();
    for (k, r) in d.relations().iter().enumerate() {
        let nf = d2.system().normal_form(&push(r))?;
        if !nf.is_zero() {
            report.push(Finding::violation("naturality-relations", format!("relation {k} maps to {}", d2.display(&nf)), vec![k]));
        }
    }
    for p in 0..m.dim() {
        for u in 0..n.dim() {
            // (φ_*⊗1)τ(m_p) against τ(φ(m_p)), coefficient of n_u.
            let lhs = push(&d.gen(p, u));
            let mut rhs = ModElem::zero();
            for q in 0..m2.dim() {
                rhs.add_scaled(&d2.gen(q, u), phi.get(q, p));
            }
            if d2.system().normal_form(&lhs.sub(&rhs))? != ModElem::zero() {
                report.push(Finding::violation("naturality-tau", format!("τ tables disagree at {} and {}", m.label(p), n.label(u)), vec![p, u]));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DExtensionImages {
    /// `([m_p⊗n_u*], coordinates in W)`.
    pub images: Vec<(String, Vec<String>)>,
    pub report: CheckReport,
}

/// `D(ρ): [m_p⊗n_u*] ↦ (1⊗n_u*)ρ(m_p) ∈ W`, a module map over `F(σ)`.
pub fn d_of_extension(d: &ModulePresentation, ext: &ModuleExtension) -> Result<DExtensionImages, ModuleError> {
    let f = d.f();
    if ext.m != *d.m() || ext.n != *d.n() || !ext.sigma.a.same_structure(f.a()) || !ext.sigma.b.same_structure(f.b()) {
        return Err(ModuleError::Input("the module extension does not match D(M,N)".into()));
    }
    let mut report = ext.verify();
    let dw = ext.w.dim();
    // F(σ)(f_ir) = s_ir acting on W.
    let gens: Vec<Matrix<Scalar>> = (0..f.generator_count())
        .map(|g| {
            let (i, r) = f.generator_indices(g);
            let s: Vec<Scalar> = (0..ext.sigma.s.dim()).map(|k| ext.sigma.sigma(i, k, r).clone()).collect();
            ext.w.act(&s)
        })
        .collect();
    report.extend(f_of_images(f, &gens)?.report);
    let nd = d.n().dim();
    let vectors: Vec<Vec<Scalar>> = (0..d.m().dim() * nd).map(|g| ext.rho(g / nd).column(g % nd)).collect();
    let target = MatrixTarget::over::<Scalar>(dw);
    let eval = |e: &ModElem| -> Result<Vec<Scalar>, ModuleError> {
        let mut out = vec![Scalar::zero(); dw];
        for (t, c) in e.terms() {
            let op = eval_poly(&target, &NcPoly::word(t.word.clone()), &gens)?;
            for (o, x) in out.iter_mut().zip(op.apply(&vectors[t.gen])) {
                *o += &(c * &x);
            }
        }
        Ok(out)
    };
    for (k, r) in d.relations().iter().enumerate() {
        let v = eval(r)?;
        if v.iter().any(|x| !x.is_zero()) {
            let [i, p, u] = d.relation_sources()[k];
            report.push(Finding::violation(
                "module-relation-image",
                format!("relation for ({}, {}, {}*) maps to a nonzero vector", f.a().label(i), d.m().label(p), d.n().label(u)),
                vec![k],
            ));
        }
    }
    for p in 0..d.m().dim() {
        let back = Matrix::from_fn(dw, nd, |w, u| eval(&d.gen(p, u)).map(|v| v[w].clone()).unwrap_or_else(|_| Scalar::zero()));
        if &back != ext.rho(p) {
            report.push(Finding::violation("factorization", format!("(D(ρ)⊗1)τ({}) ≠ ρ({})", d.m().label(p), d.m().label(p)), vec![p]));
        }
    }
    let labels = d.system().gen_labels();
    let images = vectors.iter().enumerate().map(|(g, v)| (labels[g].clone(), v.iter().map(|x| x.to_string()).collect())).collect();
    Ok(DExtensionImages { images, report })
}
