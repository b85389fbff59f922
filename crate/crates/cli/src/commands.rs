use std::fmt::Display;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{Map, Value};
use sweedler_core::coalg::{convolution_algebra, dual_algebra, dual_coalgebra, ExtensionMap, MeasuringData};
use sweedler_core::exactnum::{FieldSpec, Matrix, Scalar};
use sweedler_core::extensions::{
    galois_check, loop_extension, monoid_check, monoid_closure, vandermonde_extension, LoopData, VandermondeData,
};
use sweedler_core::finalg::FinAlgebra;
use sweedler_core::freealg::{CompletionOptions, Schedule};
use sweedler_core::modcomod::{build_d, d_of_extension, tau_map, ModuleExtension};
use sweedler_core::report::{CheckReport, Finding};
use sweedler_core::sweedler::{
    build_f, chain_to_comodule, chain_to_comodule_shifted, comultiplication, f_of_extension, fmt_matrix, pareigis_check,
    qcalc_presentation, representation_to_measuring_coalgebra, verify_qcalc_equivalence, BuildOptions, ChainComplex,
    SweedlerPresentation,
};

use crate::error::CliError;
use crate::inputs::Inputs;
use crate::job::{Command, JobSpec};
use crate::report::Report;

fn compute(e: impl Display) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Default)]
struct Out {
    checks: CheckReport,
    art: Map<String, Value>,
}

impl Out {
    fn put(&mut self, key: &str, v: impl Serialize) {
        self.art.insert(key.to_string(), serde_json::to_value(v).expect("artifact serializes"));
    }

    fn check(&mut self, r: &CheckReport) {
        self.checks.extend(r.clone());
    }
}

fn schedule(job: &JobSpec) -> Schedule {
    job.shuffle.map_or(Schedule::Sorted, Schedule::Shuffled)
}

fn build_opts(job: &JobSpec, bound: u32) -> BuildOptions {
    let mut o = BuildOptions::with_bound(bound);
    o.completion.schedule = schedule(job);
    o
}

fn presentation(job: &JobSpec, a: &FinAlgebra, b: &FinAlgebra, bound: u32) -> Result<Arc<SweedlerPresentation>, CliError> {
    build_f(a, b, &build_opts(job, bound)).map(Arc::new).map_err(compute)
}

fn matrices(ms: &[Matrix<Scalar>]) -> Vec<String> {
    ms.iter().map(fmt_matrix).collect()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

/// Dispatches a validated job.
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    job.validate()?;
    let inp = Inputs::new(job)?;
    let mut out = Out::default();
    match job.command {
        Command::Present => present(job, &inp, &mut out)?,
        Command::Comul => comul(job, &inp, &mut out)?,
        Command::Counit => counit(job, &inp, &mut out)?,
        Command::Hilbert => hilbert(job, &inp, &mut out)?,
        Command::MapExtension => map_extension(job, &inp, &mut out)?,
        Command::Qcalc => qcalc(job, &inp, &mut out)?,
        Command::VerifyQcalc => verify_qcalc(job, &inp, &mut out)?,
        Command::Pareigis => pareigis(job, &mut out)?,
        Command::ChainComodule => chain(job, &inp, &mut out)?,
        Command::RepMeasure => rep_measure(job, &inp, &mut out)?,
        Command::Galois => galois(job, &inp, &mut out)?,
        Command::Monoid => monoid(&inp, &mut out)?,
        Command::Loop => loop_cmd(job, &inp, &mut out)?,
        Command::Dual => dual(&inp, &mut out)?,
        Command::Convolution => convolution(&inp, &mut out)?,
        Command::VerifyMeasuring => verify_measuring(&inp, &mut out)?,
        Command::Dmodule => dmodule(job, &inp, &mut out)?,
        Command::Tau => tau(job, &inp, &mut out)?,
        Command::DExtension => d_extension(job, &inp, &mut out)?,
    }
    Ok(Report::new(job, out.checks, out.art))
}

fn present(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let mut opts = build_opts(job, job.bound);
    if let Some(p) = inp.text("prefix")? {
        opts = opts.prefix(&p);
    }
    let f = build_f(&a, &b, &opts).map_err(compute)?;
    out.check(f.checks());
    out.put("presentation", f.to_json().map_err(compute)?);
    Ok(())
}

fn comul(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let c = inp.algebra_or("C", &a)?;
    let fac = presentation(job, &a, &c, job.bound)?;
    let m = comultiplication(&fac, &b).map_err(compute)?;
    out.check(&m.report);
    out.put("comultiplication", m.table());
    if m.source.is_endomorphic() && b.same_structure(&a) {
        let agrees = m.matches_delta().map_err(compute)?;
        if !agrees {
            out.checks.push(Finding::violation("comultiplication-delta", "Δ_A differs from the coalgebra Δ of F(A,A)", vec![]));
        }
        out.put("matches_delta", agrees);
    }
    Ok(())
}

fn counit(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let a = inp.algebra("A")?;
    let f = presentation(job, &a, &a, job.bound)?;
    out.check(f.checks());
    out.put("counit", f.epsilon_table().map_err(compute)?);
    Ok(())
}

fn hilbert(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let dmax = inp.count("dmax")?.map_or(job.bound, |d| d as u32);
    if dmax == 0 {
        return Err(CliError::invalid("dmax", "must be positive"));
    }
    let f = presentation(job, &a, &b, dmax)?;
    out.check(f.checks());
    out.put("generators", f.alphabet().labels());
    out.put("dimension_sequence", f.system().dimension_sequence(dmax));
    Ok(())
}

/// `σ: A → S⊗B` from `sigma` (`[i][s][r]`) or, with `S = k`, from the
/// B-coordinates of an algebra map (`algebra_map`, one row per basis element).
fn extension(inp: &Inputs) -> Result<ExtensionMap, CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let s = inp.algebra_opt("S")?.unwrap_or_else(|| FinAlgebra::base_field(a.field()));
    match (inp.has("sigma"), inp.has("algebra_map")) {
        (true, false) => ExtensionMap::new(a, s, b, inp.tensor("sigma")?).map_err(|e| CliError::invalid("sigma", e)),
        (false, true) => {
            if s.dim() != 1 {
                return Err(CliError::invalid("algebra_map", "an algebra map needs S = base_field"));
            }
            let m = inp.matrix("algebra_map", &inp.field)?;
            let rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
            ExtensionMap::from_algebra_map(a, b, &rows).map_err(|e| CliError::invalid("algebra_map", e))
        }
        _ => Err(CliError::Schema("give exactly one of 'sigma' or 'algebra_map'".into())),
    }
}

fn map_extension(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let ext = extension(inp)?;
    out.check(&ext.verify());
    if !out.checks.is_clean() {
        return Ok(());
    }
    let f = presentation(job, &ext.a, &ext.b, job.bound)?;
    let img = f_of_extension(&f, &ext).map_err(compute)?;
    out.check(&img.report);
    out.put("target", &img.target);
    out.put("images", &img.images);
    Ok(())
}

fn qcalc(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let p = inp.poly("p", &inp.field)?;
    let opts = CompletionOptions { schedule: schedule(job), ..CompletionOptions::with_bound(job.bound) };
    let q = qcalc_presentation(&p, &inp.field, opts).map_err(compute)?;
    out.put("generators", q.alphabet.labels());
    out.put("relations", q.relation_strings());
    out.put("rules", q.system.rule_strings());
    out.put("dimension_sequence", q.system.dimension_sequence(job.bound));
    Ok(())
}

fn verify_qcalc(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let p = inp.poly("p", &inp.field)?;
    let r = verify_qcalc_equivalence(&p, &inp.field, job.bound).map_err(compute)?;
    out.check(&r.report);
    out.put("qcalc_relations", &r.qcalc_relations);
    out.put("qcalc_rules", &r.qcalc_rules);
    out.put("matrix_rules", &r.matrix_rules);
    out.put("qcalc_sequence", &r.qcalc_sequence);
    out.put("matrix_sequence", &r.matrix_sequence);
    Ok(())
}

fn pareigis(job: &JobSpec, out: &mut Out) -> Result<(), CliError> {
    let r = pareigis_check(job.bound).map_err(compute)?;
    out.check(&r.report);
    out.put("f_rules", &r.f_rules);
    out.put("h_rules", &r.h_rules);
    out.put("f_sequence", &r.f_sequence);
    out.put("h_sequence", &r.h_sequence);
    out.put("derivation", &r.derivation);
    out.put("slot_assignment", &r.slot_assignment);
    Ok(())
}

fn chain(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let dn = FinAlgebra::dual_numbers(&inp.field);
    let f = build_f(&dn, &dn, &build_opts(job, job.bound).prefix("g")).map(Arc::new).map_err(compute)?;
    let complex = match (inp.indices("dims")?, inp.matrices_opt("d")?) {
        (Some(dims), Some(d)) => ChainComplex::new(dims, d).map_err(|e| CliError::invalid("d", e))?,
        (None, None) => ChainComplex::new(vec![1, 1], vec![Matrix::identity(1)]).expect("two-term complex"),
        _ => return Err(CliError::Schema("give both 'dims' and 'd', or neither".into())),
    };
    if complex.top_degree() as u32 >= job.bound {
        return Err(CliError::invalid("bound", format!("bound must exceed the top degree {}", complex.top_degree())));
    }
    let cm = chain_to_comodule(&complex, &f).map_err(compute)?;
    out.check(&cm.verify().map_err(compute)?);
    out.put("coaction", cm.coaction_table());
    // The exponent i + 1 is shift 2 relative to i - 1.
    let printed = chain_to_comodule_shifted(&complex, &f, 2).map_err(compute)?;
    let printed_report = printed.verify().map_err(compute)?;
    match printed_report.first_violation() {
        Some(v) => out.checks.push(Finding::warn(
            "printed-exponent",
            format!("the literature form g0 g1^(i+1) for the differential term is not a coaction: {}", v.detail),
        )),
        None => out.checks.push(Finding::info("printed-exponent", "g0 g1^(i+1) also passes on this complex")),
    }
    if let Some(count) = inp.count("random")? {
        let seed = inp.count("seed")?.unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut dims = Vec::new();
        for k in 0..count {
            let c = ChainComplex::random(&mut rng, 4, 3);
            let cm = chain_to_comodule(&c, &f).map_err(compute)?;
            for mut v in cm.verify().map_err(compute)?.findings {
                v.detail = format!("random complex {k}: {}", v.detail);
                out.checks.push(v);
            }
            dims.push(c.dims().to_vec());
        }
        out.put("random_dims", dims);
    }
    Ok(())
}

fn rep_measure(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let f = presentation(job, &a, &b, job.bound)?;
    let images = inp.matrices("images")?;
    let r = representation_to_measuring_coalgebra(&f, &images).map_err(compute)?;
    out.check(&r.report);
    out.put("images", &r.map.images);
    if let Some(m) = &r.measuring {
        out.check(&m.verify());
        out.put("coalgebra", m.h.to_json());
        out.put("rho", m.tensor().iter().map(|t| t.iter().map(|c| strings(c)).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    Ok(())
}

fn vandermonde(inp: &Inputs) -> Result<VandermondeData, CliError> {
    let p = inp.poly("p", &FieldSpec::Rationals)?;
    let roots = inp.scalars("roots", &inp.field)?;
    let n = roots.len();
    VandermondeData::new(p, inp.field.clone(), roots, (0..n).collect()).map_err(|e| CliError::invalid("roots", e))
}

fn galois(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let vd = vandermonde(inp)?;
    let sigma = inp.function("sigma")?.expect("required");
    vd.check_function(&sigma).map_err(|e| CliError::invalid("sigma", e))?;
    let a = vd.algebra().map_err(compute)?;
    let f = presentation(job, &a, &a, job.bound)?;
    let ext = vandermonde_extension(&vd, &sigma, &f).map_err(compute)?;
    out.check(&ext.report);
    out.put("w", strings(&ext.w));
    out.put("w_matrix", fmt_matrix(&ext.w_matrix));
    out.put("images", &ext.images.images);
    let g = galois_check(&vd, &sigma).map_err(compute)?;
    out.check(&g.report);
    if !g.galois {
        out.checks.push(Finding::violation("galois", &g.summary, vec![]));
    }
    out.put("galois", &g);
    Ok(())
}

fn monoid(inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let vd = vandermonde(inp)?;
    match (inp.function("sigma")?, inp.function("tau")?) {
        (Some(s), Some(t)) => {
            for (k, f) in [("sigma", &s), ("tau", &t)] {
                vd.check_function(f).map_err(|e| CliError::invalid(k, e))?;
            }
            let r = monoid_check(&vd, &s, &t).map_err(compute)?;
            if !r.tau_sigma {
                out.checks.push(Finding::violation("composition", format!("W_σ·W_τ ≠ W_(τ∘σ) for σ = {}, τ = {}", r.sigma, r.tau), vec![]));
            }
            out.put("monoid", r);
        }
        (None, None) => {
            let r = monoid_closure(&vd).map_err(|e| CliError::invalid("roots", e))?;
            out.check(&r.report);
            out.put("functions", &r.functions);
            out.put("law", &r.law);
            out.put("table", &r.table);
        }
        _ => return Err(CliError::Schema("give both 'sigma' and 'tau', or neither for the full table".into())),
    }
    Ok(())
}

fn loop_cmd(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let q = FieldSpec::Rationals;
    let p = inp.poly("p", &q)?;
    let z = inp.matrix("Z", &q)?;
    let ld = LoopData::new(p, z).map_err(|e| CliError::invalid("Z", e))?;
    let a = FinAlgebra::quotient_poly(ld.p(), &q).map_err(|e| CliError::invalid("p", e))?;
    let f = presentation(job, &a, &a, job.bound)?;
    let ext = loop_extension(&ld, &f).map_err(compute)?;
    out.check(&ext.report);
    out.put("nilpotency", ld.nilpotency());
    out.put("ad_terms", matrices(&ext.ad_terms));
    out.put("sigma_x", ext.display());
    out.put("images", &ext.images.images);
    Ok(())
}

fn dual(inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    match (inp.has("A"), inp.has("H")) {
        (true, false) => {
            let a = inp.algebra("A")?;
            let h = dual_coalgebra(&a);
            out.check(&h.validate());
            if !dual_algebra(&h).same_structure(&a) {
                out.checks.push(Finding::violation("round-trip", "(A°)* differs from A", vec![]));
            }
            out.put("coalgebra", h.to_json());
        }
        (false, true) => {
            let h = inp.coalgebra("H")?;
            let a = dual_algebra(&h);
            out.check(&a.validate());
            if !dual_coalgebra(&a).same_structure(&h) {
                out.checks.push(Finding::violation("round-trip", "(H*)° differs from H", vec![]));
            }
            out.put("algebra", a.to_json());
        }
        _ => return Err(CliError::Schema("dual: give exactly one of 'A' or 'H'".into())),
    }
    Ok(())
}

fn convolution(inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let h = inp.coalgebra("H")?;
    let b = inp.algebra("B")?;
    if h.field() != b.field() {
        return Err(CliError::invalid("B", format!("H is over {} but B is over {}", h.field(), b.field())));
    }
    let c = convolution_algebra(&h, &b);
    out.check(&c.validate());
    out.put("algebra", c.to_json());
    Ok(())
}

fn verify_measuring(inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let h = inp.coalgebra("H")?;
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let rho = inp.matrices("rho")?;
    let m = MeasuringData::from_maps(h, a, b, &rho).map_err(|e| CliError::invalid("rho", e))?;
    out.check(&m.verify());
    Ok(())
}

fn module_pair(
    job: &JobSpec,
    inp: &Inputs,
    bound: u32,
) -> Result<sweedler_core::modcomod::ModulePresentation, CliError> {
    let a = inp.algebra("A")?;
    let b = inp.algebra_or("B", &a)?;
    let m = inp.module("M", &a)?;
    let n = inp.module("N", &b)?;
    let f = presentation(job, &a, &b, bound)?;
    build_d(&m, &n, &f, bound).map_err(compute)
}

fn dmodule(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let dmax = inp.count("dmax")?.map_or(job.bound, |d| d as u32);
    let d = module_pair(job, inp, dmax)?;
    out.check(d.checks());
    out.put("generators", d.system().gen_labels());
    out.put("rules", d.rule_strings());
    out.put("dimension_sequence", d.dimension_sequence(dmax));
    out.put("f_sequence", d.f().system().dimension_sequence(dmax));
    Ok(())
}

fn tau(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let d = module_pair(job, inp, job.bound)?;
    out.check(d.checks());
    let t = tau_map(&d);
    out.check(&t.report);
    out.put("tau", &t.table);
    Ok(())
}

fn d_extension(job: &JobSpec, inp: &Inputs, out: &mut Out) -> Result<(), CliError> {
    let ext = extension(inp)?;
    let m = inp.module("M", &ext.a)?;
    let w = inp.module("W", &ext.s)?;
    let n = inp.module("N", &ext.b)?;
    let rho = inp.matrices("rho")?;
    let me = ModuleExtension::new(ext.clone(), m.clone(), w, n.clone(), rho).map_err(|e| CliError::invalid("rho", e))?;
    let f = presentation(job, &ext.a, &ext.b, job.bound)?;
    let d = build_d(&m, &n, &f, job.bound).map_err(compute)?;
    out.check(d.checks());
    let r = d_of_extension(&d, &me).map_err(compute)?;
    out.check(&r.report);
    out.put("images", &r.images);
    Ok(())
}
