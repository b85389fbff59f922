use std::sync::Arc;

use sweedler_core::coalg::{ExtensionMap, FinCoalgebra, MeasuringData};
use sweedler_core::exactnum::{FieldSpec, Matrix, Scalar, UniPoly};
use sweedler_core::finalg::FinAlgebra;
use sweedler_core::modcomod::*;
use sweedler_core::sweedler::{build_f, representation_extension, BuildOptions, SweedlerPresentation};

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn complex() -> FinAlgebra {
    FinAlgebra::quotient_poly(&UniPoly::from_ints(&[1, 0, 1]), &q()).unwrap()
}

fn m(rows: &[&[i64]]) -> Matrix<Scalar> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
}

fn f_of(a: &FinAlgebra, bound: u32) -> Arc<SweedlerPresentation> {
    Arc::new(build_f(a, a, &BuildOptions::with_bound(bound)).unwrap())
}

fn conj_matrix() -> Matrix<Scalar> {
    m(&[&[1, 0], &[0, -1]])
}

fn add(x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

#[test]
fn base_field_case_is_m_tensor_n_dual() {
    let k = FinAlgebra::base_field(&q());
    let f = f_of(&k, 4);
    let d = build_d(&FinModule::trivial(&k, 2).unwrap(), &FinModule::trivial(&k, 3).unwrap(), &f, 4).unwrap();
    assert!(d.checks().is_clean());
    assert_eq!(d.dimension_sequence(4), vec![6, 0, 0, 0, 0]);
    assert!(d.rule_strings().is_empty());
    let tau = tau_map(&d);
    assert!(tau.report.is_clean());
    assert_eq!(tau.table[0], "τ(m0) = [m0⊗m0*]⊗m0 + [m0⊗m1*]⊗m1 + [m0⊗m2*]⊗m2");
}

#[test]
fn free_rank_law() {
    for a in [complex(), FinAlgebra::dual_numbers(&q())] {
        let f = f_of(&a, 4);
        let reg = FinModule::regular(&a);
        let d = build_d(&reg, &reg, &f, 4).unwrap();
        assert!(d.checks().is_clean(), "{:?}", d.checks());
        let fs = f.system().dimension_sequence(4);
        let want: Vec<u64> = fs.iter().map(|x| 2 * x).collect();
        assert_eq!(d.dimension_sequence(4), want);
    }
}

#[test]
fn free_generators_are_unit_tensors() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let d = build_d(&reg, &reg, &f, 4).unwrap();
    let basis = d.system().module_basis(0);
    let labels: Vec<&str> = basis.iter().map(|t| d.system().gen_labels()[t.gen].as_str()).collect();
    assert_eq!(labels, vec!["[1⊗1*]", "[1⊗x*]"]);
}

#[test]
fn direct_sums_add() {
    let a = FinAlgebra::dual_numbers(&q());
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    // k with d acting by zero
    let triv = FinModule::new(a.clone(), vec![m(&[&[1]]), m(&[&[0]])]).unwrap();
    let seq = |x: &FinModule, y: &FinModule| build_d(x, y, &f, 4).unwrap().dimension_sequence(4);
    let sum = reg.direct_sum(&triv).unwrap();
    assert_eq!(seq(&sum, &reg), add(&seq(&reg, &reg), &seq(&triv, &reg)));
    assert_eq!(seq(&reg, &sum), add(&seq(&reg, &reg), &seq(&reg, &triv)));
    // F/F·g0 keeps only the powers of the grouplike g1.
    assert_eq!(seq(&triv, &triv), vec![1, 1, 1, 1, 1]);
}

#[test]
fn tau_is_a_module_map() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let d = build_d(&reg, &reg, &f, 4).unwrap();
    let tau = tau_map(&d);
    assert!(tau.report.is_clean(), "{:?}", tau.report);
    assert_eq!(tau.table, vec!["τ(1) = [1⊗1*]⊗1 + [1⊗x*]⊗x", "τ(x) = [x⊗1*]⊗1 + [x⊗x*]⊗x"]);
    // [x⊗ν] = f-terms on [1⊗ν]
    let nf = d.system().normal_form(&d.gen(1, 0)).unwrap();
    assert_eq!(d.display(&nf), "f0.[1⊗1*] - f1.[1⊗x*]");
}

#[test]
fn zero_module() {
    let a = complex();
    let f = f_of(&a, 3);
    let d = build_d(&FinModule::zero(&a), &FinModule::regular(&a), &f, 3).unwrap();
    assert!(tau_map(&d).table.is_empty());
    assert_eq!(d.dimension_sequence(3), vec![0, 0, 0, 0]);
}

#[test]
fn naturality_of_tau() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let sum = reg.direct_sum(&reg).unwrap();
    let d1 = build_d(&reg, &reg, &f, 4).unwrap();
    let d2 = build_d(&sum, &reg, &f, 4).unwrap();
    // m ↦ (m, x m)
    let phi = m(&[&[1, 0], &[0, 1], &[0, -1], &[1, 0]]);
    assert!(naturality_check(&d1, &d2, &phi).unwrap().is_clean());
    // multiplication by x is a module map of the commutative algebra
    assert!(naturality_check(&d1, &d1, &m(&[&[0, -1], &[1, 0]])).unwrap().is_clean());
    assert!(naturality_check(&d1, &d1, &conj_matrix()).is_err());
}

fn conjugation_extension() -> ModuleExtension {
    let a = complex();
    let sigma = ExtensionMap::from_algebra_map(a.clone(), a.clone(), &[vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::int(-1)]]).unwrap();
    let w = FinModule::trivial(&FinAlgebra::base_field(&q()), 1).unwrap();
    let reg = FinModule::regular(&a);
    // ρ(m) = 1⊗conj(m)
    let rho = vec![m(&[&[1, 0]]), m(&[&[0, -1]])];
    ModuleExtension::new(sigma, reg.clone(), w, reg, rho).unwrap()
}

#[test]
fn conjugation_factors_through_d() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let d = build_d(&reg, &reg, &f, 4).unwrap();
    let ext = conjugation_extension();
    assert!(ext.verify().is_clean());
    let out = d_of_extension(&d, &ext).unwrap();
    assert!(out.report.is_clean(), "{:?}", out.report);
    assert_eq!(out.images[3], ("[x⊗x*]".to_string(), vec!["-1".to_string()]));
}

#[test]
fn representation_module_factors_through_d() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let d = build_d(&reg, &reg, &f, 4).unwrap();
    // f0 ↦ diag(1,-1), f1 ↦ [[0,1],[2,0]]: f0² - f1² + 1 = 0 and f0f1 + f1f0 = 0
    let images = [m(&[&[1, 0], &[0, -1]]), m(&[&[0, 1], &[2, 0]])];
    let sigma = representation_extension(&f, &images).unwrap();
    assert!(sigma.verify().is_clean());
    let w = FinModule::standard(2, &q());
    let v = [Scalar::one(), Scalar::int(3)];
    // ρ(a_p) = σ(a_p)(v⊗1)
    let rho: Vec<Matrix<Scalar>> = (0..2)
        .map(|p| {
            Matrix::from_fn(2, 2, |row, r| {
                let mut acc = Scalar::zero();
                for e in 0..4 {
                    let (i, j) = (e / 2, e % 2);
                    if i == row {
                        acc += &(sigma.sigma(p, e, r) * &v[j]);
                    }
                }
                acc
            })
        })
        .collect();
    let ext = ModuleExtension::new(sigma, reg.clone(), w, reg, rho).unwrap();
    assert!(ext.verify().is_clean(), "{:?}", ext.verify());
    let out = d_of_extension(&d, &ext).unwrap();
    assert!(out.report.is_clean(), "{:?}", out.report);
    let (x, gamma, meas) = ext.to_measuring_comodule();
    assert!(x.validate().is_clean());
    assert!(verify_measuring_comodule(&gamma, &meas, &x, &ext.m, &ext.n).unwrap().is_clean());
}

#[test]
fn broken_module_extension_is_reported() {
    let a = complex();
    let f = f_of(&a, 4);
    let reg = FinModule::regular(&a);
    let d = build_d(&reg, &reg, &f, 4).unwrap();
    let good = conjugation_extension();
    let bad = ModuleExtension::new(good.sigma.clone(), good.m.clone(), good.w.clone(), good.n.clone(), vec![m(&[&[1, 0]]), m(&[&[0, 1]])]).unwrap();
    assert!(!bad.verify().is_clean());
    let out = d_of_extension(&d, &bad).unwrap();
    assert!(out.report.violations().any(|v| v.check == "module-relation-image"));
}

#[test]
fn grouplike_measuring_comodule() {
    let a = complex();
    let h = FinCoalgebra::grouplike(&q());
    let rho = MeasuringData::from_maps(h.clone(), a.clone(), a.clone(), &[conj_matrix()]).unwrap();
    let x = FinComodule::new(h, vec!["f".into()], vec![vec![vec![Scalar::one()]]]).unwrap();
    let reg = FinModule::regular(&a);
    assert!(verify_measuring_comodule(&[conj_matrix()], &rho, &x, &reg, &reg).unwrap().is_clean());
    let mut bad = conj_matrix();
    bad.set(0, 1, Scalar::one());
    let r = verify_measuring_comodule(&[bad], &rho, &x, &reg, &reg).unwrap();
    let v = r.first_violation().expect("perturbation detected");
    assert_eq!(v.check, "measuring-comodule");
    // γ(f)(x·1) is the first place the law breaks.
    assert_eq!(v.location, vec![0, 1, 0]);
}

#[test]
fn extension_duals_measure() {
    let ext = conjugation_extension();
    let (x, gamma, meas) = ext.to_measuring_comodule();
    assert!(x.validate().is_clean());
    assert!(meas.verify().is_clean());
    assert!(verify_measuring_comodule(&gamma, &meas, &x, &ext.m, &ext.n).unwrap().is_clean());
}

#[test]
fn dual_comodules() {
    for a in [complex(), FinAlgebra::dual_numbers(&q()), FinAlgebra::conjugation_algebra(&q())] {
        let x = dual_comodule(&FinModule::regular(&a));
        assert!(x.validate().is_clean());
        assert_eq!(x.dim(), a.dim());
    }
    let bad = FinComodule::new_unchecked(FinCoalgebra::grouplike(&q()), vec!["f".into()], vec![vec![vec![Scalar::int(2)]]]).unwrap();
    assert!(!bad.validate().is_clean());
}
