//! Free noncommutative polynomials, truncated completion of two-sided
//! ideals, normal forms and monomial bases, plus the module and tensor
//! variants built on the same reduction.

mod eval;
mod module;
mod poly;
mod system;
mod tensor;
mod word;

pub use eval::{eval_poly, AlgebraTarget, CoordTarget, FieldTarget, MatrixTarget, MatrixTargetOf, PresentationTarget, TensorTarget};
pub use module::{complete_module, ModElem, ModTerm, ModuleRule, ModuleSystem};
pub use poly::NcPoly;
pub use system::{
    complete, CompletionOptions, RewriteError, RewritingSystem, Rule, Schedule, SystemJson, DEFAULT_BOUND,
    DEFAULT_RULE_CAP,
};
pub use tensor::TensorPoly;
pub use word::{Alphabet, Word};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FieldSpec, Scalar};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn two() -> Arc<Alphabet> {
        Alphabet::uniform(vec!["f0".into(), "f1".into()])
    }

    fn parse(s: &str, a: &Arc<Alphabet>) -> NcPoly {
        NcPoly::parse(s, a, &FieldSpec::Rationals).unwrap()
    }

    fn complex_system(bound: u32) -> RewritingSystem {
        let a = two();
        let rels = [parse("f0.f0 - f1.f1 + 1", &a), parse("f0.f1 + f1.f0", &a)];
        complete(a, &rels, CompletionOptions::with_bound(bound)).unwrap()
    }

    #[test]
    fn complex_rules() {
        let sys = complex_system(6);
        assert_eq!(sys.rule_strings(), vec!["f1.f0 -> -f0.f1", "f0.f0 -> f1.f1 - 1"]);
        assert!(sys.check_confluence().unwrap().is_empty());
        let a = sys.alphabet().clone();
        assert_eq!(sys.normal_form(&parse("f1.f0", &a)).unwrap(), parse("-f0.f1", &a));
        // f0^3 = f0 (f1^2 - 1)
        assert_eq!(sys.normal_form(&parse("f0^3", &a)).unwrap(), parse("f0.f1.f1 - f0", &a));
        let irreducible = parse("f0.f1.f1 + 2*f1", &a);
        assert_eq!(sys.normal_form(&irreducible).unwrap(), irreducible);
    }

    #[test]
    fn complex_basis_and_dimensions() {
        let sys = complex_system(6);
        let a = sys.alphabet().clone();
        let basis: Vec<String> = sys.monomial_basis(3).iter().map(|w| a.fmt_word(w)).collect();
        assert_eq!(basis, vec!["f0.f1.f1", "f1.f1.f1"]);
        assert_eq!(sys.dimension_sequence(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn dual_number_rules() {
        let a = Alphabet::uniform(vec!["g0".into(), "g1".into()]);
        let rels = [parse("g0.g0", &a), parse("g1.g0 + g0.g1", &a)];
        let sys = complete(a.clone(), &rels, CompletionOptions::with_bound(6)).unwrap();
        assert_eq!(sys.rule_count(), 2);
        let basis: Vec<String> = sys.monomial_basis(2).iter().map(|w| a.fmt_word(w)).collect();
        assert_eq!(basis, vec!["g0.g1", "g1.g1"]);
        assert_eq!(sys.dimension_sequence(4), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn free_algebra() {
        let sys = complete(two(), &[], CompletionOptions::with_bound(6)).unwrap();
        assert_eq!(sys.rule_count(), 0);
        assert_eq!(sys.monomial_basis(2).len(), 4);
        let one = complete(Alphabet::uniform(vec!["x".into()]), &[], CompletionOptions::with_bound(5)).unwrap();
        assert_eq!(one.dimension_sequence(5), vec![1; 6]);
    }

    #[test]
    fn bound_exceeded() {
        let sys = complex_system(4);
        let a = sys.alphabet().clone();
        let err = sys.normal_form(&parse("f0^5", &a)).unwrap_err();
        assert!(matches!(err, RewriteError::BoundExceeded { weight: 5, bound: 4 }));
    }

    #[test]
    fn new_rules_found_by_completion() {
        // f0.f0 -> f1.f0 overlaps itself on f0^3 and forces f0.f1.f0 -> f1.f1.f0.
        let a = two();
        let rels = [parse("f0.f0 - f1.f0", &a)];
        let sys = complete(a.clone(), &rels, CompletionOptions::with_bound(6)).unwrap();
        assert!(sys.rule_count() > 1);
        assert!(sys.rule_strings().contains(&"f0.f1.f0 -> f1.f1.f0".to_string()), "{:?}", sys.rule_strings());
        assert!(sys.check_confluence().unwrap().is_empty());
        assert!(sys.normal_form(&rels[0]).unwrap().is_zero());
    }

    #[test]
    fn schedules_agree() {
        let a = Alphabet::uniform(vec!["a".into(), "b".into(), "c".into()]);
        let rels = [parse("a.b - b.c", &a), parse("b.a - c.c + a", &a), parse("c.a.b - 2*b", &a)];
        let sorted = complete(a.clone(), &rels, CompletionOptions::with_bound(6)).unwrap();
        for seed in 0..4 {
            let opts = CompletionOptions { schedule: Schedule::Shuffled(seed), ..CompletionOptions::with_bound(6) };
            let shuffled = complete(a.clone(), &rels, opts).unwrap();
            assert_eq!(shuffled.rule_strings(), sorted.rule_strings());
        }
    }

    #[test]
    fn rule_cap_reports_partial_system() {
        let a = Alphabet::uniform(vec!["a".into(), "b".into(), "c".into()]);
        let rels = [parse("a.b - b.c", &a), parse("b.a - c.c + a", &a), parse("c.a.b - 2*b", &a)];
        let opts = CompletionOptions { rule_cap: 2, ..CompletionOptions::with_bound(6) };
        match complete(a, &rels, opts) {
            Err(RewriteError::RuleCap { partial, .. }) => assert!(partial.rule_count() > 2),
            other => panic!("expected rule cap, got {other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        let a = two();
        let p = parse("3/2*f0.f1.f1 - f1 - 1", &a);
        assert_eq!(p.display(&a), "3/2*f0.f1.f1 - f1 - 1");
        assert_eq!(parse(&p.display(&a), &a), p);
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
        prop::collection::vec((prop::collection::vec(0u16..2, 0..5), -3i64..4), 0..6)
    }

    fn build(a: &Arc<Alphabet>, terms: &[(Vec<u16>, i64)]) -> NcPoly {
        NcPoly::from_terms(terms.iter().map(|(w, c)| (a.word(w), Scalar::int(*c))))
    }

    proptest! {
        #[test]
        fn normal_form_idempotent_and_linear(p in poly_strategy(), q in poly_strategy(), c in -3i64..4) {
            let sys = complex_system(6);
            let a = sys.alphabet().clone();
            let (p, q) = (build(&a, &p), build(&a, &q));
            let np = sys.normal_form(&p).unwrap();
            prop_assert_eq!(sys.normal_form(&np).unwrap(), np.clone());
            let combo = p.scale(&Scalar::int(c)).add(&q);
            let lhs = sys.normal_form(&combo).unwrap();
            let rhs = np.scale(&Scalar::int(c)).add(&sys.normal_form(&q).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn normal_forms_are_irreducible(p in poly_strategy()) {
            let sys = complex_system(6);
            let a = sys.alphabet().clone();
            let nf = sys.normal_form(&build(&a, &p)).unwrap();
            for (w, _) in nf.terms() {
                prop_assert!(sys.is_irreducible(w));
            }
        }
    }
}
