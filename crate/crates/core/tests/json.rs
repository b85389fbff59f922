use proptest::prelude::*;
use sweedler_core::coalg::{dual_coalgebra, FinCoalgebra};
use sweedler_core::exactnum::{FieldSpec, Rational, Scalar, UniPoly};
use sweedler_core::finalg::FinAlgebra;
use sweedler_core::text::{parse_field, parse_scalar};

fn round_trip_algebra(a: &FinAlgebra) {
    let text = serde_json::to_string(&a.to_json()).unwrap();
    let back = FinAlgebra::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert!(back.same_structure(a));
    assert_eq!(back.labels(), a.labels());
    assert_eq!(back.weights(), a.weights());
    assert_eq!(back.field(), a.field());
}

#[test]
fn catalog_round_trips() {
    let q = FieldSpec::Rationals;
    let k = parse_field("Q[t]/(t^2 + 1)").unwrap();
    for f in [&q, &k] {
        for a in [
            FinAlgebra::dual_numbers(f),
            FinAlgebra::conjugation_algebra(f),
            FinAlgebra::matrix_algebra(2, f),
            FinAlgebra::base_field(f),
            FinAlgebra::quotient_poly(&UniPoly::from_ints(&[-2, 0, 0, 1]), f).unwrap(),
        ] {
            round_trip_algebra(&a);
            let h = dual_coalgebra(&a);
            let text = serde_json::to_string(&h.to_json()).unwrap();
            let back = FinCoalgebra::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert!(back.same_structure(&h));
        }
    }
}

#[test]
fn rejects_broken_structure() {
    let mut j = FinAlgebra::dual_numbers(&FieldSpec::Rationals).to_json();
    // d·1 = 0 breaks the unit law
    j.c[1][0][1] = "0".into();
    assert!(FinAlgebra::from_json(&j).is_err());
}

fn scalar_in(field: &FieldSpec, coeffs: &[(i64, i64)]) -> Scalar {
    let c = coeffs.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect();
    Scalar::residue(field, c)
}

proptest! {
    #[test]
    fn scalars_round_trip(coeffs in proptest::collection::vec((-20i64..20, 1i64..7), 0..4)) {
        let k = parse_field("Q[t]/(t^3 - 2)").unwrap();
        let s = scalar_in(&k, &coeffs);
        prop_assert_eq!(parse_scalar(&s.to_string(), &k).unwrap(), s);
    }

    #[test]
    fn quotient_algebras_round_trip(p in proptest::collection::vec((-5i64..5, 1i64..4), 1..4)) {
        let mut c: Vec<Scalar> = p.iter().map(|&(n, d)| Scalar::frac(n, d)).collect();
        c.push(Scalar::one());
        let a = FinAlgebra::quotient_poly(&UniPoly::new(c), &FieldSpec::Rationals).unwrap();
        round_trip_algebra(&a);
    }
}
