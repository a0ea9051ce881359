use monotoric_core::analysis::{analyze, AnalysisOptions};
use monotoric_core::exactlinalg::rational::rat_frac;
use monotoric_core::families::{
    even_divisors, exist2_predicted, realizable_exist1, realizable_exist2, redundant_simplex_range, FamilySpec,
};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn product_spec() -> impl Strategy<Value = FamilySpec> {
    (2usize..=8)
        .prop_flat_map(|h| {
            let p = 2 * h;
            (Just(p), (p + 4..=32usize).prop_filter("even", |n| n % 2 == 0), 0..=(p - 2) / 2)
        })
        .prop_map(|(p, n, k)| FamilySpec::ProductSimplices { p, n, k: 2 * k })
        .prop_filter("family hypotheses", |s| s.warnings().is_empty())
}

fn redundant_spec() -> impl Strategy<Value = FamilySpec> {
    (2usize..=16).prop_flat_map(|h| {
        let n = 2 * h + 1;
        let ks: Vec<usize> = redundant_simplex_range(n as u64).map(|k| k as usize).collect();
        prop::sample::select(ks).prop_map(move |k| FamilySpec::RedundantSimplex { n, k })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_family_pipeline(spec in product_spec()) {
        let FamilySpec::ProductSimplices { p, n, k } = spec else { unreachable!() };
        let r = analyze(&spec.polytope().unwrap(), &AnalysisOptions::default()).unwrap();
        prop_assert!(r.structure.delzant && r.structure.fano && r.structure.irredundant());
        prop_assert_eq!(r.invariants.minimal_maslov, BigInt::from(p.gcd(&(n - p + k))));
        prop_assert!(r.invariants.monotone);
        prop_assert_eq!(r.invariants.monotonicity_coeff, Some(rat_frac(1, 2)));
        prop_assert_eq!(r.family, Some(spec));
        prop_assert!(r.discrepancies.is_empty());
    }

    #[test]
    fn redundant_family_pipeline(spec in redundant_spec()) {
        let FamilySpec::RedundantSimplex { n, k } = spec else { unreachable!() };
        let r = analyze(&spec.polytope().unwrap(), &AnalysisOptions::default()).unwrap();
        prop_assert_eq!(r.structure.strict_redundant(), vec![n - 1]);
        prop_assert_eq!(r.structure.redundant.len(), 1);
        prop_assert_eq!(r.invariants.loop_index.clone(), BigInt::from(2));
        prop_assert_eq!(r.invariants.minimal_maslov, BigInt::from((n - 1).gcd(&(2 * k + 2))));
        prop_assert!(!r.invariants.monotone);
        prop_assert_eq!(r.discrepancies.len(), 1);
    }

    #[test]
    fn exist1_values_are_even_divisors(h in 2u64..=8, extra in 0u64..=3) {
        let p = 2 * h;
        let n = 2 * p + 2 * extra;
        let e = realizable_exist1(p, n).unwrap();
        let values = e.realization.value_set();
        prop_assert!(values.iter().all(|v| p % v == 0 && v % 2 == 0));
        prop_assert!(e.constructive_valid);
    }

    #[test]
    fn exist2_matches_mod_four_rule(h in 2u64..=50) {
        let n = 2 * h + 1;
        let r = realizable_exist2(n).unwrap();
        prop_assert_eq!(r.value_set(), exist2_predicted(n));
        let m = n - 1;
        for v in r.value_set() {
            prop_assert!(m % v == 0 && v % 2 == 0 && v < m);
            if m % 4 == 0 {
                prop_assert_eq!(v % 4, 2);
            }
        }
        if m % 4 == 2 {
            let all: Vec<u64> = even_divisors(m).into_iter().filter(|&d| d < m).collect();
            prop_assert_eq!(r.value_set(), all);
        }
    }
}
