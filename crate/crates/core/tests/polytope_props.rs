mod support {
    pub mod gen;
}

use monotoric_core::exactlinalg::rational::rat;
use monotoric_core::exactlinalg::Rational;
use monotoric_core::polytope::{analyze_structure, enumerate_vertices, is_fano, redundancy, HPolytope, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;
use support::gen::{boxed_polytope, product_of_simplices};

const BUDGET: u64 = 100_000;

fn pair(x: &[Rational], a: &[BigInt]) -> Rational {
    x.iter().zip(a).map(|(x, c)| x * Rational::from_integer(c.clone())).sum()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn with_perm() -> impl Strategy<Value = (HPolytope, Vec<usize>)> {
    boxed_polytope().prop_flat_map(|p| {
        let n = p.len();
        (Just(p), permutation(n))
    })
}

proptest! {
    #[test]
    fn reordering_inequalities_changes_nothing((p, perm) in with_perm()) {
        let q = p.permuted(&perm);
        let a = analyze_structure(&p, BUDGET).unwrap();
        let b = analyze_structure(&q, BUDGET).unwrap();
        prop_assert_eq!(a.empty, b.empty);
        prop_assert_eq!(a.vertex_count, b.vertex_count);
        prop_assert_eq!(a.simple, b.simple);
        prop_assert_eq!(a.generic, b.generic);
        prop_assert_eq!(a.delzant, b.delzant);
        prop_assert_eq!(a.fano, b.fano);
        let mut mapped: Vec<(usize, bool)> =
            b.redundant.iter().map(|r| (perm[r.index], r.strict)).collect();
        mapped.sort();
        let original: Vec<(usize, bool)> = a.redundant.iter().map(|r| (r.index, r.strict)).collect();
        prop_assert_eq!(mapped, original);
    }

    #[test]
    fn fano_is_translation_invariant(p in product_of_simplices(), y in prop::collection::vec(-3i64..=3, 6)) {
        let y: Vec<_> = y.into_iter().take(p.dim()).map(rat).collect();
        let a = is_fano(&p);
        let b = is_fano(&p.translated(&y));
        prop_assert_eq!(a.fano, b.fano);
        prop_assert_eq!(a.constant, b.constant);
    }

    #[test]
    fn strictly_redundant_cut_keeps_vertices(p in boxed_polytope(), a in prop::collection::vec(-2i64..=2, 3)) {
        let a: Vec<BigInt> = a.into_iter().take(p.dim()).map(BigInt::from).collect();
        prop_assume!(a.iter().any(|x| *x != BigInt::from(0)));
        let before = enumerate_vertices(&p, BUDGET).unwrap();
        prop_assume!(!before.empty && before.bounded);
        // strictly exceed the minimum of <a, x> over the vertices
        let min = before
            .vertices
            .iter()
            .map(|v| pair(&v.point, &a))
            .min()
            .unwrap();
        let q = p.with_inequality(&a, -min + rat(1)).unwrap();
        let after = enumerate_vertices(&q, BUDGET).unwrap();
        let pts = |v: &VertexSet| {
            let mut x: Vec<_> = v.vertices.iter().map(|w| w.point.clone()).collect();
            x.sort();
            x
        };
        prop_assert_eq!(pts(&before), pts(&after));
        let r = redundancy(&q, BUDGET).unwrap();
        prop_assert!(r.strict_indices().contains(&p.len()));
    }

    #[test]
    fn delzant_implies_simple_and_generic(p in boxed_polytope()) {
        let s = analyze_structure(&p, BUDGET).unwrap();
        if s.delzant {
            prop_assert!(s.simple && s.generic);
        }
    }

    #[test]
    fn products_of_simplices_are_delzant(p in product_of_simplices()) {
        let s = analyze_structure(&p, BUDGET).unwrap();
        prop_assert!(s.delzant && s.irredundant() && s.bounded);
    }
}
