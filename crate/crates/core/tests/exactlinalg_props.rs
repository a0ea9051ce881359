use monotoric_core::exactlinalg::{
    dual_lattice, elementary_divisors, hnf, integer_kernel, is_hnf, snf_index, IntMatrix, LatticeBasis, Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
        .prop_map(|r| IntMatrix::from_i64(&r))
}

fn shape() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

fn nonsingular(k: usize) -> impl Strategy<Value = IntMatrix> {
    matrix(k, k).prop_filter("nonsingular", |m| !m.determinant().unwrap().is_zero())
}

proptest! {
    #[test]
    fn hnf_factorization(m in shape()) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h.clone());
        prop_assert!(u.determinant().unwrap().abs().is_one());
        prop_assert!(is_hnf(&h));
        let (h2, _) = hnf(&h);
        prop_assert_eq!(h2, h);
    }

    #[test]
    fn kernel_is_saturated(m in shape()) {
        let k = integer_kernel(&m);
        prop_assert_eq!(k.rows(), m.cols() - m.rank());
        if k.rows() > 0 {
            let prod = m.mul(&k.transpose()).unwrap();
            prop_assert!(prod.to_rows().iter().flatten().all(Zero::is_zero));
            // saturated: all elementary divisors equal 1
            prop_assert!(elementary_divisors(&k).iter().all(One::is_one));
        }
    }

    #[test]
    fn dual_pairing_is_unimodular(m in (1usize..=3).prop_flat_map(nonsingular)) {
        let lat = LatticeBasis::from_generators(&m);
        let dual = dual_lattice(&lat).unwrap();
        let rows = dual.rows();
        let basis = lat.basis().to_rows();
        let mut gram = Vec::new();
        for r in &rows {
            let mut line = Vec::new();
            for b in &basis {
                let s: Rational = r
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x * Rational::from_integer(y.clone()))
                    .sum();
                prop_assert!(s.is_integer());
                line.push(s.to_integer());
            }
            gram.push(line);
        }
        let g = IntMatrix::from_rows(basis.len(), gram).unwrap();
        prop_assert!(g.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn index_is_multiplicative(a in (1usize..=3).prop_flat_map(nonsingular), seed in any::<u64>()) {
        let k = a.rows();
        let b_rows: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { 1 + ((seed >> (i * 4 + j)) & 1) as i64 } else { 0 }).collect())
            .collect();
        let b = IntMatrix::from_i64(&b_rows);
        let full = LatticeBasis::standard(k);
        let mid = LatticeBasis::from_generators(&a);
        let small = LatticeBasis::from_generators(&b.mul(&a).unwrap());
        let i1 = snf_index(&mid, &full).unwrap();
        let i2 = snf_index(&small, &mid).unwrap();
        let i3 = snf_index(&small, &full).unwrap();
        prop_assert_eq!(&i1 * &i2, i3.clone());
        prop_assert_eq!(i3, (b.determinant().unwrap() * a.determinant().unwrap()).abs());
    }
}

#[test]
fn small_hnf_example() {
    let m = IntMatrix::from_i64(&[[2, 4], [1, 1]]);
    let (h, u) = hnf(&m);
    assert_eq!(h, IntMatrix::from_i64(&[[1, 1], [0, 2]]));
    assert_eq!(u.mul(&m).unwrap(), h);
    assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
}
