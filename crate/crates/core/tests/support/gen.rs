//! Random presentations for property tests.

use monotoric_core::exactlinalg::rational::rat;
use monotoric_core::exactlinalg::IntMatrix;
use monotoric_core::polytope::HPolytope;
use proptest::prelude::*;

/// A box `0 <= x_i <= c_i` in dimension 2 or 3 with up to two extra cuts.
pub fn boxed_polytope() -> impl Strategy<Value = HPolytope> {
    (2usize..=3).prop_flat_map(|dim| {
        (
            prop::collection::vec(1i64..=4, dim),
            prop::collection::vec(
                (prop::collection::vec(-2i64..=2, dim), -2i64..=6)
                    .prop_filter("nonzero normal", |(a, _)| a.iter().any(|&x| x != 0)),
                0..=2,
            ),
        )
            .prop_map(move |(caps, cuts)| {
                let mut cols: Vec<(Vec<i64>, i64)> = Vec::new();
                for i in 0..dim {
                    let mut e = vec![0; dim];
                    e[i] = 1;
                    cols.push((e.clone(), 0));
                    e[i] = -1;
                    cols.push((e, caps[i]));
                }
                cols.extend(cuts);
                let rows: Vec<Vec<i64>> =
                    (0..dim).map(|r| cols.iter().map(|(a, _)| a[r]).collect()).collect();
                HPolytope::new(IntMatrix::from_i64(&rows), cols.iter().map(|(_, b)| rat(*b)).collect())
                    .unwrap()
            })
    })
}

/// `Delta^a x Delta^b` with arbitrary positive offsets, always Delzant.
pub fn product_of_simplices() -> impl Strategy<Value = HPolytope> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
        prop::collection::vec(1i64..=4, a + b + 2).prop_map(move |offs| {
            let dim = a + b;
            let n = dim + 2;
            let mut rows = vec![vec![0i64; n]; dim];
            for i in 0..a {
                rows[i][i] = 1;
                rows[i][a] = -1;
            }
            for i in a..dim {
                rows[i][i + 1] = 1;
                rows[i][n - 1] = -1;
            }
            HPolytope::new(IntMatrix::from_i64(&rows), offs.iter().map(|&b| rat(b)).collect()).unwrap()
        })
    })
}
