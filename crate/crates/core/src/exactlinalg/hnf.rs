//! Row Hermite normal form and saturated integer kernels.
//!
//! Convention: `H = U * M` with `U` unimodular. The nonzero rows of `H`
//! come first, their leading entries (pivots) are positive and sit in strictly
//! increasing columns, and every entry above a pivot lies in `[0, pivot)`.
//! All-zero rows are collected at the bottom.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form together with the unimodular transform.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;

    for col in 0..m.cols() {
        if pivot_row == m.rows() {
            break;
        }
        // Euclid on the column below pivot_row: keep the smallest nonzero
        // magnitude on top and reduce the rest until they vanish.
        loop {
            let best = (pivot_row..m.rows())
                .filter(|&r| !h[(r, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);

            let mut done = true;
            for r in pivot_row + 1..m.rows() {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
                h.sub_row_multiple(r, pivot_row, &q);
                u.sub_row_multiple(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        if h[(pivot_row, col)].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = h[(r, col)].div_floor(&h[(pivot_row, col)]);
            h.sub_row_multiple(r, pivot_row, &q);
            u.sub_row_multiple(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Column index of the leading entry of every nonzero row of an HNF matrix.
pub fn pivot_columns(h: &IntMatrix) -> alloc::vec::Vec<usize> {
    h.row_iter()
        .filter_map(|r| r.iter().position(|x| !x.is_zero()))
        .collect()
}

/// Returns true if `m` already satisfies the row-HNF shape conditions.
pub fn is_hnf(m: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for i in 0..m.rows() {
        let row = m.row(i);
        match row.iter().position(|x| !x.is_zero()) {
            None => seen_zero = true,
            Some(p) => {
                if seen_zero || last_pivot.is_some_and(|lp| p <= lp) {
                    return false;
                }
                let piv: &BigInt = &row[p];
                if !piv.is_positive() {
                    return false;
                }
                for r in 0..i {
                    let e = &m[(r, p)];
                    if e.is_negative() || e >= piv {
                        return false;
                    }
                }
                last_pivot = Some(p);
            }
        }
    }
    true
}

/// Saturated basis of `{v in Z^cols : M v = 0}`, one basis vector per row, in HNF.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf(&m.transpose());
    let rank = h.nonzero_rows();
    let idx: alloc::vec::Vec<usize> = (rank..m.cols()).collect();
    let kernel = u.select_rows(&idx);
    hnf(&kernel).0.truncate_zero_rows()
}
