mod support {
    pub mod brute;
}

use monotoric_core::obstruction::{
    admissible_maslov, collapse_page, run_engine, run_engine_detail, HomologyProfile,
};
use proptest::prelude::*;
use support::brute::vanishing_assignment_exists;

/// Profiles with total dimension at most 10 and `dim L` at most 12.
fn small_profile() -> impl Strategy<Value = (Vec<(usize, u64)>, usize, bool)> {
    (1usize..=12, any::<bool>())
        .prop_flat_map(|(l_dim, orientable)| {
            (
                prop::collection::vec((1usize..=l_dim, 1u64..=3), 1..=4),
                Just(l_dim),
                Just(orientable),
            )
        })
        .prop_map(|(mut pairs, l_dim, orientable)| {
            let mut total = 1u64;
            pairs.retain(|&(_, v)| {
                total += v;
                total <= 10
            });
            if pairs.is_empty() {
                pairs.push((l_dim, 1));
            }
            pairs.push((0, 1));
            (pairs, l_dim, orientable)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn engine_never_excludes_a_vanishing_assignment((pairs, l_dim, orientable) in small_profile()) {
        let profile = HomologyProfile::from_pairs(&pairs, l_dim, orientable).unwrap();
        for n in 2..=(l_dim as u64 + 2) {
            let (excluded, _) = run_engine(&profile, n).unwrap();
            if excluded {
                prop_assert!(
                    !vanishing_assignment_exists(profile.dims(), l_dim, n),
                    "N = {} excluded for {:?} but ranks exist", n, profile.dims()
                );
            }
        }
    }

    #[test]
    fn orientable_profiles_admit_no_odd_n((pairs, l_dim, _o) in small_profile()) {
        let profile = HomologyProfile::from_pairs(&pairs, l_dim, true).unwrap();
        let adm = admissible_maslov(&profile, 2 * l_dim as u64 + 4).unwrap();
        prop_assert!(adm.admissible.iter().all(|n| n % 2 == 0));
        prop_assert!(adm.admissible.contains(&2));
    }

    #[test]
    fn enlarging_one_degree_only_adds_exclusions_witnessed_there(
        (pairs, l_dim, orientable) in small_profile(),
        bump in 0usize..=12,
        extra in 1u64..=2,
    ) {
        let base = HomologyProfile::from_pairs(&pairs, l_dim, orientable).unwrap();
        let e = bump.min(base.cover_dim());
        let mut bigger = pairs.clone();
        bigger.push((e, extra));
        let grown = HomologyProfile::from_pairs(&bigger, l_dim, orientable).unwrap();
        for n in 2..=(l_dim as u64 + 2) {
            let before = run_engine_detail(&base, n).unwrap();
            let after = run_engine_detail(&grown, n).unwrap();
            if after.excluded && !before.excluded {
                prop_assert!(after.surviving_degrees.contains(&e));
            }
            let last_before = before.pages.last().unwrap();
            let last_after = after.pages.last().unwrap();
            for d in 0..last_before.lower.len() {
                if d != e {
                    prop_assert!(last_after.lower[d] <= last_before.lower[d]);
                }
            }
        }
    }

    #[test]
    fn lower_bounds_never_increase_across_pages((pairs, l_dim, orientable) in small_profile(), n in 3u64..=14) {
        let profile = HomologyProfile::from_pairs(&pairs, l_dim, orientable).unwrap();
        let run = run_engine_detail(&profile, n).unwrap();
        prop_assert_eq!(run.pages.len(), collapse_page(l_dim, n));
        for w in run.pages.windows(2) {
            for d in 0..w[0].lower.len() {
                prop_assert!(w[1].lower[d] <= w[0].lower[d]);
                prop_assert!(w[1].lower[d] <= w[1].upper[d]);
            }
        }
    }
}

#[test]
fn brute_force_finds_known_cancellations() {
    // S^3 x S^5 at N = 4: d_1 pairs 0 with 3 and 5 with 8
    assert!(vanishing_assignment_exists(&[1, 0, 0, 1, 0, 1, 0, 0, 1], 8, 4));
    // N = 8 has no cancelling pair for degree 3
    assert!(!vanishing_assignment_exists(&[1, 0, 0, 1, 0, 1, 0, 0, 1], 8, 8));
    // a single class never cancels
    assert!(!vanishing_assignment_exists(&[1, 0, 0], 2, 3));
}
