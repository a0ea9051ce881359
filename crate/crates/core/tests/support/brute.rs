//! Exhaustive search over differential ranks on every page.
//!
//! On page `r` the differential goes from degree `d` to `d - 1 + rN`. A rank
//! assignment is admissible when, in every degree, incoming plus outgoing rank
//! is at most the current dimension. `N` is realizable by dimension counting
//! alone when some sequence of assignments empties every degree by the
//! collapse page.

use std::collections::HashSet;

pub fn vanishing_assignment_exists(dims: &[u64], l_dim: usize, n: u64) -> bool {
    let pages = (l_dim as u64 + 1) / n;
    let mut dead = HashSet::new();
    search(dims.to_vec(), 1, pages as usize, n as i64, &mut dead)
}

fn search(state: Vec<u64>, r: usize, last: usize, n: i64, dead: &mut HashSet<(usize, Vec<u64>)>) -> bool {
    if state.iter().all(|&x| x == 0) {
        return true;
    }
    if r > last {
        return false;
    }
    if dead.contains(&(r, state.clone())) {
        return false;
    }
    let shift = r as i64 * n - 1;
    let mut used = vec![0u64; state.len()];
    let found = assign(&state, 0, shift, &mut used, &mut |next| search(next, r + 1, last, n, dead));
    if !found {
        dead.insert((r, state));
    }
    found
}

fn assign(
    state: &[u64],
    d: usize,
    shift: i64,
    used: &mut Vec<u64>,
    k: &mut dyn FnMut(Vec<u64>) -> bool,
) -> bool {
    if d == state.len() {
        let next: Vec<u64> = state.iter().zip(used.iter()).map(|(s, u)| s - u).collect();
        return k(next);
    }
    let t = d as i64 + shift;
    if t < 0 || t >= state.len() as i64 || t as usize == d {
        return assign(state, d + 1, shift, used, k);
    }
    let t = t as usize;
    let cap = (state[d] - used[d]).min(state[t] - used[t]);
    for rank in 0..=cap {
        used[d] += rank;
        used[t] += rank;
        let hit = assign(state, d + 1, shift, used, k);
        used[d] -= rank;
        used[t] -= rank;
        if hit {
            return true;
        }
    }
    false
}
