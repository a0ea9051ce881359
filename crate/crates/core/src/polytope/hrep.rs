//! Exact enumeration engine over rational half-space systems
//! `{x : <c_i, x> + d_i >= 0}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::exactlinalg::rational::{self, clear_denominators, dot, Rational};

use super::PolytopeError;

#[derive(Clone, Debug)]
pub(crate) struct HRep {
    pub dim: usize,
    pub normals: Vec<Vec<Rational>>,
    pub offsets: Vec<Rational>,
}

pub(crate) enum Minimum {
    Infeasible,
    Unbounded,
    Attained(Rational),
}

/// `C(n, k)` saturating at `u64::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl HRep {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        dot(&self.normals[i], x) + &self.offsets[i]
    }

    pub fn normal_rank(&self) -> usize {
        rational::rank(&self.normals)
    }

    fn check_budget(&self, subset: usize, budget: u64) -> Result<(), PolytopeError> {
        let count = binomial(self.len(), subset);
        if count > budget {
            return Err(PolytopeError::BudgetExceeded { subsets: count, budget });
        }
        Ok(())
    }

    /// Vertices with their tight sets. Requires a pointed system (normal rank = dim).
    pub fn vertices(&self, budget: u64) -> Result<Vec<(Vec<Rational>, Vec<usize>)>, PolytopeError> {
        debug_assert_eq!(self.normal_rank(), self.dim);
        self.check_budget(self.dim, budget)?;
        if self.len() - self.dim < self.dim {
            return Ok(self.slack_frame().vertices(self));
        }
        let mut found: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
        for subset in (0..self.len()).combinations(self.dim) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| self.normals[i].clone()).collect();
            if rational::rank(&a) < self.dim {
                continue;
            }
            let rhs: Vec<Rational> = subset.iter().map(|&i| -self.offsets[i].clone()).collect();
            let Some(x) = rational::solve(&a, &rhs, self.dim) else {
                continue;
            };
            if found.contains_key(&x) {
                continue;
            }
            let mut feasible = true;
            let mut active = Vec::new();
            for i in 0..self.len() {
                let s = self.slack(i, &x);
                if s.is_negative() {
                    feasible = false;
                    break;
                }
                if s.is_zero() {
                    active.push(i);
                }
            }
            if feasible {
                found.insert(x, active);
            }
        }
        Ok(found.into_iter().collect())
    }

    /// Extreme rays of the recession cone `{d : <c_i, d> >= 0}` of a pointed
    /// system, normalized to primitive integer direction.
    pub fn extreme_rays(&self, budget: u64) -> Result<Vec<Vec<Rational>>, PolytopeError> {
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        self.check_budget(self.dim - 1, budget)?;
        if self.len() - self.dim < self.dim {
            return Ok(self.slack_frame().rays(self));
        }
        let mut rays: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
        for subset in (0..self.len()).combinations(self.dim - 1) {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| self.normals[i].clone()).collect();
            let ns = rational::nullspace(&a, self.dim);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let d: Vec<Rational> = ns[0].iter().map(|x| x * rational::rat(sign)).collect();
                if self.normals.iter().all(|c| !dot(c, &d).is_negative()) {
                    rays.insert(primitive_direction(&d), ());
                }
            }
        }
        Ok(rays.into_keys().collect())
    }

    /// Equivalent pointed system in the quotient by the lineality space, and
    /// the same map applied to `extra` functionals lying in the normal span.
    /// Returns `None` for a functional outside that span.
    pub fn reduce(&self, extra: &[Vec<Rational>]) -> (HRep, Vec<Option<Vec<Rational>>>) {
        let r = self.normal_rank();
        if r == self.dim {
            return (self.clone(), extra.iter().cloned().map(Some).collect());
        }
        // pick r independent normals as a basis B of the span
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for c in &self.normals {
            let mut trial = basis.clone();
            trial.push(c.clone());
            if rational::rank(&trial) > basis.len() {
                basis = trial;
            }
            if basis.len() == r {
                break;
            }
        }
        // coordinates of v in B: solve B^T alpha = v
        let bt: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| basis.iter().map(|b| b[j].clone()).collect())
            .collect();
        let coords = |v: &Vec<Rational>| rational::solve(&bt, v, r);
        let normals = self
            .normals
            .iter()
            .map(|c| coords(c).expect("normal lies in its own span"))
            .collect();
        let reduced = HRep {
            dim: r,
            normals,
            offsets: self.offsets.clone(),
        };
        (reduced, extra.iter().map(coords).collect())
    }

    /// Exact minimum of `<c, x> + c0` over the system.
    pub fn minimize(&self, c: &[Rational], c0: &Rational, budget: u64) -> Result<Minimum, PolytopeError> {
        let (red, mapped) = self.reduce(&[c.to_vec()]);
        let vertices = red.vertices(budget)?;
        if vertices.is_empty() {
            return Ok(Minimum::Infeasible);
        }
        let Some(obj) = mapped.into_iter().next().flatten() else {
            return Ok(Minimum::Unbounded);
        };
        let rays = red.extreme_rays(budget)?;
        if rays.iter().any(|d| dot(&obj, d).is_negative()) {
            return Ok(Minimum::Unbounded);
        }
        let min = vertices
            .iter()
            .map(|(x, _)| dot(&obj, x) + c0)
            .min()
            .expect("nonempty vertex list");
        Ok(Minimum::Attained(min))
    }

    fn transposed(&self) -> Vec<Vec<Rational>> {
        (0..self.dim)
            .map(|j| self.normals.iter().map(|c| c[j].clone()).collect())
            .collect()
    }

    /// Exact minimum of slack `i` over the system with inequality `i` dropped,
    /// computed on the slack relations. `None` when the relations do not
    /// constrain slack `i` or are too many for this route to pay off.
    pub fn slack_minimum(&self, i: usize, budget: u64) -> Result<Option<Minimum>, PolytopeError> {
        let n = self.len();
        let relations = rational::nullspace(&self.transposed(), n);
        let m = relations.len();
        if m == 0 || m > self.dim || relations.iter().all(|g| g[i].is_zero()) {
            return Ok(None);
        }
        let count = binomial(n - 1, m);
        if count > budget {
            return Err(PolytopeError::BudgetExceeded { subsets: count, budget });
        }
        let delta: Vec<Rational> = relations.iter().map(|g| dot(g, &self.offsets)).collect();
        let block = |cols: &[usize]| -> Vec<Vec<Rational>> {
            relations.iter().map(|g| cols.iter().map(|&j| g[j].clone()).collect()).collect()
        };
        let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mut best: Option<Rational> = None;
        for mut cols in others.iter().copied().combinations(m - 1) {
            cols.push(i);
            let g = block(&cols);
            if rational::rank(&g) < m {
                continue;
            }
            let Some(sol) = rational::solve(&g, &delta, m) else {
                continue;
            };
            if sol[..m - 1].iter().any(Signed::is_negative) {
                continue;
            }
            if best.as_ref().is_none_or(|b| sol[m - 1] < *b) {
                best = Some(sol[m - 1].clone());
            }
        }
        let Some(best) = best else {
            return Ok(Some(Minimum::Infeasible));
        };
        for mut cols in others.iter().copied().combinations(m) {
            cols.push(i);
            let ns = rational::nullspace(&block(&cols), m + 1);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r: Vec<Rational> = ns[0].iter().map(|x| x * rational::rat(sign)).collect();
                if r[m].is_negative() && !r[..m].iter().any(Signed::is_negative) {
                    return Ok(Some(Minimum::Unbounded));
                }
            }
        }
        Ok(Some(Minimum::Attained(best)))
    }

    fn slack_frame(&self) -> SlackFrame {
        let transposed = self.transposed();
        let relations = rational::nullspace(&transposed, self.len());
        let delta = relations.iter().map(|g| dot(g, &self.offsets)).collect();
        let mut reduced = transposed;
        let basis = rational::rref(&mut reduced);
        let block: Vec<Vec<Rational>> = basis.iter().map(|&i| self.normals[i].clone()).collect();
        let inverse = rational::inverse(&block).expect("pointed system has a basis of normals");
        SlackFrame { relations, delta, basis, inverse }
    }

    pub fn without(&self, skip: usize) -> HRep {
        let keep = |i: &usize| *i != skip;
        HRep {
            dim: self.dim,
            normals: (0..self.len()).filter(keep).map(|i| self.normals[i].clone()).collect(),
            offsets: (0..self.len()).filter(keep).map(|i| self.offsets[i].clone()).collect(),
        }
    }
}

/// Linear relations `G` among the inequalities of a pointed system: the slack
/// vectors `s = N x + d` are exactly the solutions of `G s = G d`. With
/// `m = n - dim` relations, a tight set `S` of size `dim` corresponds to its
/// complement of size `m`, so subsets are solved in `m x m` blocks.
struct SlackFrame {
    relations: Vec<Vec<Rational>>,
    delta: Vec<Rational>,
    /// Indices of `dim` independent normals and the inverse of their matrix.
    basis: Vec<usize>,
    inverse: Vec<Vec<Rational>>,
}

impl SlackFrame {
    /// `x` with `N x = s - d` on the basis rows; `d = 0` for directions.
    fn point(&self, sys: &HRep, s: &[Rational], affine: bool) -> Vec<Rational> {
        let rhs: Vec<Rational> = self
            .basis
            .iter()
            .map(|&i| if affine { &s[i] - &sys.offsets[i] } else { s[i].clone() })
            .collect();
        self.inverse.iter().map(|row| dot(row, &rhs)).collect()
    }

    fn block(&self, cols: &[usize]) -> Vec<Vec<Rational>> {
        self.relations
            .iter()
            .map(|g| cols.iter().map(|&j| g[j].clone()).collect())
            .collect()
    }

    fn vertices(&self, sys: &HRep) -> Vec<(Vec<Rational>, Vec<usize>)> {
        let n = sys.len();
        let m = self.relations.len();
        let mut found: BTreeMap<Vec<Rational>, Vec<usize>> = BTreeMap::new();
        for free in (0..n).combinations(m) {
            let g = self.block(&free);
            if rational::rank(&g) < m {
                continue;
            }
            let Some(sol) = rational::solve(&g, &self.delta, m) else {
                continue;
            };
            if sol.iter().any(Signed::is_negative) {
                continue;
            }
            let mut s = vec![Rational::zero(); n];
            for (&j, v) in free.iter().zip(sol) {
                s[j] = v;
            }
            if found.contains_key(&s) {
                continue;
            }
            let active = (0..n).filter(|&i| s[i].is_zero()).collect();
            found.insert(s, active);
        }
        let mut out: Vec<(Vec<Rational>, Vec<usize>)> = found
            .into_iter()
            .map(|(s, active)| (self.point(sys, &s, true), active))
            .collect();
        out.sort();
        out
    }

    fn rays(&self, sys: &HRep) -> Vec<Vec<Rational>> {
        let n = sys.len();
        let m = self.relations.len();
        let zero = vec![Rational::zero(); n];
        let mut rays: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
        for free in (0..n).combinations(m + 1) {
            let ns = rational::nullspace(&self.block(&free), m + 1);
            if ns.len() != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r: Vec<Rational> = ns[0].iter().map(|x| x * rational::rat(sign)).collect();
                if r.iter().any(Signed::is_negative) {
                    continue;
                }
                let mut full = zero.clone();
                for (&j, v) in free.iter().zip(r) {
                    full[j] = v;
                }
                let d = self.point(sys, &full, false);
                rays.insert(primitive_direction(&d), ());
            }
        }
        rays.into_keys().collect()
    }
}

fn primitive_direction(d: &[Rational]) -> Vec<Rational> {
    let (ints, _) = clear_denominators(d);
    let g = crate::exactlinalg::gcd_over_basis(&ints);
    if g.is_zero() {
        return vec![Rational::zero(); d.len()];
    }
    ints.iter()
        .map(|x| Rational::from_integer(x / &g))
        .collect()
}
