//! Floating-point cross-checks of the exact invariants.
//!
//! Points of `R` are sampled from the polytope and refined by Newton's method;
//! torus loops `phi(s) = s w` with `u` fixed are pushed through the embedding
//! `z_j = u_j exp(i pi <gamma_j, phi>)`, the Liouville form `sum x_j dy_j` is
//! integrated along them, and the Maslov index is read off as the winding of
//! `det(W)^2 / |det(W)|^2` for a frame `W` of the tangent Lagrangian planes.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correspondence::{quadrics_to_polytope, CorrespondenceError, QuadricSystem};
use crate::exactlinalg::rational::{dot, dot_int, int_to_rat, Rational};
use crate::invariants::{DeckData, InvariantReport};
use crate::polytope::{enumerate_vertices, DEFAULT_SUBSET_BUDGET};

/// Every floating-point tolerance used by the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    /// Max `|Gamma u^2 - delta|` accepted after Newton refinement.
    pub residual_tol: f64,
    /// Max deviation in the `sum u_j^2 gamma_j = delta` identity check.
    pub identity_tol: f64,
    /// Relative tolerance for loop areas against `pi <v, delta>`.
    pub area_rel_tol: f64,
    /// Allowed distance of a measured winding from an integer, in turns.
    pub winding_tol: f64,
    /// Quadrature panels and initial phase-tracking steps per loop.
    pub samples: usize,
    pub newton_max_iter: usize,
    pub newton_restarts: usize,
    /// Max bisection depth when consecutive phases jump by more than `pi/2`.
    pub max_refine_depth: usize,
    /// Smallest acceptable `|det W| / prod |columns|`.
    pub frame_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            identity_tol: 1e-9,
            area_rel_tol: 1e-8,
            winding_tol: 0.01,
            samples: 512,
            newton_max_iter: 60,
            newton_restarts: 5,
            max_refine_depth: 24,
            frame_tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OracleError {
    Correspondence(CorrespondenceError),
    EmptyPolytope,
    NotConverged { residual: f64 },
    /// `u_j != 0` on a coordinate the loop rotates by an odd multiple of `pi`.
    NonClosing { index: usize },
    FrameDegenerate { s: f64 },
    Winding { turns: f64 },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Correspondence(e) => write!(f, "{e}"),
            Self::EmptyPolytope => f.write_str("quadric system has no real points"),
            Self::NotConverged { residual } => {
                write!(f, "Newton refinement stalled at residual {residual:e}")
            }
            Self::NonClosing { index } => write!(
                f,
                "loop does not close: coordinate {index} is rotated by an odd multiple of pi"
            ),
            Self::FrameDegenerate { s } => write!(f, "tangent frame degenerate at s = {s}"),
            Self::Winding { turns } => write!(f, "winding {turns} is not near an integer"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<CorrespondenceError> for OracleError {
    fn from(e: CorrespondenceError) -> Self {
        Self::Correspondence(e)
    }
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn int_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A point of `R` with its per-quadric residuals.
#[derive(Clone, Debug, PartialEq)]
pub struct RPoint {
    pub u: Vec<f64>,
    pub residuals: Vec<f64>,
}

fn gamma_f64(q: &QuadricSystem) -> DMatrix<f64> {
    DMatrix::from_fn(q.quadrics(), q.variables(), |i, j| int_f64(&q.gamma()[(i, j)]))
}

fn residuals(g: &DMatrix<f64>, delta: &DVector<f64>, u: &DVector<f64>) -> DVector<f64> {
    g * u.component_mul(u) - delta
}

/// Least-norm Newton iteration on `Gamma u^2 = delta`.
fn newton(
    g: &DMatrix<f64>,
    delta: &DVector<f64>,
    mut u: DVector<f64>,
    cfg: &OracleConfig,
) -> Result<DVector<f64>, f64> {
    let scale = 1.0 + delta.amax();
    for _ in 0..cfg.newton_max_iter {
        let f = residuals(g, delta, &u);
        if f.amax() <= 1e-3 * cfg.residual_tol * scale {
            return Ok(u);
        }
        let j = g * DMatrix::from_diagonal(&(&u * 2.0));
        let jjt = &j * j.transpose();
        let Some(y) = jjt.lu().solve(&f) else {
            return Err(f.amax());
        };
        u -= j.transpose() * y;
    }
    let r = residuals(g, delta, &u).amax();
    if r <= cfg.residual_tol {
        Ok(u)
    } else {
        Err(r)
    }
}

/// A point of `R`: seed 0 starts at the vertex centroid of the polytope,
/// other seeds at a random convex combination of vertices; the square roots of
/// the slacks are then refined by Newton's method.
pub fn sample_point(q: &QuadricSystem, seed: u64, cfg: &OracleConfig) -> Result<RPoint, OracleError> {
    let p = quadrics_to_polytope(q)?;
    let verts = enumerate_vertices(&p, DEFAULT_SUBSET_BUDGET)
        .map_err(|e| OracleError::Correspondence(e.into()))?;
    if verts.vertices.is_empty() {
        return Err(OracleError::EmptyPolytope);
    }
    let g = gamma_f64(q);
    let delta = DVector::from_iterator(q.quadrics(), q.delta().iter().map(to_f64));
    let n = q.variables();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = f64::INFINITY;
    for attempt in 0..=cfg.newton_restarts {
        let slacks: Vec<f64> = if seed == 0 && attempt == 0 {
            let count = Rational::from_integer(BigInt::from(verts.len()));
            let dim = p.dim();
            let centroid: Vec<Rational> = (0..dim)
                .map(|c| verts.vertices.iter().map(|v| v.point[c].clone()).sum::<Rational>() / &count)
                .collect();
            (0..n).map(|j| to_f64(&p.slack(j, &centroid))).collect()
        } else {
            let w: Vec<f64> = (0..verts.len())
                .map(|_| -libm::log(1.0 - rng.random::<f64>()))
                .collect();
            let total: f64 = w.iter().sum();
            let dim = p.dim();
            let x: Vec<f64> = (0..dim)
                .map(|c| {
                    verts
                        .vertices
                        .iter()
                        .zip(&w)
                        .map(|(v, wi)| to_f64(&v.point[c]) * wi / total)
                        .sum()
                })
                .collect();
            (0..n)
                .map(|j| {
                    let a: f64 = p.normal(j).iter().zip(&x).map(|(a, xi)| int_f64(a) * xi).sum();
                    a + to_f64(&p.offsets()[j])
                })
                .collect()
        };
        let u0 = DVector::from_iterator(n, slacks.iter().map(|s| libm::sqrt(s.max(0.0))));
        match newton(&g, &delta, u0, cfg) {
            Ok(u) => {
                let res = residuals(&g, &delta, &u);
                return Ok(RPoint {
                    u: u.iter().copied().collect(),
                    residuals: res.iter().map(|x| x.abs()).collect(),
                });
            }
            Err(r) => last = r,
        }
    }
    Err(OracleError::NotConverged { residual: last })
}

/// Loop class `v` (a vector of `Lambda*`) realized with `u` fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusLoop {
    pub v: Vec<Rational>,
    /// Realize `phi(s) = 2 s v`, which always closes; otherwise `phi(s) = s v`.
    pub doubled: bool,
    pub samples: usize,
}

impl TorusLoop {
    pub fn doubled(v: Vec<Rational>, samples: usize) -> Self {
        Self { v, doubled: true, samples }
    }

    /// Total rotation `<gamma_j, phi(1)>` of each coordinate, in half-turns.
    fn half_turns(&self, q: &QuadricSystem) -> Vec<Rational> {
        let factor = Rational::from_integer(BigInt::from(if self.doubled { 2 } else { 1 }));
        (0..q.variables())
            .map(|j| dot_int(&self.v, &q.column(j)) * &factor)
            .collect()
    }

    fn angles(&self, q: &QuadricSystem, point: &RPoint) -> Result<Vec<f64>, OracleError> {
        let turns = self.half_turns(q);
        for (j, w) in turns.iter().enumerate() {
            let closes = w.is_integer() && (w.to_integer() % 2u32 == BigInt::from(0u32) || point.u[j].abs() < 1e-12);
            if !closes {
                return Err(OracleError::NonClosing { index: j });
            }
        }
        Ok(turns.iter().map(|w| PI * to_f64(w)).collect())
    }
}

/// `integral of sum x_j dy_j` along the loop by the composite trapezoid rule.
pub fn loop_area(q: &QuadricSystem, lp: &TorusLoop, point: &RPoint) -> Result<f64, OracleError> {
    let theta = lp.angles(q, point)?;
    let k = lp.samples.max(1);
    let h = 1.0 / k as f64;
    let mut total = 0.0;
    // periodic integrand: the trapezoid rule reduces to an equally weighted sum
    for step in 0..k {
        let s = step as f64 * h;
        let mut f = 0.0;
        for (u, th) in point.u.iter().zip(&theta) {
            let a = th * s;
            let x = u * libm::cos(a);
            let dy = u * libm::cos(a) * th;
            f += x * dy;
        }
        total += f * h;
    }
    Ok(total)
}

struct Frame {
    base: DMatrix<Complex<f64>>,
    theta: Vec<f64>,
}

impl Frame {
    fn at(&self, s: f64) -> DMatrix<Complex<f64>> {
        let n = self.theta.len();
        let rot = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                let a = self.theta[i] * s;
                Complex::new(libm::cos(a), libm::sin(a))
            } else {
                Complex::new(0.0, 0.0)
            }
        });
        rot * &self.base
    }
}

/// Columns: an orthonormal basis of `ker(Gamma diag(u))` (fiber directions)
/// and `i pi gamma_{j,p} u_j` for each torus direction `p`.
fn base_frame(q: &QuadricSystem, point: &RPoint) -> DMatrix<Complex<f64>> {
    let n = q.variables();
    let m = q.quadrics();
    let u = DVector::from_column_slice(&point.u);
    let j = gamma_f64(q) * DMatrix::from_diagonal(&u);
    let eig = SymmetricEigen::new(j.transpose() * &j);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut w = DMatrix::from_element(n, n, Complex::new(0.0, 0.0));
    for (c, &idx) in order.iter().take(n - m).enumerate() {
        for r in 0..n {
            w[(r, c)] = Complex::new(eig.eigenvectors[(r, idx)], 0.0);
        }
    }
    for p in 0..m {
        for r in 0..n {
            w[(r, n - m + p)] = Complex::new(0.0, PI * int_f64(&q.gamma()[(p, r)]) * point.u[r]);
        }
    }
    w
}

fn det_sq_phase(w: &DMatrix<Complex<f64>>, norm: f64, tol: f64, s: f64) -> Result<f64, OracleError> {
    let d = w.clone().determinant();
    if libm::hypot(d.re, d.im) <= tol * norm {
        return Err(OracleError::FrameDegenerate { s });
    }
    let d2 = d * d;
    Ok(libm::atan2(d2.im, d2.re))
}

fn wrap(a: f64) -> f64 {
    let mut x = a % (2.0 * PI);
    if x > PI {
        x -= 2.0 * PI;
    } else if x <= -PI {
        x += 2.0 * PI;
    }
    x
}

/// Winding number of `det(W)^2 / |det(W)|^2` along the loop.
pub fn loop_maslov(
    q: &QuadricSystem,
    lp: &TorusLoop,
    point: &RPoint,
    cfg: &OracleConfig,
) -> Result<i64, OracleError> {
    let turns = loop_maslov_turns(q, lp, point, cfg)?;
    let rounded = libm::round(turns);
    if (turns - rounded).abs() > cfg.winding_tol {
        return Err(OracleError::Winding { turns });
    }
    Ok(rounded as i64)
}

/// The unrounded winding, in turns.
pub fn loop_maslov_turns(
    q: &QuadricSystem,
    lp: &TorusLoop,
    point: &RPoint,
    cfg: &OracleConfig,
) -> Result<f64, OracleError> {
    let frame = Frame {
        base: base_frame(q, point),
        theta: lp.angles(q, point)?,
    };
    let norm: f64 = (0..frame.base.ncols())
        .map(|c| frame.base.column(c).norm())
        .product();
    let phase = |s: f64| det_sq_phase(&frame.at(s), norm, cfg.frame_tol, s);
    let k = lp.samples.max(4);
    let mut total = 0.0;
    let mut prev = phase(0.0)?;
    for step in 1..=k {
        let (s0, s1) = ((step - 1) as f64 / k as f64, step as f64 / k as f64);
        let (acc, end) = refine(&phase, s0, s1, prev, 0, cfg.max_refine_depth)?;
        total += acc;
        prev = end;
    }
    Ok(total / (2.0 * PI))
}

/// Accumulated phase change over `[s0, s1]`, bisecting until each step is below `pi/2`.
fn refine<F>(phase: &F, s0: f64, s1: f64, p0: f64, depth: usize, max_depth: usize) -> Result<(f64, f64), OracleError>
where
    F: Fn(f64) -> Result<f64, OracleError>,
{
    let p1 = phase(s1)?;
    let d = wrap(p1 - p0);
    if d.abs() < PI / 2.0 || depth >= max_depth {
        return Ok((d, p1));
    }
    let mid = 0.5 * (s0 + s1);
    let (a, pm) = refine(phase, s0, mid, p0, depth + 1, max_depth)?;
    let (b, pe) = refine(phase, mid, s1, pm, depth + 1, max_depth)?;
    Ok((a + b, pe))
}

/// One comparison between a numerical measurement and its exact prediction.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub check: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    fn relative(check: String, expected: f64, actual: f64, tolerance: f64) -> Self {
        let pass = (actual - expected).abs() / (1.0 + expected.abs()) <= tolerance;
        Self { check, expected, actual, tolerance, pass }
    }

    fn absolute(check: String, expected: f64, actual: f64, tolerance: f64) -> Self {
        let pass = (actual - expected).abs() <= tolerance;
        Self { check, expected, actual, tolerance, pass }
    }

    fn failed(check: String, expected: f64, tolerance: f64) -> Self {
        Self { check, expected, actual: f64::NAN, tolerance, pass: false }
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(","))
}

/// Area and Maslov checks of the doubled loop `2v` at `point`.
pub fn check_doubled_loop(
    q: &QuadricSystem,
    v: &[Rational],
    point: &RPoint,
    cfg: &OracleConfig,
) -> Vec<CheckRecord> {
    let lp = TorusLoop::doubled(v.to_vec(), cfg.samples);
    let label = fmt_vec(v);
    let area_expected = PI * to_f64(&dot(v, q.delta()));
    let t: Vec<Rational> = q.t_vector().iter().map(int_to_rat).collect();
    let maslov_expected = 2.0 * to_f64(&dot(v, &t));
    let area = match loop_area(q, &lp, point) {
        Ok(a) => CheckRecord::relative(format!("area 2v v={label}"), area_expected, a, cfg.area_rel_tol),
        Err(_) => CheckRecord::failed(format!("area 2v v={label}"), area_expected, cfg.area_rel_tol),
    };
    let maslov = match loop_maslov(q, &lp, point, cfg) {
        Ok(m) => CheckRecord::absolute(format!("maslov 2v v={label}"), maslov_expected, m as f64, 0.0),
        Err(_) => CheckRecord::failed(format!("maslov 2v v={label}"), maslov_expected, 0.0),
    };
    vec![area, maslov]
}

/// `sum_j u_j^2 gamma_j = delta` at a sampled point.
pub fn check_identity(q: &QuadricSystem, point: &RPoint, cfg: &OracleConfig) -> Vec<CheckRecord> {
    (0..q.quadrics())
        .map(|i| {
            let lhs: f64 = (0..q.variables())
                .map(|j| point.u[j] * point.u[j] * int_f64(&q.gamma()[(i, j)]))
                .sum();
            CheckRecord::absolute(format!("identity row {i}"), to_f64(&q.delta()[i]), lhs, cfg.identity_tol)
        })
        .collect()
}

/// Seeded loop classes with coordinates in `[-3, 3]` in the dual basis, excluding zero.
pub fn random_loop_classes(d: &DeckData, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1001);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coords: Vec<BigInt> = (0..d.torus_rank)
            .map(|_| BigInt::from(rng.random_range(-3i64..=3)))
            .collect();
        if coords.iter().all(|c| *c == BigInt::from(0)) {
            continue;
        }
        out.push(d.vector(&coords));
    }
    out
}

/// The full oracle battery: identity at the base point, doubled-loop area and
/// Maslov for every loop basis vector and `random_loops` random classes, and
/// base-point independence of the doubled-loop areas over five points.
pub fn oracle_checks(
    q: &QuadricSystem,
    d: &DeckData,
    report: &InvariantReport,
    seed: u64,
    random_loops: usize,
    cfg: &OracleConfig,
) -> Result<Vec<CheckRecord>, OracleError> {
    let point = sample_point(q, seed, cfg)?;
    let mut out = check_identity(q, &point, cfg);
    let mut loops = report.loop_basis.clone();
    loops.extend(random_loop_classes(d, random_loops, seed));
    for v in &loops {
        out.extend(check_doubled_loop(q, v, &point, cfg));
    }
    let others: Vec<RPoint> = (1..5)
        .map(|i| sample_point(q, seed.wrapping_add(i), cfg))
        .collect::<Result<_, _>>()?;
    for v in &report.loop_basis {
        let lp = TorusLoop::doubled(v.clone(), cfg.samples);
        let base = loop_area(q, &lp, &point)?;
        for (i, other) in others.iter().enumerate() {
            let a = loop_area(q, &lp, other)?;
            out.push(CheckRecord::relative(
                format!("base point {} area 2v v={}", i + 1, fmt_vec(v)),
                base,
                a,
                cfg.area_rel_tol,
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::rational::rat;
    use crate::exactlinalg::IntMatrix;
    use crate::families::FamilySpec;
    use crate::invariants::{deck_data, invariant_report};

    fn circle() -> QuadricSystem {
        QuadricSystem::new(IntMatrix::from_i64(&[[1, 1]]), vec![rat(2)]).unwrap()
    }

    #[test]
    fn circle_point_and_loop() {
        let cfg = OracleConfig::default();
        let pt = sample_point(&circle(), 0, &cfg).unwrap();
        assert!((pt.u[0] - 1.0).abs() < 1e-12 && (pt.u[1] - 1.0).abs() < 1e-12);
        let lp = TorusLoop::doubled(vec![rat(1)], 256);
        let a = loop_area(&circle(), &lp, &pt).unwrap();
        assert!((a - 2.0 * PI).abs() < 1e-10);
        assert_eq!(loop_maslov(&circle(), &lp, &pt, &cfg).unwrap(), 4);
    }

    #[test]
    fn redundant_family_point() {
        let q = FamilySpec::RedundantSimplex { n: 5, k: 2 }.standard_quadrics().unwrap();
        let cfg = OracleConfig::default();
        let pt = sample_point(&q, 0, &cfg).unwrap();
        let want = [1.0, 1.0, 1.0, 1.0, 2.0];
        for (u, w) in pt.u.iter().zip(want) {
            assert!((u - w).abs() < 1e-12);
        }
        let lp = TorusLoop::doubled(vec![rat(0), rat(1)], 512);
        assert!((loop_area(&q, &lp, &pt).unwrap() - 6.0 * PI).abs() < 1e-9);
        assert_eq!(loop_maslov(&q, &lp, &pt, &cfg).unwrap(), 6);
    }

    #[test]
    fn random_seeds_converge() {
        let q = FamilySpec::ProductSimplices { p: 4, n: 10, k: 2 }.standard_quadrics().unwrap();
        let cfg = OracleConfig::default();
        for seed in 1..4 {
            let pt = sample_point(&q, seed, &cfg).unwrap();
            assert!(pt.residuals.iter().all(|r| *r <= cfg.residual_tol));
        }
    }

    #[test]
    fn undoubled_loop_must_fix_rotated_coordinates() {
        let q = circle();
        let cfg = OracleConfig::default();
        let pt = sample_point(&q, 0, &cfg).unwrap();
        let lp = TorusLoop { v: vec![rat(1)], doubled: false, samples: 64 };
        assert_eq!(loop_area(&q, &lp, &pt), Err(OracleError::NonClosing { index: 0 }));
    }

    #[test]
    fn full_battery_passes() {
        let q = FamilySpec::ProductSimplices { p: 4, n: 10, k: 2 }.standard_quadrics().unwrap();
        let d = deck_data(&q).unwrap();
        let r = invariant_report(&q, &[], false).unwrap();
        let checks = oracle_checks(&q, &d, &r, 0, 5, &OracleConfig::default()).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
