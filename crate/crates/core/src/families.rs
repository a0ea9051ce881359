//! The two parametric polytope families, their realization enumerators, and
//! a small catalog for recognizing the diffeomorphism type of `R`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::correspondence::QuadricSystem;
use crate::exactlinalg::rational::{int_to_rat, rat, Rational};
use crate::exactlinalg::IntMatrix;
use crate::invariants::invariant_report;
use crate::polytope::HPolytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyError {
    Parameters(String),
    Parse(String),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parameters(s) => write!(f, "invalid family parameters: {s}"),
            Self::Parse(s) => write!(f, "cannot parse family spec: {s}"),
        }
    }
}

impl core::error::Error for FamilyError {}

fn bad(msg: impl Into<String>) -> FamilyError {
    FamilyError::Parameters(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `Delta^{p-1} x Delta^{n-p-1}` with the last inequality tilted by `k` coordinates.
    ProductSimplices { p: usize, n: usize, k: usize },
    /// The `(n-2)`-simplex plus the strictly redundant `-x_1 - ... - x_k + k + 2 >= 0`.
    RedundantSimplex { n: usize, k: usize },
}

/// Parses `key=value` pairs after the `tag:` prefix.
pub fn parse_params(body: &str, keys: &[&str]) -> Result<Vec<usize>, FamilyError> {
    let mut found: BTreeMap<&str, usize> = BTreeMap::new();
    for part in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| FamilyError::Parse(format!("expected key=value, got {part:?}")))?;
        let k = k.trim();
        if !keys.contains(&k) {
            return Err(FamilyError::Parse(format!("unknown parameter {k:?}")));
        }
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| FamilyError::Parse(format!("parameter {k} is not a non-negative integer")))?;
        if found.insert(k, v).is_some() {
            return Err(FamilyError::Parse(format!("parameter {k} given twice")));
        }
    }
    keys.iter()
        .map(|k| {
            found
                .get(k)
                .copied()
                .ok_or_else(|| FamilyError::Parse(format!("missing parameter {k}")))
        })
        .collect()
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (tag, body) = s
            .split_once(':')
            .ok_or_else(|| FamilyError::Parse(format!("missing ':' in {s:?}")))?;
        match tag.trim() {
            "product-simplices" => {
                let v = parse_params(body, &["p", "n", "k"])?;
                Ok(Self::ProductSimplices { p: v[0], n: v[1], k: v[2] })
            }
            "redundant-simplex" => {
                let v = parse_params(body, &["n", "k"])?;
                Ok(Self::RedundantSimplex { n: v[0], k: v[1] })
            }
            other => Err(FamilyError::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ProductSimplices { p, n, k } => write!(f, "product-simplices:p={p},n={n},k={k}"),
            Self::RedundantSimplex { n, k } => write!(f, "redundant-simplex:n={n},k={k}"),
        }
    }
}

impl FamilySpec {
    /// Hard parameter checks; generation refuses to proceed when any fails.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match *self {
            Self::ProductSimplices { p, n, k } => {
                if p < 2 {
                    return Err(bad(format!("p = {p} must be at least 2")));
                }
                if n < p + 2 {
                    return Err(bad(format!("n - p = {} must be at least 2", n as i64 - p as i64)));
                }
                if k + 2 > p {
                    return Err(bad(format!("k = {k} exceeds p - 2 = {}", p - 2)));
                }
                if k % 2 == 1 {
                    return Err(bad(format!("k = {k} must be even")));
                }
                Ok(())
            }
            Self::RedundantSimplex { n, k } => {
                if n <= 3 || n % 2 == 0 {
                    return Err(bad(format!("n = {n} must be odd and greater than 3")));
                }
                if k % 2 == 1 {
                    return Err(bad(format!("k = {k} must be even")));
                }
                if 2 * k <= n - 3 || k > n - 2 {
                    return Err(bad(format!(
                        "k = {k} must satisfy (n-3)/2 < k <= n-2 for n = {n}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Soft checks: conditions under which the family statements are made,
    /// outside of which generation still works.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if let Self::ProductSimplices { p, n, k } = *self {
            if p % 2 == 1 || n % 2 == 1 {
                w.push(format!("p = {p} and n = {n} are not both even"));
            }
            if n - p + k <= p {
                w.push(format!("n - p + k = {} is not greater than p = {p}", n - p + k));
            }
            if p <= 2 {
                w.push(format!("p = {p} is not greater than 2"));
            }
            if n - p <= 2 {
                w.push(format!("n - p = {} is not greater than 2", n - p));
            }
        }
        w
    }

    pub fn polytope(&self) -> Result<HPolytope, FamilyError> {
        self.validate()?;
        Ok(match *self {
            Self::ProductSimplices { p, n, k } => gen_product_simplices_unchecked(p, n, k),
            Self::RedundantSimplex { n, k } => gen_redundant_simplex_unchecked(n, k),
        })
    }

    /// The quadric system written in the family's natural basis.
    pub fn standard_quadrics(&self) -> Result<QuadricSystem, FamilyError> {
        self.validate()?;
        let (rows, delta): (Vec<Vec<i64>>, Vec<i64>) = match *self {
            Self::ProductSimplices { p, n, k } => (
                vec![
                    (0..n).map(|j| i64::from(j < p)).collect(),
                    (0..n).map(|j| i64::from(j < k || j >= p)).collect(),
                ],
                vec![p as i64, (n - p + k) as i64],
            ),
            Self::RedundantSimplex { n, k } => (
                vec![
                    (0..n).map(|j| i64::from(j < n - 1)).collect(),
                    (0..n).map(|j| i64::from(j < k || j == n - 1)).collect(),
                ],
                vec![(n - 1) as i64, (2 * k + 2) as i64],
            ),
        };
        Ok(QuadricSystem::new(IntMatrix::from_i64(&rows), delta.into_iter().map(rat).collect())
            .expect("two rows, two offsets"))
    }

    /// Closed form of the minimal Maslov number.
    pub fn expected_minimal_maslov(&self) -> u64 {
        match *self {
            Self::ProductSimplices { p, n, k } => (p as u64).gcd(&((n - p + k) as u64)),
            Self::RedundantSimplex { n, k } => ((n - 1) as u64).gcd(&(2 * k as u64 + 2)),
        }
    }

    /// Complex dimension of the ambient space, equal to `dim L`.
    pub fn ambient_dim(&self) -> usize {
        match *self {
            Self::ProductSimplices { n, .. } | Self::RedundantSimplex { n, .. } => n,
        }
    }
}

fn polytope_from_rows(rows: Vec<Vec<i64>>, b: Vec<i64>) -> HPolytope {
    HPolytope::new(IntMatrix::from_i64(&rows), b.into_iter().map(rat).collect())
        .expect("generated presentation is well formed")
}

/// Inequalities in order: `x_i + 1` for `i < p`, `-x_1 - ... - x_{p-1} + 1`,
/// `x_i + 1` for `p <= i <= n-2`, `-x_1 - ... - x_k - x_p - ... - x_{n-2} + 1`.
pub fn gen_product_simplices(p: usize, n: usize, k: usize) -> Result<HPolytope, FamilyError> {
    FamilySpec::ProductSimplices { p, n, k }.polytope()
}

fn gen_product_simplices_unchecked(p: usize, n: usize, k: usize) -> HPolytope {
    let dim = n - 2;
    let mut rows = vec![vec![0i64; n]; dim];
    // coordinate i (0-based) of x; columns are inequalities
    for i in 0..p - 1 {
        rows[i][i] = 1;
        rows[i][p - 1] = -1;
    }
    for i in p - 1..dim {
        rows[i][i + 1] = 1;
        rows[i][n - 1] = -1;
    }
    for row in rows.iter_mut().take(k) {
        row[n - 1] = -1;
    }
    polytope_from_rows(rows, vec![1; n])
}

/// Inequalities in order: `x_i + 1` for `i <= n-2`, `-x_1 - ... - x_{n-2} + 1`,
/// `-x_1 - ... - x_k + k + 2`.
pub fn gen_redundant_simplex(n: usize, k: usize) -> Result<HPolytope, FamilyError> {
    FamilySpec::RedundantSimplex { n, k }.polytope()
}

fn gen_redundant_simplex_unchecked(n: usize, k: usize) -> HPolytope {
    let dim = n - 2;
    let mut rows = vec![vec![0i64; n]; dim];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 1;
        row[n - 2] = -1;
        if i < k {
            row[n - 1] = -1;
        }
    }
    let mut b = vec![1; n];
    b[n - 1] = k as i64 + 2;
    polytope_from_rows(rows, b)
}

/// Realized values with the smallest witnessing `k`, against a predicted set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Realized `N_L` mapped to the smallest `k` realizing it.
    pub values: BTreeMap<u64, u64>,
    pub predicted: Vec<u64>,
    pub matches: bool,
}

impl Realization {
    pub fn value_set(&self) -> Vec<u64> {
        self.values.keys().copied().collect()
    }
}

/// Positive even divisors of `p`, ascending.
pub fn even_divisors(p: u64) -> Vec<u64> {
    (1..=p).filter(|d| d % 2 == 0 && p % d == 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exist1 {
    pub realization: Realization,
    /// For each even divisor `d`: `k = d(ml+1) - (n-p)` with `l = p/d` and the
    /// unique `m` satisfying `d(ml+1) >= n-p > d(ml-l+1)`.
    pub constructive: BTreeMap<u64, u64>,
    /// Every constructive `k` is even, lies in `[0, p-2]`, and realizes its `d`.
    pub constructive_valid: bool,
}

/// `{gcd(p, n-p+k) : k even, 0 <= k <= p-2}` compared with the even divisors of `p`.
pub fn realizable_exist1(p: u64, n: u64) -> Result<Exist1, FamilyError> {
    if p < 2 || p % 2 == 1 || n % 2 == 1 || n < 2 * p {
        return Err(bad(format!("need p, n even with p >= 2 and n >= 2p, got p = {p}, n = {n}")));
    }
    let mut values = BTreeMap::new();
    for k in (0..=p - 2).step_by(2) {
        values.entry(p.gcd(&(n - p + k))).or_insert(k);
    }
    let predicted = even_divisors(p);
    let realized: Vec<u64> = values.keys().copied().collect();
    let mut constructive = BTreeMap::new();
    let mut constructive_valid = true;
    let q = n - p;
    for &d in &predicted {
        let l = p / d;
        // least m with d(ml+1) >= q
        let m = (q.div_ceil(d).saturating_sub(1)).div_ceil(l);
        let top = d * (m * l + 1);
        let below_ok = m * l + 1 < l || d * (m * l + 1 - l) < q;
        let k = top - q;
        constructive_valid &= below_ok && k % 2 == 0 && k + 2 <= p && p.gcd(&(q + k)) == d;
        constructive.insert(d, k);
    }
    Ok(Exist1 {
        realization: Realization {
            matches: realized == predicted,
            values,
            predicted,
        },
        constructive,
        constructive_valid,
    })
}

/// Valid `k` for the redundant-simplex family at a given odd `n`.
pub fn redundant_simplex_range(n: u64) -> impl Iterator<Item = u64> {
    (0..=n.saturating_sub(2)).filter(move |&k| k % 2 == 0 && 2 * k > n - 3)
}

/// The set predicted by the mod-4 analysis of `n - 1`.
pub fn exist2_predicted(n: u64) -> Vec<u64> {
    let m = n - 1;
    if m % 4 == 0 {
        even_divisors(m).into_iter().filter(|d| d % 4 == 2).collect()
    } else {
        even_divisors(m).into_iter().filter(|&d| d < m).collect()
    }
}

/// `{gcd(n-1, 2k+2) : k even, (n-3)/2 < k <= n-2}` compared with the mod-4 prediction.
pub fn realizable_exist2(n: u64) -> Result<Realization, FamilyError> {
    if n <= 3 || n % 2 == 0 {
        return Err(bad(format!("need odd n > 3, got n = {n}")));
    }
    let mut values = BTreeMap::new();
    for k in redundant_simplex_range(n) {
        values.entry((n - 1).gcd(&(2 * k + 2))).or_insert(k);
    }
    let predicted = exist2_predicted(n);
    Ok(Realization {
        matches: values.keys().copied().eq(predicted.iter().copied()),
        values,
        predicted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologyTag {
    /// Diffeomorphism type of `R`, e.g. `S^3 x S^5` or `S^3 x Z_2`.
    pub description: String,
    /// Dimensions of the positive-dimensional sphere factors of one component.
    pub sphere_factors: Vec<usize>,
    pub torus_rank: usize,
    pub orientable: bool,
    pub component_count: BigInt,
    /// `L` as a product, when the catalog entry asserts a trivial bundle.
    pub lagrangian: Option<String>,
}

struct Classified {
    factors: Vec<usize>,
    components: BigInt,
}

fn classify_one(q: &QuadricSystem) -> Option<Classified> {
    let row = q.gamma().row(0);
    let d = &q.delta()[0];
    let sign = if row.iter().all(Signed::is_positive) {
        1
    } else if row.iter().all(Signed::is_negative) {
        -1
    } else {
        return None;
    };
    if (sign > 0 && !d.is_positive()) || (sign < 0 && !d.is_negative()) {
        return None;
    }
    sphere_or_points(q.variables())
}

fn sphere_or_points(vars: usize) -> Option<Classified> {
    match vars {
        0 => None,
        1 => Some(Classified {
            factors: Vec::new(),
            components: BigInt::from(2),
        }),
        v => Some(Classified {
            factors: vec![v - 1],
            components: BigInt::one(),
        }),
    }
}

fn classify_two(q: &QuadricSystem) -> Option<Classified> {
    let cols: Vec<Vec<BigInt>> = (0..q.variables()).map(|j| q.column(j)).collect();
    let mut distinct = cols.clone();
    distinct.sort();
    distinct.dedup();
    for x in &distinct {
        for y in &distinct {
            let det = &x[0] * &y[1] - &x[1] * &y[0];
            if det.abs() != BigInt::one() {
                continue;
            }
            // U = [x y]^{-1} sends x to (1,0) and y to (0,1)
            let u = [
                [&y[1] * &det, -&y[0] * &det],
                [-&x[1] * &det, &x[0] * &det],
            ];
            let apply = |c: &[BigInt]| -> (BigInt, BigInt) {
                (&u[0][0] * &c[0] + &u[0][1] * &c[1], &u[1][0] * &c[0] + &u[1][1] * &c[1])
            };
            let mut counts = [0usize; 3];
            let mut ok = true;
            for c in &cols {
                match apply(c) {
                    (a, b) if a.is_one() && b.is_one() => counts[0] += 1,
                    (a, b) if a.is_one() && b.is_zero() => counts[1] += 1,
                    (a, b) if a.is_zero() && b.is_one() => counts[2] += 1,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let ur: Vec<Vec<Rational>> = u
                .iter()
                .map(|r| r.iter().map(|x| int_to_rat(x)).collect())
                .collect();
            let d = q.delta();
            let d1 = &ur[0][0] * &d[0] + &ur[0][1] * &d[1];
            let d2 = &ur[1][0] * &d[0] + &ur[1][1] * &d[1];
            return two_quadric_type(counts, &d1, &d2);
        }
    }
    None
}

/// `a + b = d1`, `a + c = d2` with `a, b, c` sums of squares over classes of the given sizes.
fn two_quadric_type(counts: [usize; 3], d1: &Rational, d2: &Rational) -> Option<Classified> {
    let [na, nb, nc] = counts;
    if !d1.is_positive() || !d2.is_positive() || (na > 0 && d1 == d2) {
        return None;
    }
    let (first, second) = if na == 0 {
        (nb, nc)
    } else if d1 < d2 {
        (na + nb, nc)
    } else {
        (na + nc, nb)
    };
    let s1 = sphere_or_points(first)?;
    let s2 = sphere_or_points(second)?;
    let mut factors = s1.factors;
    factors.extend(s2.factors);
    factors.sort_unstable();
    Some(Classified {
        factors,
        components: s1.components * s2.components,
    })
}

fn describe(c: &Classified) -> String {
    let mut parts: Vec<String> = c.factors.iter().map(|d| format!("S^{d}")).collect();
    let twos = c.components.bits().saturating_sub(1);
    match twos {
        0 => {}
        1 => parts.push("Z_2".to_string()),
        t => parts.push(format!("Z_2^{t}")),
    }
    if parts.is_empty() {
        parts.push("point".to_string());
    }
    parts.join(" x ")
}

/// Matches `R` against the catalog: one definite quadric (a sphere) or two
/// quadrics reducible to sphere products. Returns `None` outside the catalog.
pub fn recognize_topology(q: &QuadricSystem, strict: &[usize]) -> Option<TopologyTag> {
    if !q.zero_columns().is_empty() {
        return None;
    }
    let classified = match q.quadrics() {
        1 => classify_one(q)?,
        2 => classify_two(q)?,
        _ => return None,
    };
    if classified.components != BigInt::one() << strict.len() {
        return None;
    }
    let report = invariant_report(q, strict, false).ok()?;
    let orientable = report.maslov_values.iter().all(|m| m.is_even());
    let m = q.quadrics();
    let core = Classified {
        factors: classified.factors.clone(),
        components: BigInt::one(),
    };
    let lagrangian = orientable.then(|| format!("{} x T^{m}", describe(&core)));
    Some(TopologyTag {
        description: describe(&classified),
        sphere_factors: classified.factors,
        torus_rank: m,
        orientable,
        component_count: classified.components,
        lagrangian,
    })
}
