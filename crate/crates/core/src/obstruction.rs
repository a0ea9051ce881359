//! Dimension counting on the pages of the lifted Floer spectral sequence.
//!
//! Page `r` carries one vector space per total degree `d`; the differential
//! `d_r` maps degree `d` to degree `d - 1 + rN`. The sequence collapses at
//! page `floor((dim L + 1) / N) + 1` and must converge to zero, so any degree
//! that provably survives excludes `N` as a minimal Maslov number.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObstructionError {
    /// `H_0` of the cover must be nonzero.
    MissingBaseDegree,
    CoverTooLarge { cover_dim: usize, l_dim: usize },
    /// The cover has homology only in degree 0 (non-compact cover, e.g. a torus).
    OutOfModel,
    MaslovTooSmall { n: u64 },
    LemmaRange { m: u64 },
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingBaseDegree => f.write_str("profile must have dims[0] >= 1"),
            Self::CoverTooLarge { cover_dim, l_dim } => write!(
                f,
                "cover has homology in degree {cover_dim} above dim L = {l_dim}"
            ),
            Self::OutOfModel => f.write_str(
                "profile has homology only in degree 0; non-compact covers are out of model",
            ),
            Self::MaslovTooSmall { n } => write!(f, "Maslov bound {n} is below 2"),
            Self::LemmaRange { m } => write!(f, "binomial lemma needs m >= 4, got {m}"),
        }
    }
}

impl core::error::Error for ObstructionError {}

/// Mod-2 Betti numbers of the universal cover together with `dim L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    dims: Vec<u64>,
    l_dim: usize,
    orientable: bool,
}

impl HomologyProfile {
    pub fn new(
        dims: &BTreeMap<usize, u64>,
        l_dim: usize,
        orientable: bool,
    ) -> Result<Self, ObstructionError> {
        if dims.get(&0).copied().unwrap_or(0) == 0 {
            return Err(ObstructionError::MissingBaseDegree);
        }
        let cover_dim = dims
            .iter()
            .filter(|(_, &v)| v > 0)
            .map(|(&d, _)| d)
            .max()
            .unwrap_or(0);
        if cover_dim > l_dim {
            return Err(ObstructionError::CoverTooLarge { cover_dim, l_dim });
        }
        if cover_dim == 0 {
            return Err(ObstructionError::OutOfModel);
        }
        let mut table = vec![0; cover_dim + 1];
        for (&d, &v) in dims {
            if d <= cover_dim {
                table[d] = v;
            }
        }
        Ok(Self {
            dims: table,
            l_dim,
            orientable,
        })
    }

    pub fn from_pairs(pairs: &[(usize, u64)], l_dim: usize, orientable: bool) -> Result<Self, ObstructionError> {
        let mut dims = BTreeMap::new();
        for &(d, v) in pairs {
            *dims.entry(d).or_insert(0) += v;
        }
        Self::new(&dims, l_dim, orientable)
    }

    /// Product of spheres of the given dimensions (Kunneth over `Z_2`).
    pub fn sphere_product(spheres: &[usize], l_dim: usize, orientable: bool) -> Result<Self, ObstructionError> {
        let mut poly: BTreeMap<usize, u64> = BTreeMap::from([(0, 1)]);
        for &s in spheres {
            let mut next = BTreeMap::new();
            for (&d, &v) in &poly {
                *next.entry(d).or_insert(0) += v;
                *next.entry(d + s).or_insert(0) += v;
            }
            poly = next;
        }
        Self::new(&poly, l_dim, orientable)
    }

    /// `(S^{p-1})^m` as the cover of an `m(p-1)+m`-dimensional Lagrangian.
    pub fn sphere_power(p: usize, m: usize) -> Result<Self, ObstructionError> {
        Self::sphere_product(&vec![p - 1; m], m * (p - 1) + m, true)
    }

    /// `#_5 (S^{2p-1} x S^{3p-2})` as the cover of a `5p`-dimensional Lagrangian.
    pub fn connected_sum_5(p: usize) -> Result<Self, ObstructionError> {
        Self::from_pairs(
            &[(0, 1), (2 * p - 1, 5), (3 * p - 2, 5), (5 * p - 3, 1)],
            5 * p,
            true,
        )
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn dim(&self, d: usize) -> u64 {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn cover_dim(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn l_dim(&self) -> usize {
        self.l_dim
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.iter().sum()
    }
}

/// Lower and upper bounds on `dim E_r` per degree after page `page`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageTable {
    pub page: usize,
    pub lower: Vec<u64>,
    pub upper: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineRun {
    pub n: u64,
    pub collapse_page: usize,
    pub excluded: bool,
    pub witness_degree: Option<usize>,
    /// Every degree with a positive lower bound at the collapse page.
    pub surviving_degrees: Vec<usize>,
    /// Tables for pages `1..=collapse_page`.
    pub pages: Vec<PageTable>,
}

/// `floor((dim L + 1) / N) + 1`.
pub fn collapse_page(l_dim: usize, n: u64) -> usize {
    ((l_dim as u64 + 1) / n) as usize + 1
}

/// Propagates the lower bounds through every page up to collapse.
pub fn run_engine_detail(profile: &HomologyProfile, n: u64) -> Result<EngineRun, ObstructionError> {
    if n < 2 {
        return Err(ObstructionError::MaslovTooSmall { n });
    }
    let g = collapse_page(profile.l_dim, n);
    let upper = profile.dims.clone();
    let top = upper.len() as i64;
    let up = |d: i64| if (0..top).contains(&d) { upper[d as usize] } else { 0 };
    let mut lower = upper.clone();
    let mut pages = vec![PageTable {
        page: 1,
        lower: lower.clone(),
        upper: upper.clone(),
    }];
    // N = 2 is never excluded
    let active = n >= 3;
    for r in 1..g {
        if active {
            let shift = r as i64 * n as i64;
            lower = (0..top)
                .map(|d| {
                    let kill = up(d - 1 + shift) + up(d + 1 - shift);
                    lower[d as usize].saturating_sub(kill)
                })
                .collect();
        }
        pages.push(PageTable {
            page: r + 1,
            lower: lower.clone(),
            upper: upper.clone(),
        });
    }
    let surviving_degrees: Vec<usize> = if active {
        (0..lower.len()).filter(|&d| lower[d] > 0).collect()
    } else {
        Vec::new()
    };
    Ok(EngineRun {
        n,
        collapse_page: g,
        excluded: !surviving_degrees.is_empty(),
        witness_degree: surviving_degrees.first().copied(),
        surviving_degrees,
        pages,
    })
}

/// Whether the counting argument excludes `N`, and the least surviving degree.
pub fn run_engine(profile: &HomologyProfile, n: u64) -> Result<(bool, Option<usize>), ObstructionError> {
    let run = run_engine_detail(profile, n)?;
    Ok((run.excluded, run.witness_degree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exclusion {
    /// Odd `N` on an orientable Lagrangian.
    Parity,
    /// A degree survives to the collapse page.
    Survivor { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    pub n_max: u64,
    pub admissible: Vec<u64>,
    pub excluded: Vec<(u64, Exclusion)>,
}

impl Admissibility {
    pub fn admissible_even(&self) -> Vec<u64> {
        self.admissible.iter().copied().filter(|n| n % 2 == 0).collect()
    }
}

/// All `N` in `[2, n_max]` that survive the parity rule and the engine.
pub fn admissible_maslov(profile: &HomologyProfile, n_max: u64) -> Result<Admissibility, ObstructionError> {
    if n_max < 2 {
        return Err(ObstructionError::MaslovTooSmall { n: n_max });
    }
    let mut admissible = Vec::new();
    let mut excluded = Vec::new();
    for n in 2..=n_max {
        if profile.orientable && n % 2 == 1 {
            excluded.push((n, Exclusion::Parity));
            continue;
        }
        match run_engine(profile, n)? {
            (true, Some(degree)) => excluded.push((n, Exclusion::Survivor { degree })),
            _ => admissible.push(n),
        }
    }
    Ok(Admissibility {
        n_max,
        admissible,
        excluded,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialLemma {
    pub m: u64,
    /// `C(m, floor(m/2))`.
    pub center: BigInt,
    /// Sum of `C(m, i)` over `i <= floor(m/2) - 3` and `i >= floor(m/2) + 3`.
    pub tails: BigInt,
    pub holds: bool,
    /// For even `m`: `2^{m-1} < C(m, m/2) + C(m, m/2 + 1)`.
    pub stronger: Option<bool>,
}

fn binomial_row(m: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1u32)];
    for i in 0..m {
        let next = row[i as usize].clone() * BigInt::from(m - i) / BigInt::from(i + 1);
        row.push(next);
    }
    row
}

/// `C(m, floor(m/2)) > sum_{i <= floor(m/2)-3} C(m,i) + sum_{i >= floor(m/2)+3} C(m,i)`.
pub fn binomial_lemma(m: u64) -> Result<BinomialLemma, ObstructionError> {
    if m < 4 {
        return Err(ObstructionError::LemmaRange { m });
    }
    let row = binomial_row(m);
    let h = m / 2;
    let tails: BigInt = row
        .iter()
        .enumerate()
        .filter(|&(i, _)| i as u64 + 3 <= h || i as u64 >= h + 3)
        .map(|(_, c)| c.clone())
        .fold(BigInt::zero(), |a, b| a + b);
    let center = row[h as usize].clone();
    let stronger = (m % 2 == 0).then(|| {
        let lhs = BigInt::from(1u32) << (m - 1);
        lhs < &row[h as usize] + &row[h as usize + 1]
    });
    Ok(BinomialLemma {
        m,
        holds: center > tails,
        center,
        tails,
        stronger,
    })
}
