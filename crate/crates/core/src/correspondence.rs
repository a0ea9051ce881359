//! Translation between polytope presentations `P_{A,b}` and quadric systems
//! `sum_j gamma_j u_j^2 = delta` with `Gamma A^T = 0` and `delta = Gamma b`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactlinalg::rational::{self, dot_int, to_rational_rows, Rational};
use crate::exactlinalg::{hnf, integer_kernel, IntMatrix};
use crate::polytope::{enumerate_vertices, is_generic, HPolytope, PolytopeError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorrespondenceError {
    RankDeficient { rank: usize, expected: usize },
    Shape { rows: usize, offsets: usize },
    /// The polytope and quadric system do not satisfy `Gamma A^T = 0`, `Gamma b = delta`.
    Mismatch,
    Polytope(PolytopeError),
}

impl fmt::Display for CorrespondenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RankDeficient { rank, expected } => {
                write!(f, "coefficient matrix has rank {rank}, expected {expected}")
            }
            Self::Shape { rows, offsets } => {
                write!(f, "Gamma has {rows} rows but delta has {offsets} entries")
            }
            Self::Mismatch => f.write_str("polytope and quadric system do not correspond"),
            Self::Polytope(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CorrespondenceError {}

impl From<PolytopeError> for CorrespondenceError {
    fn from(e: PolytopeError) -> Self {
        Self::Polytope(e)
    }
}

/// `Gamma u^2 = delta`; column `j` of `Gamma` is `gamma_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSystem {
    gamma: IntMatrix,
    delta: Vec<Rational>,
}

impl QuadricSystem {
    pub fn new(gamma: IntMatrix, delta: Vec<Rational>) -> Result<Self, CorrespondenceError> {
        if gamma.rows() != delta.len() {
            return Err(CorrespondenceError::Shape {
                rows: gamma.rows(),
                offsets: delta.len(),
            });
        }
        Ok(Self { gamma, delta })
    }

    /// Number of variables `n`.
    pub fn variables(&self) -> usize {
        self.gamma.cols()
    }

    /// Number of quadrics `m = n - k`.
    pub fn quadrics(&self) -> usize {
        self.gamma.rows()
    }

    pub fn gamma(&self) -> &IntMatrix {
        &self.gamma
    }

    pub fn delta(&self) -> &[Rational] {
        &self.delta
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.gamma.column(j)
    }

    /// `t = gamma_1 + ... + gamma_n`.
    pub fn t_vector(&self) -> Vec<BigInt> {
        self.gamma
            .row_iter()
            .map(|r| r.iter().sum())
            .collect()
    }

    /// Variables that appear in no quadric.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.variables())
            .filter(|&j| self.column(j).iter().all(Zero::is_zero))
            .collect()
    }

    /// `Gamma u - delta` for a vector of squares `u`.
    pub fn residual(&self, squares: &[Rational]) -> Vec<Rational> {
        self.gamma
            .row_iter()
            .zip(&self.delta)
            .map(|(r, d)| dot_int(squares, r) - d)
            .collect()
    }

    /// Row HNF of `Gamma` with the same row operations applied to `delta`.
    pub fn canonical(&self) -> QuadricSystem {
        let (h, u) = hnf(&self.gamma);
        let delta = u
            .row_iter()
            .map(|r| dot_int(&self.delta, r))
            .collect();
        QuadricSystem { gamma: h, delta }
    }

    /// Same solution set up to an integral change of quadric basis.
    pub fn equivalent(&self, other: &QuadricSystem) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Saturated kernel basis of `A` in HNF as `Gamma`, with `delta = Gamma b`.
pub fn polytope_to_quadrics(p: &HPolytope) -> Result<QuadricSystem, CorrespondenceError> {
    let a = p.normals_matrix();
    let rank = a.rank();
    if rank != p.dim() {
        return Err(CorrespondenceError::RankDeficient {
            rank,
            expected: p.dim(),
        });
    }
    let gamma = if p.dim() == 0 {
        IntMatrix::identity(p.len())
    } else {
        integer_kernel(a)
    };
    let delta = gamma
        .row_iter()
        .map(|r| dot_int(p.offsets(), r))
        .collect();
    Ok(QuadricSystem { gamma, delta })
}

/// Saturated kernel basis of `Gamma` as `A`, with `b` the solution of
/// `Gamma b = delta` supported on the pivot columns of `Gamma`.
pub fn quadrics_to_polytope(q: &QuadricSystem) -> Result<HPolytope, CorrespondenceError> {
    let rank = q.gamma.rank();
    if rank != q.quadrics() {
        return Err(CorrespondenceError::RankDeficient {
            rank,
            expected: q.quadrics(),
        });
    }
    let n = q.variables();
    let a = if q.quadrics() == 0 {
        IntMatrix::identity(n)
    } else {
        integer_kernel(&q.gamma)
    };
    let b = rational::solve(&to_rational_rows(&q.gamma), &q.delta, n).ok_or(
        CorrespondenceError::RankDeficient {
            rank,
            expected: q.quadrics(),
        },
    )?;
    Ok(HPolytope::new(a, b)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub nonempty: bool,
    pub generic: bool,
}

impl Nondegeneracy {
    /// `R` is a nonempty smooth complete intersection.
    pub fn holds(&self) -> bool {
        self.nonempty && self.generic
    }
}

/// Nonemptiness and genericity of `P`, read as the corresponding statements for `R`.
pub fn nondegeneracy(
    q: &QuadricSystem,
    p: &HPolytope,
    budget: u64,
) -> Result<Nondegeneracy, CorrespondenceError> {
    let gat = q.gamma.mul(&p.normals_matrix().transpose());
    let annihilates = p.dim() == 0 || gat.is_ok_and(|m| m.row_iter().flatten().all(Zero::is_zero));
    if q.variables() != p.len() || !annihilates || q.residual(p.offsets()).iter().any(|x| !x.is_zero()) {
        return Err(CorrespondenceError::Mismatch);
    }
    let v = enumerate_vertices(p, budget)?;
    Ok(Nondegeneracy {
        nonempty: !v.empty,
        generic: is_generic(p, &v),
    })
}
