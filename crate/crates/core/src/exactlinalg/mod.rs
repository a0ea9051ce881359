//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers; there is no
//! floating point anywhere in this module.

mod hnf;
mod lattice;
mod matrix;
pub mod rational;
mod snf;

use core::fmt;

pub use hnf::{hnf, integer_kernel, is_hnf, pivot_columns};
pub use lattice::{
    dual_lattice, gcd_over_basis, hnf_pivots, snf_index, snf_index_rational, LatticeBasis,
    RationalBasis,
};
pub use matrix::IntMatrix;
pub use rational::Rational;
pub use snf::elementary_divisors;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    Shape { expected: usize, found: usize },
    NotFullRank { rank: usize, dim: usize },
    RankMismatch { sub: usize, sup: usize },
    NotContained,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { expected, found } => {
                write!(f, "shape mismatch: expected {expected}, found {found}")
            }
            Self::NotFullRank { rank, dim } => {
                write!(f, "lattice of rank {rank} is not full rank in dimension {dim}")
            }
            Self::RankMismatch { sub, sup } => {
                write!(f, "sublattice rank {sub} differs from lattice rank {sup}")
            }
            Self::NotContained => f.write_str("sublattice is not contained in the lattice"),
        }
    }
}

impl core::error::Error for LatticeError {}
