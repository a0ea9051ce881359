//! H-representations `P = {x in R^k : <a_i, x> + b_i >= 0}` with exact vertex
//! enumeration and the structural predicates used downstream (simple,
//! generic, Delzant, Fano up to translation, redundancy).

mod hrep;
mod structure;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exactlinalg::rational::{dot_int, int_to_rat, Rational};
use crate::exactlinalg::IntMatrix;

pub(crate) use hrep::HRep;
pub use structure::{
    analyze_structure, is_delzant, is_fano, is_generic, is_simple, redundancy, FanoCheck,
    Redundancy, RedundantInequality, StructureReport,
};

/// Default cap on the number of k-subsets examined by the enumerator.
pub const DEFAULT_SUBSET_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeError {
    /// `A` has `k` rows and `n` columns but `b` has a different length, or
    /// there are fewer inequalities than dimensions.
    DimensionMismatch { rows: usize, cols: usize, offsets: usize },
    ZeroNormal { index: usize },
    BudgetExceeded { subsets: u64, budget: u64 },
    RankDeficientNormals { rank: usize, dim: usize },
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { rows, cols, offsets } => write!(
                f,
                "dimension mismatch: A is {rows}x{cols} but b has {offsets} entries \
                 (need one offset per column and at least as many columns as rows)"
            ),
            Self::ZeroNormal { index } => write!(f, "inequality {index} has a zero normal"),
            Self::BudgetExceeded { subsets, budget } => write!(
                f,
                "vertex enumeration needs {subsets} subsets, over the budget of {budget}"
            ),
            Self::RankDeficientNormals { rank, dim } => write!(
                f,
                "normals span a lattice of rank {rank}, expected full rank {dim}"
            ),
        }
    }
}

impl core::error::Error for PolytopeError {}

/// The presentation `P_{A,b}`; column `i` of `A` is the normal `a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    a: IntMatrix,
    b: Vec<Rational>,
}

impl HPolytope {
    pub fn new(a: IntMatrix, b: Vec<Rational>) -> Result<Self, PolytopeError> {
        let (k, n) = (a.rows(), a.cols());
        // a 0 x n matrix carries no column count of its own
        let n = if k == 0 { b.len() } else { n };
        if b.len() != n || n < k {
            return Err(PolytopeError::DimensionMismatch {
                rows: k,
                cols: n,
                offsets: b.len(),
            });
        }
        if k > 0 {
            if let Some(index) = a.has_zero_column() {
                return Err(PolytopeError::ZeroNormal { index });
            }
        }
        let a = if k == 0 { IntMatrix::zeros(0, n) } else { a };
        Ok(Self { a, b })
    }

    /// Ambient dimension `k`.
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Number of inequalities `n`.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn normals_matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn normal(&self, i: usize) -> Vec<BigInt> {
        self.a.column(i)
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.b
    }

    /// `<a_i, x> + b_i`
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        dot_int(x, &self.normal(i)) + &self.b[i]
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        (0..self.len()).all(|i| self.slack(i, x) >= Rational::default())
    }

    /// Same polytope with `b` replaced by `b + A^T y`, i.e. translated by `-y`.
    pub fn translated(&self, y: &[Rational]) -> HPolytope {
        let b = (0..self.len())
            .map(|i| &self.b[i] + dot_int(y, &self.normal(i)))
            .collect();
        HPolytope { a: self.a.clone(), b }
    }

    /// Appends the inequality `<a, x> + b >= 0`.
    pub fn with_inequality(&self, a: &[BigInt], b: Rational) -> Result<HPolytope, PolytopeError> {
        let mut rows = self.a.to_rows();
        for (row, x) in rows.iter_mut().zip(a) {
            row.push(x.clone());
        }
        let mut offsets = self.b.clone();
        offsets.push(b);
        let a = IntMatrix::from_rows(self.len() + 1, rows).map_err(|_| PolytopeError::DimensionMismatch {
            rows: self.dim(),
            cols: self.len() + 1,
            offsets: self.len() + 1,
        })?;
        HPolytope::new(a, offsets)
    }

    /// Reorders the inequalities: new inequality `j` is old inequality `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> HPolytope {
        HPolytope {
            a: self.a.select_columns(perm),
            b: perm.iter().map(|&i| self.b[i].clone()).collect(),
        }
    }

    pub(crate) fn hrep(&self) -> HRep {
        HRep {
            dim: self.dim(),
            normals: (0..self.len())
                .map(|i| self.normal(i).iter().map(int_to_rat).collect())
                .collect(),
            offsets: self.b.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vertex {
    pub point: Vec<Rational>,
    /// Sorted indices of the inequalities tight at `point`.
    pub active: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    /// Sorted lexicographically by coordinates.
    pub vertices: Vec<Vertex>,
    pub empty: bool,
    pub bounded: bool,
    /// The normals span `R^k`, so nonempty faces contain vertices.
    pub pointed: bool,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Exhaustive k-subset vertex enumeration with exact elimination.
pub fn enumerate_vertices(p: &HPolytope, budget: u64) -> Result<VertexSet, PolytopeError> {
    let sys = p.hrep();
    let pointed = sys.normal_rank() == sys.dim;
    if !pointed {
        let (reduced, _) = sys.reduce(&[]);
        let empty = reduced.vertices(budget)?.is_empty();
        return Ok(VertexSet {
            vertices: Vec::new(),
            empty,
            bounded: empty,
            pointed,
        });
    }
    let vertices: Vec<Vertex> = sys
        .vertices(budget)?
        .into_iter()
        .map(|(point, active)| Vertex { point, active })
        .collect();
    let empty = vertices.is_empty();
    let bounded = empty || sys.extreme_rays(budget)?.is_empty();
    Ok(VertexSet {
        vertices,
        empty,
        bounded,
        pointed,
    })
}
