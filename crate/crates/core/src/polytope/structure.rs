use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exactlinalg::rational::{self, int_to_rat, Rational};
use crate::exactlinalg::{gcd_over_basis, LatticeBasis};

use super::hrep::Minimum;
use super::{enumerate_vertices, HPolytope, PolytopeError, VertexSet};

/// Every vertex lies on exactly `k` facets.
pub fn is_simple(v: &VertexSet, k: usize) -> bool {
    v.vertices.iter().all(|x| x.active.len() == k)
}

/// At every vertex the normals of all tight inequalities are linearly independent.
pub fn is_generic(p: &HPolytope, v: &VertexSet) -> bool {
    v.vertices.iter().all(|x| {
        let tight = p.normals_matrix().select_columns(&x.active);
        if x.active.len() == p.dim() {
            !tight.determinant().is_ok_and(|d| d.is_zero())
        } else {
            x.active.len() < p.dim() && tight.rank() == x.active.len()
        }
    })
}

/// Simple, generic, and at each vertex the tight normals form a basis of
/// the lattice spanned by all normals.
pub fn is_delzant(p: &HPolytope, v: &VertexSet) -> Result<bool, PolytopeError> {
    let full = LatticeBasis::from_generators(&p.normals_matrix().transpose());
    if full.rank() != p.dim() {
        return Err(PolytopeError::RankDeficientNormals {
            rank: full.rank(),
            dim: p.dim(),
        });
    }
    if !is_simple(v, p.dim()) || !is_generic(p, v) {
        return Ok(false);
    }
    // the tight normals span a sublattice of index |det| / covolume
    let covolume = full.basis().determinant().map(|d| d.abs()).unwrap_or_default();
    for x in &v.vertices {
        let det = p.normals_matrix().select_columns(&x.active).determinant().unwrap_or_default();
        if det.abs() != covolume {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCheck {
    pub fano: bool,
    pub primitive_normals: bool,
    /// `C` with `b - C*1 = A^T y`.
    pub constant: Option<Rational>,
    pub translation: Option<Vec<Rational>>,
}

impl FanoCheck {
    fn rejected(primitive_normals: bool) -> Self {
        Self {
            fano: false,
            primitive_normals,
            constant: None,
            translation: None,
        }
    }
}

/// Fano up to translation: primitive normals and `b - C*1 = A^T y` for some
/// `C > 0` and rational `y`.
pub fn is_fano(p: &HPolytope) -> FanoCheck {
    let n = p.len();
    let k = p.dim();
    let primitive = (0..n).all(|i| gcd_over_basis(&p.normal(i)).is_one());
    if !primitive {
        return FanoCheck::rejected(false);
    }
    let b = p.offsets();
    if n > 0 && b.iter().all(|x| *x == b[0]) {
        return if b[0].is_positive() {
            FanoCheck {
                fano: true,
                primitive_normals: true,
                constant: Some(b[0].clone()),
                translation: Some(vec![Rational::zero(); k]),
            }
        } else {
            FanoCheck::rejected(true)
        };
    }
    // unknowns (y_1..y_k, C): <a_i, y> + C = b_i
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rational> = p.normal(i).iter().map(int_to_rat).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let Some(sol) = rational::solve(&rows, b, k + 1) else {
        return FanoCheck::rejected(true);
    };
    let c_free = rational::nullspace(&rows, k + 1)
        .iter()
        .any(|d| !d[k].is_zero());
    let c = if c_free { Rational::one() } else { sol[k].clone() };
    if !c.is_positive() {
        return FanoCheck::rejected(true);
    }
    let a_t: Vec<Vec<Rational>> = (0..n)
        .map(|i| p.normal(i).iter().map(int_to_rat).collect())
        .collect();
    let rhs: Vec<Rational> = b.iter().map(|x| x - &c).collect();
    let y = rational::solve(&a_t, &rhs, k).expect("consistent for the chosen constant");
    FanoCheck {
        fano: true,
        primitive_normals: true,
        constant: Some(c),
        translation: Some(y),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RedundantInequality {
    pub index: usize,
    /// Never tight on the polytope cut out by the others.
    pub strict: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Redundancy {
    /// Ascending by index.
    pub redundant: Vec<RedundantInequality>,
}

impl Redundancy {
    pub fn indices(&self) -> Vec<usize> {
        self.redundant.iter().map(|r| r.index).collect()
    }

    pub fn strict_indices(&self) -> Vec<usize> {
        self.redundant.iter().filter(|r| r.strict).map(|r| r.index).collect()
    }

    pub fn is_irredundant(&self) -> bool {
        self.redundant.is_empty()
    }

    pub fn has_weak(&self) -> bool {
        self.redundant.iter().any(|r| !r.strict)
    }
}

/// Inequality `i` is redundant iff `<a_i, x> + b_i >= 0` holds on the
/// polyhedron cut out by the other inequalities, decided by an exact minimum.
pub fn redundancy(p: &HPolytope, budget: u64) -> Result<Redundancy, PolytopeError> {
    let sys = p.hrep();
    let mut redundant = Vec::new();
    for i in 0..p.len() {
        let minimum = match sys.slack_minimum(i, budget)? {
            Some(m) => m,
            None => sys.without(i).minimize(&sys.normals[i], &sys.offsets[i], budget)?,
        };
        let verdict = match minimum {
            Minimum::Infeasible => Some(true),
            Minimum::Unbounded => None,
            Minimum::Attained(m) if m.is_negative() => None,
            Minimum::Attained(m) => Some(m.is_positive()),
        };
        if let Some(strict) = verdict {
            redundant.push(RedundantInequality { index: i, strict });
        }
    }
    Ok(Redundancy { redundant })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub empty: bool,
    pub bounded: bool,
    pub pointed: bool,
    pub normals_full_rank: bool,
    pub vertex_count: usize,
    pub simple: bool,
    pub generic: bool,
    pub delzant: bool,
    pub fano: bool,
    /// Nonempty, bounded, Delzant, irredundant and Fano up to translation.
    pub monotone_ready: bool,
    pub redundant: Vec<RedundantInequality>,
    pub fano_constant: Option<Rational>,
    pub fano_translation: Option<Vec<Rational>>,
}

impl StructureReport {
    pub fn strict_redundant(&self) -> Vec<usize> {
        self.redundant.iter().filter(|r| r.strict).map(|r| r.index).collect()
    }

    pub fn irredundant(&self) -> bool {
        self.redundant.is_empty()
    }
}

pub fn analyze_structure(p: &HPolytope, budget: u64) -> Result<StructureReport, PolytopeError> {
    let v = enumerate_vertices(p, budget)?;
    let simple = is_simple(&v, p.dim());
    let generic = is_generic(p, &v);
    let (delzant, normals_full_rank) = match is_delzant(p, &v) {
        Ok(d) => (d, true),
        Err(PolytopeError::RankDeficientNormals { .. }) => (false, false),
        Err(e) => return Err(e),
    };
    let fano = is_fano(p);
    let red = redundancy(p, budget)?;
    let monotone_ready = !v.empty && v.bounded && delzant && fano.fano && red.is_irredundant();
    Ok(StructureReport {
        empty: v.empty,
        bounded: v.bounded,
        pointed: v.pointed,
        normals_full_rank,
        vertex_count: v.len(),
        simple,
        generic,
        delzant,
        fano: fano.fano,
        monotone_ready,
        redundant: red.redundant,
        fano_constant: fano.constant,
        fano_translation: fano.translation,
    })
}
