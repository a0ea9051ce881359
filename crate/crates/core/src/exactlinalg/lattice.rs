use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hnf::{hnf, pivot_columns};
use super::rational::{int_to_rat, solve, Rational};
use super::snf::elementary_divisors;
use super::{IntMatrix, LatticeError};

/// Integer lattice given by an HNF basis (one basis vector per row).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    basis: IntMatrix,
}

impl LatticeBasis {
    /// Lattice spanned by the rows of `generators` (dependent rows allowed).
    pub fn from_generators(generators: &IntMatrix) -> Self {
        Self {
            basis: hnf(generators).0.truncate_zero_rows(),
        }
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_generators(&IntMatrix::from_i64(rows))
    }

    /// The full lattice `Z^dim`.
    pub fn standard(dim: usize) -> Self {
        Self {
            basis: IntMatrix::identity(dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not a lattice vector.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let target: Vec<Rational> = v.iter().map(int_to_rat).collect();
        let coords = solve_in_rows(&self.basis, &target)?;
        coords
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Solves `x * B = target` for a full-row-rank HNF matrix `B`.
fn solve_in_rows(b: &IntMatrix, target: &[Rational]) -> Option<Vec<Rational>> {
    if target.len() != b.cols() {
        return None;
    }
    let bt: Vec<Vec<Rational>> = (0..b.cols())
        .map(|j| (0..b.rows()).map(|i| int_to_rat(&b[(i, j)])).collect())
        .collect();
    solve(&bt, target, b.rows())
}

/// Lattice with rational generators, stored as `(1/denominator) * L(numerators)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalBasis {
    numerators: LatticeBasis,
    denominator: BigInt,
}

impl RationalBasis {
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let dim = rows.first().map_or(0, Vec::len);
        let l = rows
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| clear_with(r, &l))
            .collect();
        let numerators =
            LatticeBasis::from_generators(&IntMatrix::from_rows(dim, ints).expect("uniform rows"));
        Self::normalized(numerators, l)
    }

    fn normalized(numerators: LatticeBasis, denominator: BigInt) -> Self {
        // divide out any common factor so equal lattices compare equal
        let content = numerators
            .basis
            .row_iter()
            .flatten()
            .fold(denominator.clone(), |g, x| g.gcd(x));
        if content.is_one() || content.is_zero() {
            return Self {
                numerators,
                denominator,
            };
        }
        let rows: Vec<Vec<BigInt>> = numerators
            .basis
            .row_iter()
            .map(|r| r.iter().map(|x| x / &content).collect())
            .collect();
        Self {
            numerators: LatticeBasis {
                basis: IntMatrix::from_rows(numerators.ambient_dim(), rows).expect("uniform rows"),
            },
            denominator: denominator / content,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.numerators.ambient_dim()
    }

    pub fn rank(&self) -> usize {
        self.numerators.rank()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `denominator * basis`, an integer lattice.
    pub fn scaled(&self) -> &LatticeBasis {
        &self.numerators
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        let d = Rational::from_integer(self.denominator.clone());
        self.numerators
            .basis
            .row_iter()
            .map(|r| r.iter().map(|x| int_to_rat(x) / &d).collect())
            .collect()
    }
}

fn clear_with(r: &[Rational], l: &BigInt) -> Vec<BigInt> {
    let lr = Rational::from_integer(l.clone());
    r.iter().map(|x| (x * &lr).to_integer()).collect()
}

/// Basis of `{y : <y, x> in Z for all x in the lattice}`, the inverse transpose.
pub fn dual_lattice(basis: &LatticeBasis) -> Result<RationalBasis, LatticeError> {
    if !basis.is_full_rank() {
        return Err(LatticeError::NotFullRank {
            rank: basis.rank(),
            dim: basis.ambient_dim(),
        });
    }
    let d = basis.ambient_dim();
    // Dual row j solves <y, b_i> = [i == j]; i.e. B y^T = e_j.
    let b: Vec<Vec<Rational>> = basis
        .basis
        .row_iter()
        .map(|r| r.iter().map(int_to_rat).collect())
        .collect();
    let mut rows = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = alloc::vec![Rational::zero(); d];
        e[j] = Rational::one();
        rows.push(solve(&b, &e, d).expect("full-rank basis is invertible"));
    }
    Ok(RationalBasis::from_rows(&rows))
}

/// Group index `[sup : sub]` for lattices of equal rank with `sub` inside `sup`.
pub fn snf_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<BigInt, LatticeError> {
    if sub.rank() != sup.rank() || sub.ambient_dim() != sup.ambient_dim() {
        return Err(LatticeError::RankMismatch {
            sub: sub.rank(),
            sup: sup.rank(),
        });
    }
    let mut coords = Vec::with_capacity(sub.rank());
    for row in sub.basis.row_iter() {
        let c = sup.coordinates(row).ok_or(LatticeError::NotContained)?;
        coords.push(c);
    }
    let x = IntMatrix::from_rows(sup.rank(), coords)?;
    let divisors = elementary_divisors(&x);
    if divisors.len() != sub.rank() {
        return Err(LatticeError::NotContained);
    }
    Ok(divisors.iter().product())
}

/// Index of `sub` in `sup` where `sup` may have rational generators.
pub fn snf_index_rational(sub: &RationalBasis, sup: &RationalBasis) -> Result<BigInt, LatticeError> {
    let l = sub.denominator.lcm(&sup.denominator);
    let lift = |b: &RationalBasis| {
        let f = &l / &b.denominator;
        let rows: Vec<Vec<BigInt>> = b
            .numerators
            .basis
            .row_iter()
            .map(|r| r.iter().map(|x| x * &f).collect())
            .collect();
        LatticeBasis::from_generators(&IntMatrix::from_rows(b.ambient_dim(), rows).expect("uniform"))
    };
    snf_index(&lift(sub), &lift(sup))
}

/// Gcd of the absolute values; zero for empty or all-zero input.
pub fn gcd_over_basis(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}

/// Pivot columns of a full-row-rank matrix (via its HNF).
pub fn hnf_pivots(m: &IntMatrix) -> Vec<usize> {
    pivot_columns(&hnf(m).0)
}
