//! Lattice data of a quadric system, the loop lattice of the Lagrangian
//! `L = R x_D T`, and the Maslov and area homomorphisms on it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::correspondence::QuadricSystem;
use crate::exactlinalg::rational::{dot, dot_int, int_to_rat, Rational};
use crate::exactlinalg::{
    dual_lattice, gcd_over_basis, integer_kernel, snf_index, IntMatrix, LatticeBasis, RationalBasis,
};
use crate::polytope::StructureReport;

pub const ASSUME_ODD_AREA: &str =
    "area on loop classes outside the doubled lattice extended linearly from doubled loops";
pub const ASSUME_LOOP_UNKNOWN: &str =
    "loop lattice unknown (weakly redundant inequality present); invariants computed on the doubled dual lattice";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    /// The columns of `Gamma` do not span a lattice of full rank.
    RankDeficient { rank: usize, dim: usize },
    IndexOutOfRange { index: usize, len: usize },
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RankDeficient { rank, dim } => write!(
                f,
                "construction undefined: quadric columns span rank {rank}, need {dim}"
            ),
            Self::IndexOutOfRange { index, len } => {
                write!(f, "slack index {index} out of range for {len} variables")
            }
        }
    }
}

impl core::error::Error for InvariantError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckData {
    /// Lattice spanned by the columns `gamma_j`.
    pub lambda: LatticeBasis,
    pub lambda_star: RationalBasis,
    pub torus_rank: usize,
    /// `|Lambda* / 2 Lambda*| = 2^rank`.
    pub deck_order: BigInt,
}

impl DeckData {
    /// Basis vectors `epsilon_i` of the dual lattice.
    pub fn dual_basis(&self) -> Vec<Vec<Rational>> {
        self.lambda_star.rows()
    }

    /// `sum_i c_i epsilon_i`.
    pub fn vector(&self, coords: &[BigInt]) -> Vec<Rational> {
        let eps = self.dual_basis();
        let mut v = alloc::vec![Rational::zero(); self.torus_rank];
        for (c, e) in coords.iter().zip(&eps) {
            let c = int_to_rat(c);
            for (x, y) in v.iter_mut().zip(e) {
                *x += &c * y;
            }
        }
        v
    }
}

pub fn deck_data(q: &QuadricSystem) -> Result<DeckData, InvariantError> {
    let m = q.quadrics();
    let lambda = LatticeBasis::from_generators(&q.gamma().transpose());
    if lambda.rank() != m {
        return Err(InvariantError::RankDeficient {
            rank: lambda.rank(),
            dim: m,
        });
    }
    let lambda_star = dual_lattice(&lambda).map_err(|_| InvariantError::RankDeficient {
        rank: lambda.rank(),
        dim: m,
    })?;
    Ok(DeckData {
        lambda,
        lambda_star,
        torus_rank: m,
        deck_order: BigInt::one() << m,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopLattice {
    /// HNF basis in coordinates of the dual basis `epsilon_i`.
    pub basis: LatticeBasis,
    /// `[Lambda* : loop lattice]`.
    pub index_in_dual: BigInt,
    /// False when the congruence rule did not apply and `2 Lambda*` was used instead.
    pub known: bool,
}

impl LoopLattice {
    pub fn coords(&self) -> Vec<Vec<BigInt>> {
        self.basis.basis().to_rows()
    }
}

/// `{v in Lambda* : <v, gamma_s> even for s in strict}`, or `2 Lambda*` when
/// a weakly redundant inequality makes the rule inapplicable.
pub fn loop_lattice(
    d: &DeckData,
    q: &QuadricSystem,
    strict: &[usize],
    weak_present: bool,
) -> Result<LoopLattice, InvariantError> {
    let m = d.torus_rank;
    if let Some(&index) = strict.iter().find(|&&s| s >= q.variables()) {
        return Err(InvariantError::IndexOutOfRange {
            index,
            len: q.variables(),
        });
    }
    let basis = if weak_present {
        let two = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigInt::from(2) } else { BigInt::zero() }).collect())
            .collect();
        LatticeBasis::from_generators(&IntMatrix::from_rows(m, two).expect("square"))
    } else if strict.is_empty() {
        LatticeBasis::standard(m)
    } else {
        // rows: s in strict; columns: c_1..c_m then one slack z_s each, <c, W_s> - 2 z_s = 0
        let eps = d.dual_basis();
        let cols = m + strict.len();
        let rows: Vec<Vec<BigInt>> = strict
            .iter()
            .enumerate()
            .map(|(r, &s)| {
                let g = q.column(s);
                let mut row: Vec<BigInt> = eps.iter().map(|e| dot_int(e, &g).to_integer()).collect();
                row.extend((0..strict.len()).map(|c| if c == r { BigInt::from(-2) } else { BigInt::zero() }));
                row
            })
            .collect();
        let kernel = integer_kernel(&IntMatrix::from_rows(cols, rows).expect("uniform rows"));
        let projected = kernel.select_columns(&(0..m).collect::<Vec<_>>());
        LatticeBasis::from_generators(&projected)
    };
    let index_in_dual = snf_index(&basis, &LatticeBasis::standard(m)).expect("sublattice of full rank");
    Ok(LoopLattice {
        basis,
        index_in_dual,
        known: !weak_present,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub t_vector: Vec<BigInt>,
    /// Loop basis as vectors of `R^{n-k}`.
    pub loop_basis: Vec<Vec<Rational>>,
    pub loop_coords: Vec<Vec<BigInt>>,
    pub loop_index: BigInt,
    pub loop_lattice_known: bool,
    pub maslov_values: Vec<BigInt>,
    /// Area of each basis loop divided by `pi`.
    pub area_coeffs: Vec<Rational>,
    pub minimal_maslov: BigInt,
    pub monotone: bool,
    /// `c / pi` with `I_omega = c I_mu`.
    pub monotonicity_coeff: Option<Rational>,
    pub counterexample: Option<Vec<Rational>>,
    pub assumptions: Vec<String>,
}

/// Maslov value `<v, t>` and area coefficient `<v, delta> / 2` on each loop basis vector.
pub fn maslov_area_report(d: &DeckData, q: &QuadricSystem, ll: &LoopLattice) -> InvariantReport {
    let t = q.t_vector();
    let coords = ll.coords();
    let basis: Vec<Vec<Rational>> = coords.iter().map(|c| d.vector(c)).collect();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let maslov: Vec<BigInt> = basis.iter().map(|v| dot_int(v, &t).to_integer()).collect();
    let area: Vec<Rational> = basis.iter().map(|v| dot(v, q.delta()) * &half).collect();

    let (monotone, coeff, counterexample) = proportionality(&maslov, &area, &basis);

    let mut assumptions = Vec::new();
    if !ll.known {
        assumptions.push(ASSUME_LOOP_UNKNOWN.to_string());
    } else if ll.index_in_dual < d.deck_order {
        assumptions.push(ASSUME_ODD_AREA.to_string());
    }
    InvariantReport {
        t_vector: t,
        loop_basis: basis,
        loop_coords: coords,
        loop_index: ll.index_in_dual.clone(),
        loop_lattice_known: ll.known,
        minimal_maslov: gcd_over_basis(&maslov),
        maslov_values: maslov,
        area_coeffs: area,
        monotone,
        monotonicity_coeff: coeff,
        counterexample,
        assumptions,
    }
}

fn proportionality(
    maslov: &[BigInt],
    area: &[Rational],
    basis: &[Vec<Rational>],
) -> (bool, Option<Rational>, Option<Vec<Rational>>) {
    let Some(lead) = maslov.iter().position(|x| !x.is_zero()) else {
        let bad = area.iter().position(|a| !a.is_zero());
        return (false, None, bad.map(|i| basis[i].clone()));
    };
    let c = &area[lead] / int_to_rat(&maslov[lead]);
    if !c.is_positive() {
        return (false, None, Some(basis[lead].clone()));
    }
    let bad = (0..maslov.len()).find(|&i| area[i] != &c * int_to_rat(&maslov[i]));
    match bad {
        None => (true, Some(c), None),
        Some(i) => (false, None, Some(basis[i].clone())),
    }
}

/// Deck data, loop lattice and report in one call.
pub fn invariant_report(
    q: &QuadricSystem,
    strict: &[usize],
    weak_present: bool,
) -> Result<InvariantReport, InvariantError> {
    let d = deck_data(q)?;
    let ll = loop_lattice(&d, q, strict, weak_present)?;
    Ok(maslov_area_report(&d, q, &ll))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crosscheck {
    Agree,
    Disagree,
    /// The presentation is redundant or not Delzant.
    NotApplicable,
}

/// Compares the Fano-up-to-translation verdict with the monotonicity verdict.
pub fn fano_monotone_crosscheck(s: &StructureReport, r: &InvariantReport) -> Crosscheck {
    if !s.delzant || !s.irredundant() || s.empty {
        return Crosscheck::NotApplicable;
    }
    if s.fano == r.monotone {
        Crosscheck::Agree
    } else {
        Crosscheck::Disagree
    }
}
