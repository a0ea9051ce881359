//! The full pipeline from a polytope to a report: structure checks, quadric
//! system, invariants, topology, optional numerical checks, and comparison
//! with the published values for recognized families.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::correspondence::{polytope_to_quadrics, CorrespondenceError, QuadricSystem};
use crate::exactlinalg::rational::{dot, rat, rat_frac, Rational};
use crate::families::{recognize_topology, FamilySpec, TopologyTag};
use crate::invariants::{
    deck_data, fano_monotone_crosscheck, invariant_report, Crosscheck, InvariantError, InvariantReport,
};
use crate::oracle::{loop_area, oracle_checks, sample_point, CheckRecord, OracleConfig, TorusLoop};
use crate::polytope::{analyze_structure, HPolytope, PolytopeError, StructureReport, DEFAULT_SUBSET_BUDGET};

/// Added when the topology catalog does not recognize `R`.
pub const ASSUME_CONNECTED: &str =
    "R is assumed connected and simply connected; the loop lattice is then the full dual lattice";

#[derive(Clone, Debug, PartialEq)]
pub enum AnalysisError {
    Polytope(PolytopeError),
    Correspondence(CorrespondenceError),
    Invariant(InvariantError),
    Empty,
    /// Only raised when an embedded monotone Lagrangian is required.
    NotDelzant,
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polytope(e) => write!(f, "{e}"),
            Self::Correspondence(e) => write!(f, "{e}"),
            Self::Invariant(e) => write!(f, "{e}"),
            Self::Empty => f.write_str("polytope is empty"),
            Self::NotDelzant => f.write_str("polytope is not Delzant; the Lagrangian is not embedded"),
        }
    }
}

impl core::error::Error for AnalysisError {}

impl From<PolytopeError> for AnalysisError {
    fn from(e: PolytopeError) -> Self {
        Self::Polytope(e)
    }
}

impl From<CorrespondenceError> for AnalysisError {
    fn from(e: CorrespondenceError) -> Self {
        Self::Correspondence(e)
    }
}

impl From<InvariantError> for AnalysisError {
    fn from(e: InvariantError) -> Self {
        Self::Invariant(e)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOptions {
    pub seed: u64,
    pub random_loops: usize,
    pub config: OracleConfig,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { seed: 0, random_loops: 20, config: OracleConfig::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub require_embedded: bool,
    pub oracle: Option<OracleOptions>,
    /// Overrides family recognition.
    pub family: Option<FamilySpec>,
    pub budget: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self { require_embedded: false, oracle: None, family: None, budget: DEFAULT_SUBSET_BUDGET }
    }
}

/// A value as published for a recognized family next to the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: String,
    pub published_value: String,
    pub computed_value: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub claim: String,
    pub published_value: String,
    pub computed_value: String,
    /// Numerical measurement of the disputed quantity, in units of `pi`.
    pub oracle_value_over_pi: Option<f64>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub family: Option<FamilySpec>,
    pub structure: StructureReport,
    pub quadrics: QuadricSystem,
    pub invariants: InvariantReport,
    pub crosscheck: Crosscheck,
    pub topology: Option<TopologyTag>,
    pub oracle_checks: Vec<CheckRecord>,
    pub claims: Vec<ClaimCheck>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Recognizes presentations produced verbatim by the family generators.
pub fn identify_family(p: &HPolytope) -> Option<FamilySpec> {
    let n = p.len();
    if n < 4 || p.dim() + 2 != n {
        return None;
    }
    let mut candidates = Vec::new();
    for k in (0..=n).step_by(2) {
        candidates.push(FamilySpec::RedundantSimplex { n, k });
    }
    for pp in 2..n {
        for k in (0..pp).step_by(2) {
            candidates.push(FamilySpec::ProductSimplices { p: pp, n, k });
        }
    }
    candidates
        .into_iter()
        .find(|spec| spec.polytope().is_ok_and(|g| &g == p))
}

fn pi_string(x: &Rational) -> String {
    if x.is_integer() {
        format!("{}*pi", x.numer())
    } else {
        format!("{}/{}*pi", x.numer(), x.denom())
    }
}

fn check(claim: &str, published: String, computed: String) -> ClaimCheck {
    let agrees = published == computed;
    ClaimCheck { claim: claim.to_string(), published_value: published, computed_value: computed, agrees }
}

/// Published values for a family, computed in the family's natural basis.
pub fn family_claims(spec: &FamilySpec) -> Result<Vec<ClaimCheck>, AnalysisError> {
    let q = spec.standard_quadrics().map_err(|_| AnalysisError::Empty)?;
    let t: Vec<Rational> = q.t_vector().into_iter().map(Rational::from_integer).collect();
    let maslov = |v: &[Rational]| dot(v, &t);
    let area = |v: &[Rational]| dot(v, q.delta()) / rat(2);
    let (strict, nl) = match *spec {
        FamilySpec::ProductSimplices { .. } => (vec![], spec.expected_minimal_maslov()),
        FamilySpec::RedundantSimplex { n, .. } => (vec![n - 1], spec.expected_minimal_maslov()),
    };
    let r = invariant_report(&q, &strict, false)?;
    let mut out = vec![check(
        "minimal Maslov number",
        nl.to_string(),
        r.minimal_maslov.to_string(),
    )];
    match *spec {
        FamilySpec::ProductSimplices { p, .. } => {
            let r1 = [rat(1), rat(0)];
            out.push(check("Maslov index of r1", p.to_string(), maslov(&r1).to_string()));
            out.push(check(
                "area of r1",
                pi_string(&rat_frac(p as i64, 2)),
                pi_string(&area(&r1)),
            ));
            out.push(check("monotone", "true".into(), r.monotone.to_string()));
            out.push(check(
                "monotonicity constant",
                pi_string(&rat_frac(1, 2)),
                r.monotonicity_coeff.as_ref().map_or("none".into(), pi_string),
            ));
        }
        FamilySpec::RedundantSimplex { n, k } => {
            let e1 = [rat(1), rat(0)];
            let e2 = [rat(0), rat(2)];
            out.push(check("loop lattice index", "2".into(), r.loop_index.to_string()));
            out.push(check("Maslov index of e1", (n - 1).to_string(), maslov(&e1).to_string()));
            out.push(check("Maslov index of e2", (2 * k + 2).to_string(), maslov(&e2).to_string()));
            out.push(check(
                "area of e2",
                pi_string(&rat(k as i64 + 1)),
                pi_string(&area(&e2)),
            ));
        }
    }
    Ok(out)
}

/// The disputed area, measured along `e2 = 2 (0,1)` at a sampled point.
fn measure_e2(spec: &FamilySpec, opts: &OracleOptions) -> Option<f64> {
    let q = spec.standard_quadrics().ok()?;
    let pt = sample_point(&q, opts.seed, &opts.config).ok()?;
    let lp = TorusLoop::doubled(vec![rat(0), rat(1)], opts.config.samples);
    loop_area(&q, &lp, &pt).ok().map(|a| a / PI)
}

/// Disagreeing claims as discrepancy records, each adjudicated numerically
/// where a loop realizes the quantity.
pub fn discrepancies(spec: &FamilySpec, claims: &[ClaimCheck], opts: &OracleOptions) -> Vec<Discrepancy> {
    claims
        .iter()
        .filter(|c| !c.agrees)
        .map(|c| {
            let (oracle, note) = match (spec, c.claim.as_str()) {
                (FamilySpec::RedundantSimplex { .. }, "area of e2") => (
                    measure_e2(spec, opts),
                    "e2 is twice the dual vector (0,1), so its area is pi <(0,1), delta> = pi (2k+2); \
                     with this value the area/Maslov ratios are pi/2 on e1 and pi on e2 and the family is not monotone"
                        .to_string(),
                ),
                _ => (None, String::new()),
            };
            Discrepancy {
                claim: c.claim.clone(),
                published_value: c.published_value.clone(),
                computed_value: c.computed_value.clone(),
                oracle_value_over_pi: oracle,
                note,
            }
        })
        .collect()
}

pub fn analyze(p: &HPolytope, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    let structure = analyze_structure(p, opts.budget)?;
    if structure.empty {
        return Err(AnalysisError::Empty);
    }
    if opts.require_embedded && !structure.delzant {
        return Err(AnalysisError::NotDelzant);
    }
    let quadrics = polytope_to_quadrics(p)?;
    let strict = structure.strict_redundant();
    let weak = structure.redundant.iter().any(|r| !r.strict);
    let mut invariants = invariant_report(&quadrics, &strict, weak)?;
    let topology = recognize_topology(&quadrics, &strict);
    if topology.is_none() {
        invariants.assumptions.push(ASSUME_CONNECTED.to_string());
    }
    let crosscheck = fano_monotone_crosscheck(&structure, &invariants);
    let oracle_records = match &opts.oracle {
        Some(o) => {
            let d = deck_data(&quadrics)?;
            oracle_checks(&quadrics, &d, &invariants, o.seed, o.random_loops, &o.config)
                .unwrap_or_else(|e| {
                    vec![CheckRecord {
                        check: format!("oracle: {e}"),
                        expected: 0.0,
                        actual: f64::NAN,
                        tolerance: 0.0,
                        pass: false,
                    }]
                })
        }
        None => Vec::new(),
    };
    let family = opts.family.or_else(|| identify_family(p));
    let (claims, discrepancies) = match &family {
        Some(spec) => {
            let claims = family_claims(spec)?;
            let d = discrepancies(spec, &claims, opts.oracle.as_ref().unwrap_or(&OracleOptions::default()));
            (claims, d)
        }
        None => (Vec::new(), Vec::new()),
    };
    Ok(AnalysisReport {
        family,
        structure,
        quadrics,
        invariants,
        crosscheck,
        topology,
        oracle_checks: oracle_records,
        claims,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_product_simplices, gen_redundant_simplex};
    use num_bigint::BigInt;

    #[test]
    fn product_family_report() {
        let p = gen_product_simplices(4, 10, 2).unwrap();
        let r = analyze(&p, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.family, Some(FamilySpec::ProductSimplices { p: 4, n: 10, k: 2 }));
        assert_eq!(r.invariants.minimal_maslov, BigInt::from(4));
        assert!(r.invariants.monotone);
        assert_eq!(r.invariants.monotonicity_coeff, Some(rat_frac(1, 2)));
        assert!(r.discrepancies.is_empty());
        assert!(r.claims.iter().all(|c| c.agrees));
        assert_eq!(r.crosscheck, Crosscheck::Agree);
        assert_eq!(r.topology.unwrap().description, "S^3 x S^5");
    }

    #[test]
    fn redundant_family_flags_e2_area() {
        let p = gen_redundant_simplex(13, 8).unwrap();
        let r = analyze(&p, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.invariants.minimal_maslov, BigInt::from(6));
        assert_eq!(r.discrepancies.len(), 1);
        let d = &r.discrepancies[0];
        assert_eq!(d.claim, "area of e2");
        assert_eq!(d.published_value, "9*pi");
        assert_eq!(d.computed_value, "18*pi");
        assert!((d.oracle_value_over_pi.unwrap() - 18.0).abs() < 1e-8);
    }

    #[test]
    fn connectivity_assumption_only_outside_catalog() {
        let square = HPolytope::new(
            crate::exactlinalg::IntMatrix::from_i64(&[[1, 0, -1, 0], [0, 1, 0, -1]]),
            vec![rat(0), rat(0), rat(1), rat(1)],
        )
        .unwrap();
        let r = analyze(&square, &AnalysisOptions::default()).unwrap();
        assert!(r.topology.is_some());
        assert!(!r.invariants.assumptions.iter().any(|a| a == ASSUME_CONNECTED));
        let cube = HPolytope::new(
            crate::exactlinalg::IntMatrix::from_i64(&[
                [1, 0, 0, -1, 0, 0],
                [0, 1, 0, 0, -1, 0],
                [0, 0, 1, 0, 0, -1],
            ]),
            vec![rat(0), rat(0), rat(0), rat(1), rat(1), rat(1)],
        )
        .unwrap();
        let r = analyze(&cube, &AnalysisOptions::default()).unwrap();
        assert!(r.topology.is_none());
        assert!(r.invariants.assumptions.iter().any(|a| a == ASSUME_CONNECTED));
    }

    #[test]
    fn require_embedded_rejects_non_delzant() {
        let p = HPolytope::new(
            crate::exactlinalg::IntMatrix::from_i64(&[[1, 0, -1], [0, 1, -1]]),
            vec![rat(0), rat(0), rat(2)],
        )
        .unwrap();
        assert!(analyze(&p, &AnalysisOptions::default()).is_ok());
        let p2 = HPolytope::new(
            crate::exactlinalg::IntMatrix::from_i64(&[[1, 0, -1], [0, 1, -2]]),
            vec![rat(0), rat(0), rat(2)],
        )
        .unwrap();
        let opts = AnalysisOptions { require_embedded: true, ..Default::default() };
        assert_eq!(analyze(&p2, &opts).unwrap_err(), AnalysisError::NotDelzant);
    }

    #[test]
    fn oracle_checks_attach() {
        let p = gen_redundant_simplex(5, 2).unwrap();
        let opts = AnalysisOptions {
            oracle: Some(OracleOptions { random_loops: 3, ..Default::default() }),
            ..Default::default()
        };
        let r = analyze(&p, &opts).unwrap();
        assert!(!r.oracle_checks.is_empty());
        assert!(r.oracle_checks.iter().all(|c| c.pass), "{:?}", r.oracle_checks);
    }
}
