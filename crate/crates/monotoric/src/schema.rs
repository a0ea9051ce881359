//! JSON formats for polytopes, quadric systems, homology profiles and reports.
//!
//! Rationals are written as `"p/q"` or `"p"` strings; integers may be JSON
//! numbers or decimal strings so that arbitrary precision survives a round trip.

use std::collections::BTreeMap;
use std::fmt;

use monotoric_core::analysis::{AnalysisReport, ClaimCheck, Discrepancy};
use monotoric_core::correspondence::{CorrespondenceError, QuadricSystem};
use monotoric_core::exactlinalg::{IntMatrix, Rational};
use monotoric_core::families::TopologyTag;
use monotoric_core::invariants::{Crosscheck, InvariantReport};
use monotoric_core::obstruction::{Admissibility, Exclusion, HomologyProfile, ObstructionError};
use monotoric_core::oracle::CheckRecord;
use monotoric_core::polytope::{HPolytope, PolytopeError, StructureReport};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum SchemaError {
    Json(serde_json::Error),
    /// Well-formed JSON that does not follow the schema.
    Shape(String),
    Polytope(PolytopeError),
    Quadrics(CorrespondenceError),
    Profile(ObstructionError),
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Json(e) => write!(f, "malformed JSON: {e}"),
            Self::Shape(msg) => write!(f, "schema violation: {msg}"),
            Self::Polytope(e) => write!(f, "invalid polytope: {e}"),
            Self::Quadrics(e) => write!(f, "invalid quadric system: {e}"),
            Self::Profile(e) => write!(f, "invalid profile: {e}"),
        }
    }
}

impl std::error::Error for SchemaError {}

fn shape(msg: impl Into<String>) -> SchemaError {
    SchemaError::Shape(msg.into())
}

fn parse_json(text: &str) -> Result<Map<String, Value>, SchemaError> {
    match serde_json::from_str::<Value>(text).map_err(SchemaError::Json)? {
        Value::Object(m) => Ok(m),
        _ => Err(shape("top level must be an object")),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, SchemaError> {
    obj.get(key).ok_or_else(|| shape(format!("missing field {key:?}")))
}

pub fn parse_int(v: &Value) -> Result<BigInt, SchemaError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| shape(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| shape(format!("{s:?} is not an integer"))),
        other => Err(shape(format!("expected an integer, got {other}"))),
    }
}

pub fn parse_rational(v: &Value) -> Result<Rational, SchemaError> {
    match v {
        Value::String(s) => {
            let s = s.trim();
            let r: Rational = s.parse().map_err(|_| shape(format!("{s:?} is not a rational")))?;
            Ok(r)
        }
        Value::Number(_) => parse_int(v).map(Rational::from_integer),
        other => Err(shape(format!("expected a rational string, got {other}"))),
    }
}

fn parse_matrix(v: &Value, name: &str) -> Result<Vec<Vec<BigInt>>, SchemaError> {
    let rows = v.as_array().ok_or_else(|| shape(format!("{name} must be an array of rows")))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| shape(format!("each row of {name} must be an array")))?
                .iter()
                .map(parse_int)
                .collect()
        })
        .collect()
}

fn parse_vector(v: &Value, name: &str) -> Result<Vec<Rational>, SchemaError> {
    v.as_array()
        .ok_or_else(|| shape(format!("{name} must be an array")))?
        .iter()
        .map(parse_rational)
        .collect()
}

/// Builds a `rows x cols` matrix, taking `cols` from the row lengths or, with
/// no rows, from `fallback_cols`.
fn build_matrix(rows: Vec<Vec<BigInt>>, fallback_cols: usize, name: &str) -> Result<IntMatrix, SchemaError> {
    let cols = rows.first().map_or(fallback_cols, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(shape(format!("rows of {name} have different lengths")));
    }
    IntMatrix::from_rows(cols, rows).map_err(|e| shape(format!("{name}: {e}")))
}

/// `{"A": [[int,...] per row], "b": ["p/q", ...]}`; columns of `A` are normals.
pub fn parse_polytope(text: &str) -> Result<HPolytope, SchemaError> {
    let obj = parse_json(text)?;
    let rows = parse_matrix(field(&obj, "A")?, "A")?;
    let b = parse_vector(field(&obj, "b")?, "b")?;
    let a = build_matrix(rows, b.len(), "A")?;
    HPolytope::new(a, b).map_err(SchemaError::Polytope)
}

/// `{"Gamma": [[int,...]], "delta": ["p/q", ...]}`.
pub fn parse_quadrics(text: &str) -> Result<QuadricSystem, SchemaError> {
    let obj = parse_json(text)?;
    let rows = parse_matrix(field(&obj, "Gamma")?, "Gamma")?;
    let delta = parse_vector(field(&obj, "delta")?, "delta")?;
    if rows.is_empty() {
        return Err(shape("Gamma needs at least one row; use a polytope file for a point"));
    }
    let gamma = build_matrix(rows, 0, "Gamma")?;
    QuadricSystem::new(gamma, delta).map_err(SchemaError::Quadrics)
}

/// `{"dims": {"0": 1, "3": 2}, "L_dim": int, "orientable": bool}`.
pub fn parse_profile(text: &str) -> Result<HomologyProfile, SchemaError> {
    let obj = parse_json(text)?;
    let dims_obj = field(&obj, "dims")?
        .as_object()
        .ok_or_else(|| shape("dims must be an object keyed by degree"))?;
    let mut dims = BTreeMap::new();
    for (k, v) in dims_obj {
        let d: usize = k.parse().map_err(|_| shape(format!("degree {k:?} is not a non-negative integer")))?;
        let count = v.as_u64().ok_or_else(|| shape(format!("dims[{k}] must be a non-negative integer")))?;
        dims.insert(d, count);
    }
    let l_dim = field(&obj, "L_dim")?
        .as_u64()
        .ok_or_else(|| shape("L_dim must be a non-negative integer"))? as usize;
    let orientable = field(&obj, "orientable")?
        .as_bool()
        .ok_or_else(|| shape("orientable must be a boolean"))?;
    HomologyProfile::new(&dims, l_dim, orientable).map_err(SchemaError::Profile)
}

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn rational_value(x: &Rational) -> Value {
    json!(x.to_string())
}

fn int_row(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

fn rational_row(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_value).collect())
}

fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.row_iter().map(int_row).collect())
}

pub fn polytope_json(p: &HPolytope) -> Value {
    json!({ "A": matrix_value(p.normals_matrix()), "b": rational_row(p.offsets()) })
}

pub fn quadrics_json(q: &QuadricSystem) -> Value {
    json!({ "Gamma": matrix_value(q.gamma()), "delta": rational_row(q.delta()) })
}

pub fn invariants_json(r: &InvariantReport) -> Value {
    json!({
        "t": int_row(&r.t_vector),
        "loop_basis": Value::Array(r.loop_basis.iter().map(|v| rational_row(v)).collect()),
        "loop_coords": Value::Array(r.loop_coords.iter().map(|v| int_row(v)).collect()),
        "loop_index": int_value(&r.loop_index),
        "loop_lattice_known": r.loop_lattice_known,
        "maslov": int_row(&r.maslov_values),
        "area_over_pi": rational_row(&r.area_coeffs),
        "N_L": int_value(&r.minimal_maslov),
        "monotone": r.monotone,
        "c_over_pi": r.monotonicity_coeff.as_ref().map_or(Value::Null, rational_value),
        "counterexample": r.counterexample.as_ref().map_or(Value::Null, |v| rational_row(v)),
        "assumptions": r.assumptions,
    })
}

pub fn structure_json(s: &StructureReport) -> Value {
    json!({
        "empty": s.empty,
        "bounded": s.bounded,
        "pointed": s.pointed,
        "normals_full_rank": s.normals_full_rank,
        "vertex_count": s.vertex_count,
        "simple": s.simple,
        "generic": s.generic,
        "delzant": s.delzant,
        "fano": s.fano,
        "fano_constant": s.fano_constant.as_ref().map_or(Value::Null, rational_value),
        "fano_translation": s.fano_translation.as_ref().map_or(Value::Null, |v| rational_row(v)),
        "monotone_ready": s.monotone_ready,
        "redundant": s.redundant.iter().map(|r| r.index).collect::<Vec<_>>(),
        "strictly_redundant": s.strict_redundant(),
    })
}

pub fn topology_json(t: &Option<TopologyTag>) -> Value {
    match t {
        None => json!("unknown"),
        Some(t) => json!({
            "description": t.description,
            "sphere_factors": t.sphere_factors,
            "torus_rank": t.torus_rank,
            "orientable": t.orientable,
            "components": int_value(&t.component_count),
            "lagrangian": t.lagrangian,
        }),
    }
}

fn float_value(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn check_json(c: &CheckRecord) -> Value {
    json!({
        "check": c.check,
        "expected": float_value(c.expected),
        "actual": float_value(c.actual),
        "tolerance": float_value(c.tolerance),
        "pass": c.pass,
    })
}

pub fn claim_json(c: &ClaimCheck) -> Value {
    json!({
        "claim": c.claim,
        "published_value": c.published_value,
        "computed_value": c.computed_value,
        "agrees": c.agrees,
    })
}

pub fn discrepancy_json(d: &Discrepancy) -> Value {
    json!({
        "claim": d.claim,
        "published_value": d.published_value,
        "computed_value": d.computed_value,
        "oracle_value_over_pi": d.oracle_value_over_pi.map_or(Value::Null, float_value),
        "note": d.note,
    })
}

fn crosscheck_str(c: Crosscheck) -> &'static str {
    match c {
        Crosscheck::Agree => "agree",
        Crosscheck::Disagree => "disagree",
        Crosscheck::NotApplicable => "not_applicable",
    }
}

pub fn report_json(r: &AnalysisReport) -> Value {
    json!({
        "family": r.family.map(|f| f.to_string()),
        "structure": structure_json(&r.structure),
        "quadrics": quadrics_json(&r.quadrics),
        "invariants": invariants_json(&r.invariants),
        "fano_monotone_crosscheck": crosscheck_str(r.crosscheck),
        "topology": topology_json(&r.topology),
        "oracle_checks": r.oracle_checks.iter().map(check_json).collect::<Vec<_>>(),
        "claims": r.claims.iter().map(claim_json).collect::<Vec<_>>(),
        "discrepancies": r.discrepancies.iter().map(discrepancy_json).collect::<Vec<_>>(),
    })
}

pub fn admissibility_json(a: &Admissibility, profile: &HomologyProfile) -> Value {
    let excluded: Vec<Value> = a
        .excluded
        .iter()
        .map(|(n, why)| match why {
            Exclusion::Parity => json!({ "N": n, "reason": "parity" }),
            Exclusion::Survivor { degree } => json!({ "N": n, "reason": "survivor", "witness_degree": degree }),
        })
        .collect();
    let dims: Map<String, Value> = profile
        .dims()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0)
        .map(|(d, &v)| (d.to_string(), json!(v)))
        .collect();
    json!({
        "profile": { "dims": dims, "L_dim": profile.l_dim(), "orientable": profile.orientable() },
        "n_max": a.n_max,
        "admissible": a.admissible,
        "admissible_even": a.admissible_even(),
        "excluded": excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_parses() {
        let p = parse_polytope(r#"{"A": [[1,-1]], "b": ["1","1"]}"#).unwrap();
        assert_eq!((p.dim(), p.len()), (1, 2));
    }

    #[test]
    fn fewer_columns_than_rows_is_a_dimension_mismatch() {
        let e = parse_polytope(r#"{"A": [[1],[0]], "b": ["0"]}"#).unwrap_err();
        assert!(matches!(e, SchemaError::Polytope(PolytopeError::DimensionMismatch { .. })));
    }

    #[test]
    fn distinct_diagnostics() {
        assert!(matches!(parse_polytope("{"), Err(SchemaError::Json(_))));
        assert!(matches!(
            parse_polytope(r#"{"A": [[0,1]], "b": ["1","1"]}"#),
            Err(SchemaError::Polytope(PolytopeError::ZeroNormal { index: 0 }))
        ));
        assert!(matches!(parse_polytope(r#"{"A": [[1,-1]]}"#), Err(SchemaError::Shape(_))));
        assert!(matches!(parse_polytope(r#"{"A": [[1,-1]], "b": ["x","1"]}"#), Err(SchemaError::Shape(_))));
    }

    #[test]
    fn big_integers_as_strings() {
        let p = parse_polytope(r#"{"A": [["100000000000000000000", -1]], "b": ["1/3", "2"]}"#).unwrap();
        let v = polytope_json(&p);
        assert_eq!(v["A"][0][0], json!("100000000000000000000"));
        assert_eq!(v["b"][0], json!("1/3"));
        assert_eq!(parse_polytope(&v.to_string()).unwrap(), p);
    }

    #[test]
    fn quadric_round_trip() {
        let q = parse_quadrics(r#"{"Gamma": [[1,1]], "delta": ["2"]}"#).unwrap();
        assert_eq!(parse_quadrics(&quadrics_json(&q).to_string()).unwrap(), q);
    }

    #[test]
    fn profile_parses() {
        let p = parse_profile(r#"{"dims": {"0": 1, "3": 1, "5": 1, "8": 1}, "L_dim": 8, "orientable": true}"#).unwrap();
        assert_eq!(p.dims(), &[1, 0, 0, 1, 0, 1, 0, 0, 1]);
        assert!(matches!(
            parse_profile(r#"{"dims": {"0": 1}, "L_dim": 3, "orientable": true}"#),
            Err(SchemaError::Profile(ObstructionError::OutOfModel))
        ));
    }
}
