//! Subcommand bodies. Each returns the JSON for stdout or an error carrying its exit code.

use std::fmt;
use std::fs;
use std::path::Path;

use monotoric_core::analysis::{analyze, AnalysisError, AnalysisOptions, OracleOptions};
use monotoric_core::correspondence::{polytope_to_quadrics, quadrics_to_polytope};
use monotoric_core::families::{parse_params, FamilySpec};
use monotoric_core::invariants::{deck_data, invariant_report};
use monotoric_core::obstruction::{admissible_maslov, HomologyProfile};
use monotoric_core::oracle::{oracle_checks, OracleConfig};
use monotoric_core::polytope::analyze_structure;
use monotoric_core::polytope::DEFAULT_SUBSET_BUDGET;
use serde_json::Value;

use crate::schema::{
    admissibility_json, check_json, parse_polytope, parse_profile, parse_quadrics, polytope_json, quadrics_json,
    report_json, SchemaError,
};

/// Exit status 1: I/O, parse and usage errors.
pub const EXIT_INPUT: i32 = 1;
/// Exit status 2: the input is well formed but rejected (non-Delzant under
/// `--require-embedded`, empty polytope, failing oracle checks).
pub const EXIT_REJECTED: i32 = 2;
/// Exit status 3: `verify` found a hard failure.
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    pub fn rejected(message: impl Into<String>) -> Self {
        Self { code: EXIT_REJECTED, message: message.into() }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CommandError {}

impl From<SchemaError> for CommandError {
    fn from(e: SchemaError) -> Self {
        Self::input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CommandError> {
    fs::read_to_string(path).map_err(|e| CommandError::input(format!("{}: {e}", path.display())))
}

fn analysis_error(e: AnalysisError) -> CommandError {
    CommandError::rejected(e.to_string())
}

pub fn oracle_options(seed: u64, samples: Option<usize>) -> OracleOptions {
    let mut config = OracleConfig::default();
    if let Some(s) = samples {
        config.samples = s;
    }
    OracleOptions { seed, config, ..OracleOptions::default() }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeArgs {
    pub oracle: bool,
    pub require_embedded: bool,
    pub family: Option<String>,
    pub seed: u64,
    pub samples: Option<usize>,
}

pub fn cmd_analyze(path: &Path, args: &AnalyzeArgs) -> Result<Value, CommandError> {
    let p = parse_polytope(&read(path)?)?;
    let family = args
        .family
        .as_deref()
        .map(|s| s.parse::<FamilySpec>().map_err(|e| CommandError::input(e.to_string())))
        .transpose()?;
    let opts = AnalysisOptions {
        require_embedded: args.require_embedded,
        oracle: args.oracle.then(|| oracle_options(args.seed, args.samples)),
        family,
        ..AnalysisOptions::default()
    };
    let report = analyze(&p, &opts).map_err(analysis_error)?;
    Ok(report_json(&report))
}

/// Polytope file to quadric system, or the reverse with `to_polytope`.
pub fn cmd_quadrics(path: &Path, to_polytope: bool) -> Result<Value, CommandError> {
    let text = read(path)?;
    if to_polytope {
        let q = parse_quadrics(&text)?;
        let p = quadrics_to_polytope(&q).map_err(|e| CommandError::rejected(e.to_string()))?;
        Ok(polytope_json(&p))
    } else {
        let p = parse_polytope(&text)?;
        let q = polytope_to_quadrics(&p).map_err(|e| CommandError::rejected(e.to_string()))?;
        Ok(quadrics_json(&q))
    }
}

pub fn cmd_family(spec: &str) -> Result<Value, CommandError> {
    let spec = spec.parse::<FamilySpec>().map_err(|e| CommandError::input(e.to_string()))?;
    let p = spec.polytope().map_err(|e| CommandError::input(e.to_string()))?;
    Ok(polytope_json(&p))
}

/// Profile tags: `sphere-product:p=..,q=..` (`S^{p-1} x S^{q-1}`, `dim L = p + q`),
/// `sphere-power:p=..,m=..` and `connected-sum-5:p=..`.
pub fn profile_from_tag(tag: &str, l_dim: Option<usize>) -> Result<HomologyProfile, CommandError> {
    let (name, body) = tag.split_once(':').unwrap_or((tag, ""));
    let bad = |e: &dyn fmt::Display| CommandError::input(format!("{tag}: {e}"));
    let profile = match name {
        "sphere-product" => {
            let v = parse_params(body, &["p", "q"]).map_err(|e| bad(&e))?;
            let (p, q) = (v[0], v[1]);
            if p < 1 || q < 1 {
                return Err(bad(&"p and q must be positive"));
            }
            HomologyProfile::sphere_product(&[p - 1, q - 1], l_dim.unwrap_or(p + q), true)
        }
        "sphere-power" => {
            let v = parse_params(body, &["p", "m"]).map_err(|e| bad(&e))?;
            let base = HomologyProfile::sphere_power(v[0], v[1]).map_err(|e| bad(&e))?;
            match l_dim {
                Some(l) => HomologyProfile::new(&dims_map(&base), l, base.orientable()),
                None => Ok(base),
            }
        }
        "connected-sum-5" => {
            let v = parse_params(body, &["p"]).map_err(|e| bad(&e))?;
            let base = HomologyProfile::connected_sum_5(v[0]).map_err(|e| bad(&e))?;
            match l_dim {
                Some(l) => HomologyProfile::new(&dims_map(&base), l, base.orientable()),
                None => Ok(base),
            }
        }
        other => return Err(CommandError::input(format!("unknown profile family {other:?}"))),
    };
    profile.map_err(|e| bad(&e))
}

fn dims_map(p: &HomologyProfile) -> std::collections::BTreeMap<usize, u64> {
    p.dims().iter().enumerate().filter(|(_, &v)| v > 0).map(|(d, &v)| (d, v)).collect()
}

pub fn cmd_obstruct(
    path: Option<&Path>,
    family: Option<&str>,
    l_dim: Option<usize>,
    nmax: Option<u64>,
) -> Result<Value, CommandError> {
    let profile = match (path, family) {
        (Some(p), None) => {
            let profile = parse_profile(&read(p)?)?;
            match l_dim {
                Some(l) => HomologyProfile::new(&dims_map(&profile), l, profile.orientable())
                    .map_err(|e| CommandError::input(e.to_string()))?,
                None => profile,
            }
        }
        (None, Some(tag)) => profile_from_tag(tag, l_dim)?,
        _ => return Err(CommandError::input("give exactly one of a profile path or --family")),
    };
    let nmax = nmax.unwrap_or(profile.l_dim() as u64 + 2);
    if nmax < 2 {
        return Err(CommandError::input("--nmax must be at least 2"));
    }
    let adm = admissible_maslov(&profile, nmax).map_err(|e| CommandError::input(e.to_string()))?;
    Ok(admissibility_json(&adm, &profile))
}

/// Runs the numerical checks on a polytope file. `Ok((json, all_passed))`.
pub fn cmd_oracle(path: &Path, seed: u64, samples: Option<usize>) -> Result<(Value, bool), CommandError> {
    let p = parse_polytope(&read(path)?)?;
    let s = analyze_structure(&p, DEFAULT_SUBSET_BUDGET).map_err(|e| CommandError::rejected(e.to_string()))?;
    if s.empty {
        return Err(CommandError::rejected("polytope is empty"));
    }
    let q = polytope_to_quadrics(&p).map_err(|e| CommandError::rejected(e.to_string()))?;
    let d = deck_data(&q).map_err(|e| CommandError::rejected(e.to_string()))?;
    let r = invariant_report(&q, &s.strict_redundant(), false).map_err(|e| CommandError::rejected(e.to_string()))?;
    let o = oracle_options(seed, samples);
    let records = oracle_checks(&q, &d, &r, o.seed, o.random_loops, &o.config)
        .map_err(|e| CommandError::rejected(e.to_string()))?;
    let ok = records.iter().all(|c| c.pass);
    Ok((Value::Array(records.iter().map(check_json).collect()), ok))
}
