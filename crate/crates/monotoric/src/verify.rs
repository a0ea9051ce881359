//! The reproduction suite: every published claim the tool can check, one row each.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use monotoric_core::analysis::{analyze, discrepancies, family_claims, AnalysisOptions, OracleOptions};
use monotoric_core::correspondence::polytope_to_quadrics;
use monotoric_core::exactlinalg::rational::{rat, rat_frac};
use monotoric_core::families::{
    even_divisors, realizable_exist1, realizable_exist2, redundant_simplex_range, FamilySpec,
};
use monotoric_core::invariants::{deck_data, invariant_report};
use monotoric_core::obstruction::{admissible_maslov, binomial_lemma, run_engine, HomologyProfile};
use monotoric_core::oracle::{oracle_checks, OracleConfig};
use num_bigint::BigInt;
use num_integer::Integer;
use serde_json::{json, Value};

use crate::brute::{random_profiles, vanishing_assignment_exists};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// A published value that the computation contradicts, documented rather than failed.
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
            Self::Flagged => "flagged",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub suite: Suite,
    pub claim: String,
    pub status: Status,
    pub detail: String,
    pub oracle_value_over_pi: Option<f64>,
}

impl Row {
    fn new(suite: Suite, claim: &str, failures: &[String], passed: String) -> Self {
        let (status, detail) = if failures.is_empty() {
            (Status::Pass, passed)
        } else {
            let shown: Vec<&str> = failures.iter().take(8).map(String::as_str).collect();
            let more = failures.len().saturating_sub(shown.len());
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            (Status::Fail, format!("{}{tail}", shown.join("; ")))
        };
        Self { suite, claim: claim.to_string(), status, detail, oracle_value_over_pi: None }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "claim": self.claim,
            "status": self.status.to_string(),
            "detail": self.detail,
            "oracle_value_over_pi": self.oracle_value_over_pi,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    ProductFamily,
    Exist1,
    RedundantFamily,
    Exist2,
    SphereProduct,
    SpherePower,
    Binomial,
    ConnectedSum,
    Oracle,
    Soundness,
    Discrepancy,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::ProductFamily,
        Suite::Exist1,
        Suite::RedundantFamily,
        Suite::Exist2,
        Suite::SphereProduct,
        Suite::SpherePower,
        Suite::Binomial,
        Suite::ConnectedSum,
        Suite::Oracle,
        Suite::Soundness,
        Suite::Discrepancy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::ProductFamily => "product-family",
            Self::Exist1 => "exist1",
            Self::RedundantFamily => "redundant-family",
            Self::Exist2 => "exist2",
            Self::SphereProduct => "sphere-product",
            Self::SpherePower => "sphere-power",
            Self::Binomial => "binomial",
            Self::ConnectedSum => "connected-sum",
            Self::Oracle => "oracle",
            Self::Soundness => "soundness",
            Self::Discrepancy => "discrepancy",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 0, samples: OracleConfig::default().samples }
    }
}

impl VerifyOptions {
    fn oracle(&self) -> OracleOptions {
        OracleOptions {
            seed: self.seed,
            random_loops: 20,
            config: OracleConfig { samples: self.samples, ..OracleConfig::default() },
        }
    }
}

/// Product-family parameters within the family hypotheses: even `p >= 4`,
/// even `n <= 20`, even `k <= p - 2`, `n - p + k > p`, `n - p > 2`.
pub fn product_family_catalog() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for p in (4..=20).step_by(2) {
        for n in (p + 2..=20).step_by(2) {
            for k in (0..=p - 2).step_by(2) {
                let spec = FamilySpec::ProductSimplices { p, n, k };
                if spec.validate().is_ok() && spec.warnings().is_empty() {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Redundant-simplex parameters: odd `n` in `5..=33`, every valid even `k`.
pub fn redundant_family_catalog() -> Vec<FamilySpec> {
    (5..=33usize)
        .step_by(2)
        .flat_map(|n| redundant_simplex_range(n as u64).map(move |k| FamilySpec::RedundantSimplex { n, k: k as usize }))
        .collect()
}

fn divisors(x: u64) -> Vec<u64> {
    (1..=x).filter(|d| x % d == 0).collect()
}

fn product_family() -> Row {
    let catalog = product_family_catalog();
    let mut failures = Vec::new();
    for spec in &catalog {
        let FamilySpec::ProductSimplices { p, n, k } = *spec else { unreachable!() };
        let r = match analyze(&spec.polytope().expect("catalog is valid"), &AnalysisOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let s = &r.structure;
        let want = BigInt::from(p.gcd(&(n - p + k)));
        let std = spec.standard_quadrics().expect("catalog is valid");
        let ok = s.delzant
            && s.fano
            && s.fano_constant == Some(rat(1))
            && s.irredundant()
            && r.invariants.minimal_maslov == want
            && r.invariants.monotone
            && r.invariants.monotonicity_coeff == Some(rat_frac(1, 2))
            && std.equivalent(&r.quadrics);
        if !ok {
            failures.push(format!(
                "{spec}: delzant={} fano={} irredundant={} N_L={} monotone={}",
                s.delzant,
                s.fano,
                s.irredundant(),
                r.invariants.minimal_maslov,
                r.invariants.monotone
            ));
        }
    }
    Row::new(
        Suite::ProductFamily,
        "product of simplices P_k is Delzant, Fano (C = 1), irredundant and monotone with N_L = gcd(p, n-p+k), c = pi/2",
        &failures,
        format!("{} parameter triples, exact", catalog.len()),
    )
}

fn exist1() -> Row {
    let mut failures = Vec::new();
    let mut cases = 0;
    for p in [4u64, 6, 8, 10, 12] {
        for n in [2 * p, 2 * p + 4] {
            cases += 1;
            match realizable_exist1(p, n) {
                Ok(e) if e.realization.value_set() == even_divisors(p) && e.constructive_valid => {}
                Ok(e) => failures.push(format!("p={p} n={n}: realized {:?}", e.realization.value_set())),
                Err(err) => failures.push(format!("p={p} n={n}: {err}")),
            }
        }
    }
    Row::new(
        Suite::Exist1,
        "every even divisor of p is a realized minimal Maslov number for n >= 2p",
        &failures,
        format!("{cases} (p, n) pairs, exact set equality"),
    )
}

fn redundant_family() -> Row {
    let catalog = redundant_family_catalog();
    let mut failures = Vec::new();
    for spec in &catalog {
        let FamilySpec::RedundantSimplex { n, k } = *spec else { unreachable!() };
        let r = match analyze(&spec.polytope().expect("catalog is valid"), &AnalysisOptions::default()) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("{spec}: {e}"));
                continue;
            }
        };
        let std = spec.standard_quadrics().expect("catalog is valid");
        let inv = invariant_report(&std, &[n - 1], false).expect("standard system has full rank");
        let ok = r.structure.strict_redundant() == vec![n - 1]
            && r.structure.redundant.len() == 1
            && inv.loop_basis == vec![vec![rat(1), rat(0)], vec![rat(0), rat(2)]]
            && inv.loop_index == BigInt::from(2)
            && inv.maslov_values == vec![BigInt::from(n - 1), BigInt::from(2 * k + 2)]
            && r.invariants.minimal_maslov == BigInt::from((n - 1).gcd(&(2 * k + 2)))
            && std.equivalent(&r.quadrics);
        if !ok {
            failures.push(format!("{spec}: N_L={} maslov={:?}", r.invariants.minimal_maslov, inv.maslov_values));
        }
    }
    for (n, k, want) in [(13usize, 8usize, 6u64), (31, 24, 10), (31, 20, 6)] {
        let spec = FamilySpec::RedundantSimplex { n, k };
        let got = analyze(&spec.polytope().expect("valid"), &AnalysisOptions::default())
            .map(|r| r.invariants.minimal_maslov);
        if got != Ok(BigInt::from(want)) {
            failures.push(format!("{spec}: expected N_L = {want}, got {got:?}"));
        }
    }
    Row::new(
        Suite::RedundantFamily,
        "redundant simplex: one strictly redundant inequality, loop lattice {(1,0),(0,2)} of index 2, Maslov (n-1, 2k+2), N_L = gcd(n-1, 2k+2)",
        &failures,
        format!("{} parameter pairs plus spot values (13,8)->6, (31,24)->10, (31,20)->6, exact", catalog.len()),
    )
}

fn exist2() -> Row {
    let mut failures = Vec::new();
    for n in (5..=101u64).step_by(2) {
        match realizable_exist2(n) {
            Ok(r) if r.matches => {}
            Ok(r) => failures.push(format!("n={n}: realized {:?}, predicted {:?}", r.value_set(), r.predicted)),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    for (n, want) in [(13u64, vec![2u64, 6]), (31, vec![2, 6, 10])] {
        let got = realizable_exist2(n).map(|r| r.value_set()).unwrap_or_default();
        if got != want {
            failures.push(format!("n={n}: expected {want:?}, got {got:?}"));
        }
    }
    Row::new(
        Suite::Exist2,
        "redundant-simplex realization sets follow the mod-4 rule on n-1",
        &failures,
        "odd n in 5..=101, exact; n=13 -> {2,6}, n=31 -> {2,6,10}; the worked example's k = 2 for n = 13 lies outside (n-3)/2 < k <= n-2 and is not used".to_string(),
    )
}

/// Admissible even `N` up to `dim L + 2` outside `allowed`.
fn stray_evens(profile: &HomologyProfile, allowed: &[u64]) -> Result<Vec<u64>, String> {
    let adm = admissible_maslov(profile, profile.l_dim() as u64 + 2).map_err(|e| e.to_string())?;
    Ok(adm.admissible_even().into_iter().filter(|n| !allowed.contains(n)).collect())
}

fn sphere_product() -> Row {
    let mut failures = Vec::new();
    let mut cases = 0;
    for p in (4..=16usize).step_by(2) {
        for n in (p + 4..=20).step_by(2) {
            cases += 1;
            let profile = HomologyProfile::sphere_product(&[p - 1, n - p - 1], n, true).expect("valid profile");
            let mut allowed = divisors(p as u64);
            allowed.extend(divisors((n - p) as u64));
            match stray_evens(&profile, &allowed) {
                Ok(s) if s.is_empty() => {}
                Ok(s) => failures.push(format!("p={p} n={n}: admissible {s:?} outside divisors")),
                Err(e) => failures.push(format!("p={p} n={n}: {e}")),
            }
        }
    }
    let mut consistent = 0;
    for spec in product_family_catalog() {
        let FamilySpec::ProductSimplices { p, n, k } = spec else { unreachable!() };
        if n - p < 4 {
            continue;
        }
        let Ok(r) = analyze(&spec.polytope().expect("valid"), &AnalysisOptions::default()) else {
            failures.push(format!("{spec}: analysis failed"));
            continue;
        };
        let Some(topo) = r.topology else {
            failures.push(format!("{spec}: topology not recognized"));
            continue;
        };
        let mut want = vec![p - 1, n - p - 1];
        want.sort_unstable();
        if topo.sphere_factors != want {
            failures.push(format!("{spec}: topology {} does not match", topo.description));
            continue;
        }
        let profile = HomologyProfile::sphere_product(&topo.sphere_factors, n, topo.orientable).expect("valid");
        let nl = (p.gcd(&(n - p + k))) as u64;
        match run_engine(&profile, nl) {
            Ok((false, _)) => consistent += 1,
            Ok((true, w)) => failures.push(format!("{spec}: realized N_L = {nl} excluded (witness {w:?})")),
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    Row::new(
        Suite::SphereProduct,
        "S^{p-1} x S^{n-p-1} profiles admit only even N dividing p or n-p, and every realized gcd is admissible",
        &failures,
        format!("{cases} profiles, {consistent} realized values consistent"),
    )
}

fn sphere_power() -> Row {
    let mut failures = Vec::new();
    for p in [4usize, 6, 8, 12] {
        for m in [2usize, 3, 4] {
            let profile = HomologyProfile::sphere_power(p, m).expect("valid profile");
            match stray_evens(&profile, &divisors(p as u64)) {
                Ok(s) if s.is_empty() => {}
                Ok(s) => failures.push(format!("p={p} m={m}: admissible {s:?} outside divisors of p")),
                Err(e) => failures.push(format!("p={p} m={m}: {e}")),
            }
        }
    }
    Row::new(
        Suite::SpherePower,
        "(S^{p-1})^m profiles admit only even N dividing p",
        &failures,
        "p in {4,6,8,12}, m in {2,3,4}".to_string(),
    )
}

fn binomial() -> Row {
    let mut failing = Vec::new();
    for m in 4..=60u64 {
        match binomial_lemma(m) {
            Ok(b) if b.holds => {}
            Ok(_) => failing.push(m),
            Err(_) => failing.push(m),
        }
    }
    let failures: Vec<String> = if failing.is_empty() {
        Vec::new()
    } else {
        vec![format!(
            "C(m, floor(m/2)) > tails fails for m in {:?}",
            failing
        )]
    };
    Row::new(
        Suite::Binomial,
        "central binomial coefficient exceeds the tails beyond floor(m/2) +- 3",
        &failures,
        "4 <= m <= 60, exact".to_string(),
    )
}

fn connected_sum() -> Row {
    let mut failures = Vec::new();
    for p in [2usize, 4, 6, 8] {
        let profile = HomologyProfile::connected_sum_5(p).expect("valid profile");
        match stray_evens(&profile, &divisors(p as u64)) {
            Ok(s) if s.is_empty() => {}
            Ok(s) => failures.push(format!("p={p}: admissible {s:?} outside divisors of p")),
            Err(e) => failures.push(format!("p={p}: {e}")),
        }
    }
    Row::new(
        Suite::ConnectedSum,
        "#_5(S^{2p-1} x S^{3p-2}) profiles admit only even N dividing p",
        &failures,
        "p in {2,4,6,8}".to_string(),
    )
}

pub fn oracle_catalog() -> Vec<FamilySpec> {
    vec![
        FamilySpec::ProductSimplices { p: 4, n: 10, k: 0 },
        FamilySpec::ProductSimplices { p: 4, n: 10, k: 2 },
        FamilySpec::ProductSimplices { p: 6, n: 16, k: 4 },
        FamilySpec::RedundantSimplex { n: 5, k: 2 },
        FamilySpec::RedundantSimplex { n: 13, k: 8 },
    ]
}

fn oracle(opts: &VerifyOptions) -> Row {
    let o = opts.oracle();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checks = 0;
    for spec in oracle_catalog() {
        let q = polytope_to_quadrics(&spec.polytope().expect("valid")).expect("full rank");
        let strict = match spec {
            FamilySpec::RedundantSimplex { n, .. } => vec![n - 1],
            FamilySpec::ProductSimplices { .. } => vec![],
        };
        let d = deck_data(&q).expect("full rank");
        let r = invariant_report(&q, &strict, false).expect("full rank");
        match oracle_checks(&q, &d, &r, o.seed, o.random_loops, &o.config) {
            Ok(records) => {
                checks += records.len();
                for c in records.iter().filter(|c| !c.pass) {
                    failures.push(format!("{spec}: {} expected {} got {}", c.check, c.expected, c.actual));
                }
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    if elapsed >= 10.0 {
        failures.push(format!("runtime {elapsed:.1}s exceeds 10s"));
    }
    Row::new(
        Suite::Oracle,
        "doubled-loop areas equal pi <v, delta> and Maslov windings equal <2v, t>",
        &failures,
        format!("{checks} numerical checks in {elapsed:.2}s"),
    )
}

fn soundness(opts: &VerifyOptions) -> Row {
    let mut failures = Vec::new();
    let profiles = random_profiles(200, opts.seed, 10, 12);
    let mut exclusions = 0;
    for p in &profiles {
        for n in 2..=p.l_dim() as u64 + 2 {
            let Ok((excluded, _)) = run_engine(p, n) else { continue };
            if excluded {
                exclusions += 1;
                if vanishing_assignment_exists(p.dims(), p.l_dim(), n) {
                    failures.push(format!("N={n} excluded for {:?} (L_dim {})", p.dims(), p.l_dim()));
                }
            }
        }
    }
    Row::new(
        Suite::Soundness,
        "the counting engine never excludes an N that admits a vanishing differential-rank assignment",
        &failures,
        format!("200 random profiles, {exclusions} exclusions confirmed by exhaustive search"),
    )
}

fn discrepancy(opts: &VerifyOptions) -> Vec<Row> {
    let o = opts.oracle();
    let mut rows = Vec::new();
    let mut consistent = true;
    let mut cases = 0;
    let mut oracle_note = Vec::new();
    let mut measured = None;
    for spec in redundant_family_catalog() {
        let FamilySpec::RedundantSimplex { n, k } = spec else { unreachable!() };
        cases += 1;
        let claims = match family_claims(&spec) {
            Ok(c) => c,
            Err(e) => {
                rows.push(Row::new(Suite::Discrepancy, "published redundant-simplex values", &[format!("{spec}: {e}")], String::new()));
                continue;
            }
        };
        for c in claims.iter().filter(|c| !c.agrees && c.claim != "area of e2") {
            rows.push(Row::new(
                Suite::Discrepancy,
                &format!("{spec}: {}", c.claim),
                &[format!("published {} computed {}", c.published_value, c.computed_value)],
                String::new(),
            ));
        }
        let Some(e2) = claims.iter().find(|c| c.claim == "area of e2") else {
            consistent = false;
            continue;
        };
        consistent &= !e2.agrees && e2.computed_value == format!("{}*pi", 2 * k + 2);
        if matches!((n, k), (5, 2) | (13, 8)) {
            let d = discrepancies(&spec, &claims, &o);
            let value = d.iter().find(|d| d.claim == "area of e2").and_then(|d| d.oracle_value_over_pi);
            match value {
                Some(v) => {
                    let exact = (2 * k + 2) as f64;
                    consistent &= (v - exact).abs() / (1.0 + exact) <= o.config.area_rel_tol;
                    oracle_note.push(format!("({n},{k}) measured {v:.9}*pi"));
                    if (n, k) == (13, 8) {
                        measured = Some(v);
                    }
                }
                None => consistent = false,
            }
        }
    }
    let detail = format!(
        "published pi(k+1), computed pi(2k+2) in all {cases} cases; oracle {}; with the computed value the family is not monotone (ratios pi/2 on e1, pi on e2)",
        oracle_note.join(", ")
    );
    rows.insert(
        0,
        Row {
            suite: Suite::Discrepancy,
            claim: "area of the loop e2 in the redundant-simplex family".to_string(),
            status: if consistent { Status::Flagged } else { Status::Fail },
            detail,
            oracle_value_over_pi: measured,
        },
    );
    rows
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Vec<Row> {
    match suite {
        Suite::ProductFamily => vec![product_family()],
        Suite::Exist1 => vec![exist1()],
        Suite::RedundantFamily => vec![redundant_family()],
        Suite::Exist2 => vec![exist2()],
        Suite::SphereProduct => vec![sphere_product()],
        Suite::SpherePower => vec![sphere_power()],
        Suite::Binomial => vec![binomial()],
        Suite::ConnectedSum => vec![connected_sum()],
        Suite::Oracle => vec![oracle(opts)],
        Suite::Soundness => vec![soundness(opts)],
        Suite::Discrepancy => discrepancy(opts),
    }
}

pub fn run(only: Option<Suite>, opts: &VerifyOptions) -> Vec<Row> {
    match only {
        Some(s) => run_suite(s, opts),
        None => Suite::ALL.iter().flat_map(|&s| run_suite(s, opts)).collect(),
    }
}

pub fn hard_failure(rows: &[Row]) -> bool {
    rows.iter().any(|r| r.status == Status::Fail)
}

pub fn table(rows: &[Row]) -> String {
    let mut out = String::new();
    for r in rows {
        out.push_str(&format!("{:<8} {:<17} {}\n         {}\n", r.status, r.suite.name(), r.claim, r.detail));
    }
    out
}
