//! The verification report: one row per checked claim, in catalogue order.
//!
//! The document is deterministic for fixed inputs. `timing_ms` is always 0 so
//! that repeated runs serialize to identical bytes; callers that want wall
//! time measure it themselves.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Mode, PrecisionConfig};
use crate::constants::{catalogue, oracle_catalogue, ConstantCatalogue};
use crate::error::{domain, Result};
use crate::means::{a4_margin, a5_margin};
use crate::quadrature::{a1_enclosure, application_enclosures, closed_form_integrals, EnclosureCheck};
use crate::real::Real;
use crate::verifier::{
    builtin_suite, monotone_suite, run_cases, run_monotone_cases, sharpness_suite, Expected, Status, Verdict, Witness,
    MIN_GRID,
};

/// Grid used for monotonicity rows; never below the requested grid.
pub const MONOTONE_REPORT_GRID: usize = 4096;
/// Relative residual a closed-form integral must reach.
pub const INTEGRAL_TOLERANCE: f64 = 1e-10;
/// `|a4_margin(1)|` must not exceed this.
pub const DIAGONAL_TOLERANCE: f64 = 1e-12;
pub const MEAN_GRID_POINTS: usize = 200;
pub const RANDOM_PAIRS: usize = 100;
pub const RANDOM_PAIR_SEED: u64 = 0x5eed_cafe;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    /// Inequalities, identities, designed failures and monotonicity claims.
    Core,
    /// Integral enclosures, closed-form integrals and mean inequalities.
    Applications,
    /// Perturbed sharp constants.
    Sharpness,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Core => "core",
            Suite::Applications => "applications",
            Suite::Sharpness => "sharpness",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Inequality,
    Monotone,
    Application,
    /// Perturbed sharp constants, expected to fail.
    Sharpness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub id: String,
    pub claim: String,
    pub kind: RowKind,
    pub expected: Expected,
    pub status: Status,
    pub matched: bool,
    pub min_margin: f64,
    pub argmin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub evaluations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CaseRow {
    fn from_verdict(id: &str, claim: &str, kind: RowKind, expected: Expected, v: Verdict) -> Self {
        CaseRow {
            id: id.to_string(),
            claim: claim.to_string(),
            kind,
            expected,
            matched: v.matches(expected),
            status: v.status,
            min_margin: v.min_margin,
            argmin: v.argmin,
            witness: v.witness,
            evaluations: v.evaluations,
            note: v.note,
        }
    }

    /// A pass/fail application check; `holds` selects verified or violated.
    fn check(id: &str, claim: String, holds: bool, min_margin: f64, argmin: f64, evaluations: u64) -> Self {
        let status = if holds { Status::Verified } else { Status::Violated };
        CaseRow {
            id: id.to_string(),
            claim,
            kind: RowKind::Application,
            expected: Expected::Holds,
            status,
            matched: holds,
            min_margin,
            argmin,
            witness: None,
            evaluations,
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub precision_mode: String,
    pub suite: Suite,
    pub grid: usize,
    pub constants: ConstantCatalogue,
    pub cases: Vec<CaseRow>,
    pub timing_ms: u64,
    /// Every row matched its expected outcome.
    pub all_expected: bool,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are finite")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| domain("ReportDocument", e.to_string()))
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let n = |s: Status| self.cases.iter().filter(|c| c.status == s).count();
        (n(Status::Verified), n(Status::Violated), n(Status::Inconclusive))
    }
}

/// Constants in the requested mode, rounded to binary64.
pub fn constants_snapshot(cfg: &PrecisionConfig) -> Result<ConstantCatalogue> {
    let cat = match cfg.mode {
        Mode::Working => catalogue(),
        Mode::Oracle => oracle_catalogue()?.map(|v| v.to_f64()),
    };
    if cat.p0.is_nan() {
        return Err(domain("constants_snapshot", "p0 solve failed"));
    }
    Ok(cat)
}

pub fn build_report(suite: Suite, grid: usize, tol: f64, cfg: &PrecisionConfig) -> Result<ReportDocument> {
    if grid < MIN_GRID {
        return Err(domain("build_report", format!("grid = {grid} below {MIN_GRID}")));
    }
    if !(tol > 0.0 && tol < 1e-6) {
        return Err(domain("build_report", format!("tol = {tol} not in (0, 1e-6)")));
    }
    cfg.validate()?;
    let mut cases = Vec::new();
    if matches!(suite, Suite::All | Suite::Core) {
        cases.extend(inequality_rows(&builtin_suite(), RowKind::Inequality, grid, cfg));
        let monotone = monotone_suite();
        let verdicts = run_monotone_cases(&monotone, grid.max(MONOTONE_REPORT_GRID), cfg);
        for (c, v) in monotone.iter().zip(verdicts) {
            cases.push(CaseRow::from_verdict(&c.id, &c.claim, RowKind::Monotone, c.expected, v));
        }
    }
    if matches!(suite, Suite::All | Suite::Applications) {
        cases.extend(application_rows(tol)?);
    }
    if matches!(suite, Suite::All | Suite::Sharpness) {
        cases.extend(inequality_rows(&sharpness_suite(), RowKind::Sharpness, grid, cfg));
    }
    debug_assert!(cases.iter().all(|c| c.min_margin.is_finite() && c.argmin.is_finite()));
    Ok(ReportDocument {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        precision_mode: cfg.mode.as_str().to_string(),
        suite,
        grid,
        constants: constants_snapshot(cfg)?,
        all_expected: cases.iter().all(|c| c.matched),
        cases,
        timing_ms: 0,
    })
}

fn inequality_rows(
    cases: &[crate::verifier::InequalityCase],
    kind: RowKind,
    grid: usize,
    cfg: &PrecisionConfig,
) -> Vec<CaseRow> {
    let verdicts = run_cases(cases, grid, cfg);
    cases.iter().zip(verdicts).map(|(c, v)| CaseRow::from_verdict(&c.id, &c.claim, kind, c.expected, v)).collect()
}

fn enclosure_row(id: &str, what: &str, c: &EnclosureCheck) -> CaseRow {
    CaseRow::check(
        id,
        format!("{what} = {} lies in ({}, {})", c.value, c.lower, c.upper),
        c.holds,
        c.min_margin() / c.value.abs(),
        c.value,
        0,
    )
}

/// Log-uniform points on `[1e-3, 1e3]`, ends included.
pub fn mean_log_grid() -> Vec<f64> {
    let n = MEAN_GRID_POINTS;
    (0..n).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / (n - 1) as f64)).collect()
}

/// Seeded pairs `(a, b)` with `a, b` log-uniform on `[1e-3, 1e3]` and `a != b`.
pub fn random_mean_pairs() -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_PAIR_SEED);
    let mut pairs = Vec::with_capacity(RANDOM_PAIRS);
    while pairs.len() < RANDOM_PAIRS {
        let a = 10f64.powf(rng.random_range(-3.0..3.0));
        let b = 10f64.powf(rng.random_range(-3.0..3.0));
        if a != b {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Rows for the integral applications and the two mean inequalities.
pub fn application_rows(tol: f64) -> Result<Vec<CaseRow>> {
    let mut rows = Vec::new();
    for (tag, p) in [("0.1", 0.1), ("0.2", 0.2), ("1/3", 1.0 / 3.0), ("0.5", 0.5), ("0.75", 0.75), ("1", 1.0)] {
        let e = a1_enclosure(p, tol)?;
        let gap_lo = if e.lower.is_finite() { (e.integral - e.lower).abs() } else { f64::MAX };
        let margin = gap_lo.min((e.upper - e.integral).abs()) / e.integral;
        let order = match e.ordering {
            crate::quadrature::Ordering::Direct => "between lower and upper",
            crate::quadrature::Ordering::Reversed => "between upper and lower (reversed)",
        };
        rows.push(CaseRow::check(
            &format!("sinc-power-integral-p{tag}"),
            format!("int_0^(pi/2) sinc(x)^{tag} dx = {} lies {order}", e.integral),
            e.holds && e.quadrature.converged,
            margin,
            p,
            e.quadrature.evaluations,
        ));
    }

    let app = application_enclosures()?;
    rows.push(enclosure_row("sine-integral-cos-power-enclosure", "Si(pi/2)", &app.a2));
    rows.push(enclosure_row("sine-integral-half-angle-enclosure", "Si(pi/2)", &app.qi));
    rows.push(enclosure_row("sine-integral-polynomial-enclosure", "Si(pi/2)", &app.wu));
    let tighter = (app.a2.lower - app.wu.lower).min(app.wu.upper - app.a2.upper);
    rows.push(CaseRow::check(
        "sine-integral-enclosure-tightening",
        "cos-power enclosure of Si(pi/2) lies strictly inside the polynomial one".into(),
        app.tightens_wu,
        tighter,
        app.si_half_pi,
        0,
    ));
    rows.push(enclosure_row("catalan-cubic-enclosure", "Catalan K", &app.a31));
    rows.push(enclosure_row("catalan-chain-enclosure", "Catalan K", &app.a32));

    for check in closed_form_integrals(tol)? {
        let ok = check.relative_residual <= INTEGRAL_TOLERANCE && check.quadrature.converged;
        rows.push(CaseRow::check(
            &format!("closed-form-{}", check.id.replace('_', "-")),
            format!("{} = {} (relative residual <= {INTEGRAL_TOLERANCE:e})", check.description, check.closed_form),
            ok,
            INTEGRAL_TOLERANCE - check.relative_residual,
            check.quadrature.value,
            check.quadrature.evaluations,
        ));
    }

    let grid = mean_log_grid();
    let mut worst = (f64::INFINITY, 1.0);
    for &t in &grid {
        // homogeneous of degree 3 in (t, 1); normalize by the leading term
        let m = a4_margin(t)? / (3.0 * t * t * t).max(1.0);
        if m < worst.0 {
            worst = (m, t);
        }
    }
    rows.push(CaseRow::check(
        "schwab-borchardt-cubic-bound-log-grid",
        format!("3t^3 - (4t^2 - 1) SB(t, 1) > 0 at {MEAN_GRID_POINTS} log-spaced t in [1e-3, 1e3]"),
        worst.0 > 0.0,
        worst.0,
        worst.1,
        grid.len() as u64,
    ));
    let at_one = a4_margin(1.0)?;
    rows.push(CaseRow::check(
        "schwab-borchardt-cubic-bound-equality",
        format!("3t^3 - (4t^2 - 1) SB(t, 1) = 0 at t = 1 within {DIAGONAL_TOLERANCE:e}"),
        at_one.abs() <= DIAGONAL_TOLERANCE,
        DIAGONAL_TOLERANCE - at_one.abs(),
        1.0,
        1,
    ));

    let pairs = random_mean_pairs();
    let mut worst = (f64::INFINITY, 1.0);
    for &(a, b) in &pairs {
        let m = a5_margin(a, b)? / (0.5 * (a + b));
        if m < worst.0 {
            worst = (m, a / b);
        }
    }
    rows.push(CaseRow::check(
        "seiffert-bound-random-pairs",
        format!(
            "P(a, b) < (3/4)(A + G)^2 / (2G + A) on {RANDOM_PAIRS} seeded pairs (min relative margin; argmin is a/b)"
        ),
        worst.0 > 0.0,
        worst.0,
        worst.1,
        pairs.len() as u64,
    ));
    let tight = a5_margin(2.0, 1.0)?;
    rows.push(CaseRow::check(
        "seiffert-bound-pair-2-1",
        "P(2, 1) < (3/4)(A + G)^2 / (2G + A)".into(),
        tight > 0.0,
        tight,
        2.0,
        1,
    ));
    Ok(rows)
}
