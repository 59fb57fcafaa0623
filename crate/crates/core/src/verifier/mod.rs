//! Numerical verification of the catalogued inequalities.
//!
//! A claim `lhs < rhs` is checked by sampling the margin `rhs - lhs` on a
//! uniform grid, refining the smallest-margin cells, and probing both
//! endpoints. Samples are evaluated in binary64 and escalated to
//! double-double whenever the binary64 margin is within rounding noise, so a
//! reported violation is always confirmed at the higher precision.
//!
//! Margins are normalized by the operand magnitude and by `d^k` at each
//! endpoint, where `d` is the distance to the endpoint and `k` the estimated
//! order of contact there. A sharp bound that touches `sin x / x` at an
//! endpoint therefore keeps a normalized margin bounded away from zero.

mod catalogue;
mod expr;
mod monotone;
mod scan;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::PrecisionConfig;
use crate::error::{domain, Result};

pub use catalogue::{builtin_suite, monotone_suite, sharpness_suite, SharpParameters};
pub use expr::Expr;
pub use monotone::{verify_monotone, Direction, MonotoneCase, MonotoneTarget};
pub use scan::{find_violation, verify_case, DEFAULT_GRID, MIN_GRID, MIN_MONOTONE_GRID};

pub const DEFAULT_ENDPOINT_EPSILON: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
    pub endpoint_epsilon: f64,
}

impl IntervalSpec {
    pub fn open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: true, hi_open: true, endpoint_epsilon: DEFAULT_ENDPOINT_EPSILON }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: false, hi_open: false, endpoint_epsilon: DEFAULT_ENDPOINT_EPSILON }
    }

    /// `(lo, hi]`
    pub fn left_open(lo: f64, hi: f64) -> Self {
        Self { lo, hi, lo_open: true, hi_open: false, endpoint_epsilon: DEFAULT_ENDPOINT_EPSILON }
    }

    pub fn with_epsilon(mut self, eps: f64) -> Self {
        self.endpoint_epsilon = eps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(domain("IntervalSpec", format!("need lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        let eps = self.endpoint_epsilon;
        if !(eps > 0.0 && 4.0 * eps < self.hi - self.lo) {
            return Err(domain("IntervalSpec", format!("endpoint_epsilon = {eps} too large")));
        }
        Ok(())
    }

    /// The closed interval the uniform grid covers.
    pub fn scan_bounds(&self) -> (f64, f64) {
        let eps = self.endpoint_epsilon;
        let a = if self.lo_open { self.lo + eps } else { self.lo };
        let b = if self.hi_open { self.hi - eps } else { self.hi };
        (a, b)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Less,
    LessEq,
    /// Both sides agree to within 8 ulps of the larger term magnitude.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Holds,
    Fails,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Holds => "holds",
            Expected::Fails => "fails",
        }
    }
}

/// One verifiable claim.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityCase {
    pub id: String,
    /// Human-readable statement of the claim.
    pub claim: String,
    pub lhs: Expr,
    pub relation: Relation,
    pub rhs: Expr,
    pub domain: IntervalSpec,
    pub expected: Expected,
    /// Where to look for a counterexample when `expected` is `Fails`.
    pub witness_region: Option<IntervalSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Violated,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A point where the relation fails, and the (negative) margin there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub x: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Smallest normalized margin seen; for identities, the slack in ulps.
    pub min_margin: f64,
    pub argmin: f64,
    pub evaluations: u64,
    pub note: Option<String>,
}

impl Verdict {
    pub fn matches(&self, expected: Expected) -> bool {
        matches!((expected, self.status), (Expected::Holds, Status::Verified) | (Expected::Fails, Status::Violated))
    }

    pub(crate) fn from_error(err: &crate::error::Error) -> Self {
        Self {
            status: Status::Inconclusive,
            witness: None,
            min_margin: 0.0,
            argmin: 0.0,
            evaluations: 0,
            note: Some(err.to_string()),
        }
    }
}

/// Verifies every case in parallel; results keep the input order.
pub fn run_cases(cases: &[InequalityCase], grid: usize, cfg: &PrecisionConfig) -> Vec<Verdict> {
    cases.par_iter().map(|c| verify_case(c, grid, cfg).unwrap_or_else(|e| Verdict::from_error(&e))).collect()
}

pub fn run_monotone_cases(cases: &[MonotoneCase], grid: usize, cfg: &PrecisionConfig) -> Vec<Verdict> {
    cases
        .par_iter()
        .map(|c| {
            verify_monotone(&c.target, &c.domain, c.direction, grid, cfg).unwrap_or_else(|e| Verdict::from_error(&e))
        })
        .collect()
}
