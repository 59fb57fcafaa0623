use serde::{Deserialize, Serialize};

use crate::bounds::Kernel;
use crate::config::{Mode, PrecisionConfig};
use crate::dd::DoubleDouble;
use crate::error::{self, Result};
use crate::real::{lit, Real};
use crate::ulp::ulp;

use super::scan::{
    contact_order, contact_weight, Sign, CONTACT_PROBE, MIN_MONOTONE_GRID, ORACLE_NOISE_ULPS, VIOLATION_ULPS,
    WORKING_NOISE_ULPS,
};
use super::{Expected, IntervalSpec, Status, Verdict, Witness};

const REFINE_CELLS: usize = 8;
const REFINE_DEPTH: u32 = 12;
// forward-difference step relative to the probe distance
const SLOPE_STEP: f64 = 1.0 / 64.0;

/// A one-variable function whose monotonicity is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MonotoneTarget {
    /// `x -> f_p(x)`
    LogDifference { p: f64 },
    /// `x -> F_p(x)`
    LogRatio { p: f64 },
    /// `p -> f_p(pi/2)`
    LogDifferenceAtHalfPi,
    /// `p -> (cos px)^(1/p)` at fixed `x`
    CosPowerInExponent { x: f64 },
}

impl MonotoneTarget {
    pub fn eval<R: Real>(&self, kernel: &Kernel, t: R) -> Result<R> {
        match *self {
            MonotoneTarget::LogDifference { p } => kernel.f_p(lit(p), t),
            MonotoneTarget::LogRatio { p } => kernel.f_ratio(lit(p), t),
            MonotoneTarget::LogDifferenceAtHalfPi => kernel.f_p(t, R::frac_pi_2()),
            MonotoneTarget::CosPowerInExponent { x } => kernel.cos_power(t, lit(x)),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            MonotoneTarget::LogDifference { p } => format!("x -> f_{p}(x)"),
            MonotoneTarget::LogRatio { p } => format!("x -> F_{p}(x)"),
            MonotoneTarget::LogDifferenceAtHalfPi => "p -> f_p(pi/2)".into(),
            MonotoneTarget::CosPowerInExponent { x } => format!("p -> cos(p*{x})^(1/p)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCase {
    pub id: String,
    pub claim: String,
    pub target: MonotoneTarget,
    pub domain: IntervalSpec,
    pub direction: Direction,
    pub expected: Expected,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    lo: f64,
    hi: f64,
    slope: f64,
    sign: Sign,
}

struct Checker<'a> {
    target: &'a MonotoneTarget,
    domain: &'a IntervalSpec,
    kernel: Kernel,
    oracle: bool,
    dir: f64,
    evaluations: u64,
}

impl Checker<'_> {
    fn eval_dd(&mut self, t: DoubleDouble) -> Result<DoubleDouble> {
        self.evaluations += 1;
        self.target.eval(&self.kernel, t)
    }

    /// Oriented difference quotient over `[lo, hi]`, escalated to
    /// double-double when the binary64 difference is within noise.
    fn cell(&mut self, lo: f64, hi: f64) -> Result<Cell> {
        if !self.oracle {
            self.evaluations += 2;
            let a: f64 = self.target.eval(&self.kernel, lo)?;
            let b: f64 = self.target.eval(&self.kernel, hi)?;
            let delta = self.dir * (b - a);
            if delta > WORKING_NOISE_ULPS * f64::UNIT_ROUNDOFF * (a.abs() + b.abs()) {
                return Ok(Cell { lo, hi, slope: delta / (hi - lo), sign: Sign::Positive });
            }
        }
        let (lo_d, hi_d) = (DoubleDouble::from_f64(lo), DoubleDouble::from_f64(hi));
        self.cell_dd(lo_d, hi_d)
    }

    fn cell_dd(&mut self, lo: DoubleDouble, hi: DoubleDouble) -> Result<Cell> {
        let a = self.eval_dd(lo)?;
        let b = self.eval_dd(hi)?;
        let delta = (b - a).mul_f64(self.dir);
        let (af, bf) = (a.to_f64().abs(), b.to_f64().abs());
        let noise = ORACLE_NOISE_ULPS * DoubleDouble::UNIT_ROUNDOFF * (af + bf);
        let d = delta.to_f64();
        let sign = if d > noise {
            Sign::Positive
        } else if d < -noise.max(VIOLATION_ULPS * ulp(af.max(bf))) {
            Sign::Negative
        } else {
            Sign::Unresolved
        };
        Ok(Cell { lo: lo.to_f64(), hi: hi.to_f64(), slope: d / (hi - lo).to_f64(), sign })
    }

    /// Contact order of the slope at one endpoint, from forward differences
    /// at two distances a factor 2 apart.
    fn slope_order(&mut self, at_lo: bool) -> Result<(u32, bool)> {
        let d1 = CONTACT_PROBE.min(self.domain.width() / 8.0);
        let mut probes = [(0.0, Sign::Unresolved); 2];
        for (i, d) in [d1, d1 / 2.0].into_iter().enumerate() {
            let (x, step) = if at_lo {
                (DoubleDouble::from_f64(self.domain.lo) + DoubleDouble::from_f64(d), d * SLOPE_STEP)
            } else {
                (DoubleDouble::from_f64(self.domain.hi) - DoubleDouble::from_f64(d), -d * SLOPE_STEP)
            };
            let other = x + DoubleDouble::from_f64(step);
            let c = if step > 0.0 { self.cell_dd(x, other)? } else { self.cell_dd(other, x)? };
            probes[i] = (c.slope, c.sign);
        }
        let ok = probes.iter().all(|p| p.1 == Sign::Positive);
        Ok((contact_order(probes[0], probes[1]), ok))
    }
}

/// Checks the sign of consecutive differences of `target` on a uniform grid,
/// with refinement of the flattest cells.
pub fn verify_monotone(
    target: &MonotoneTarget,
    domain: &IntervalSpec,
    direction: Direction,
    grid: usize,
    cfg: &PrecisionConfig,
) -> Result<Verdict> {
    if grid < MIN_MONOTONE_GRID {
        return Err(error::domain("verify_monotone", format!("grid = {grid} below {MIN_MONOTONE_GRID}")));
    }
    cfg.validate()?;
    domain.validate()?;
    let mut ck = Checker {
        target,
        domain,
        kernel: Kernel::from_config(cfg),
        oracle: cfg.mode == Mode::Oracle,
        dir: direction.sign(),
        evaluations: 0,
    };
    let (order_lo, lo_ok) = ck.slope_order(true)?;
    let (order_hi, hi_ok) = ck.slope_order(false)?;

    let (a, b) = domain.scan_bounds();
    let step = (b - a) / (grid - 1) as f64;
    let point = |i: usize| if i + 1 == grid { b } else { a + step * i as f64 };
    let mut cells = Vec::with_capacity(grid + REFINE_CELLS * REFINE_DEPTH as usize * 2);
    for i in 0..grid - 1 {
        cells.push(ck.cell(point(i), point(i + 1))?);
    }
    // typical slope magnitude, from the grid ends
    let kernel = ck.kernel;
    let span: f64 = (target.eval(&kernel, b)? - target.eval(&kernel, a)?).abs();
    let mean_slope = if span > 0.0 { span / (b - a) } else { 1.0 };
    let normalized = |c: &Cell| {
        let mid = 0.5 * (c.lo + c.hi);
        let w = contact_weight(mid - domain.lo, domain.hi - mid, order_lo, order_hi);
        c.slope / (mean_slope * w)
    };

    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by(|&i, &j| normalized(&cells[i]).total_cmp(&normalized(&cells[j])).then(i.cmp(&j)));
    let worst: Vec<Cell> = order.iter().take(REFINE_CELLS).map(|&i| cells[i]).collect();
    for start in worst {
        let mut cur = start;
        for _ in 0..REFINE_DEPTH {
            let mid = 0.5 * (cur.lo + cur.hi);
            if !(mid > cur.lo && mid < cur.hi) {
                break;
            }
            let left = ck.cell(cur.lo, mid)?;
            let right = ck.cell(mid, cur.hi)?;
            cells.push(left);
            cells.push(right);
            cur = if normalized(&left) <= normalized(&right) { left } else { right };
        }
    }

    let evaluations = ck.evaluations;
    let ranked = |pred: &dyn Fn(&Cell) -> bool| {
        cells
            .iter()
            .filter(|c| pred(c))
            .map(|c| (normalized(c), c))
            .filter(|(n, _)| !n.is_nan())
            .min_by(|p, q| p.0.total_cmp(&q.0))
            .map(|(n, c)| (n, *c))
    };
    if let Some((n, c)) = ranked(&|c| c.sign == Sign::Negative) {
        let x = 0.5 * (c.lo + c.hi);
        return Ok(Verdict {
            status: Status::Violated,
            witness: Some(Witness { x, gap: c.slope * (c.hi - c.lo) }),
            min_margin: n,
            argmin: x,
            evaluations,
            note: None,
        });
    }
    let (min_margin, argmin) = ranked(&|_| true).map(|(n, c)| (n, 0.5 * (c.lo + c.hi))).unwrap_or((0.0, a));
    let floor = cfg.margin_floor;
    let note = if cells.iter().any(|c| c.sign == Sign::Unresolved) {
        Some("difference within rounding noise at double-double precision".to_string())
    } else if !(lo_ok && hi_ok) {
        Some("endpoint slope probes did not resolve the claimed sign".to_string())
    } else if !(min_margin > floor) {
        Some(format!("normalized slope {min_margin:e} not above floor {floor:e}"))
    } else {
        None
    };
    Ok(Verdict {
        status: if note.is_none() { Status::Verified } else { Status::Inconclusive },
        witness: None,
        min_margin,
        argmin,
        evaluations,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn cos_power_decreases_in_exponent() {
        let v = verify_monotone(
            &MonotoneTarget::CosPowerInExponent { x: 1.0 },
            &IntervalSpec::closed(0.01, 1.0),
            Direction::Decreasing,
            256,
            &PrecisionConfig::default(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Verified, "{v:?}");
    }

    #[test]
    fn wrong_direction_is_violated() {
        let v = verify_monotone(
            &MonotoneTarget::LogDifference { p: 0.5 },
            &IntervalSpec::open(0.0, FRAC_PI_2),
            Direction::Decreasing,
            256,
            &PrecisionConfig::default(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Violated);
    }

    #[test]
    fn small_grid_rejected() {
        let r = verify_monotone(
            &MonotoneTarget::LogDifferenceAtHalfPi,
            &IntervalSpec::closed(0.05, 0.95),
            Direction::Increasing,
            64,
            &PrecisionConfig::default(),
        );
        assert!(r.is_err());
    }
}
