use crate::bounds::Kernel;
use crate::config::{Mode, PrecisionConfig};
use crate::dd::DoubleDouble;
use crate::error::{domain, Result};
use crate::real::Real;
use crate::ulp::ulp;

use super::{Expected, InequalityCase, IntervalSpec, Relation, Status, Verdict, Witness};

pub const DEFAULT_GRID: usize = 1024;
pub const MIN_GRID: usize = 64;
pub const MIN_MONOTONE_GRID: usize = 128;

pub(crate) const WORKING_NOISE_ULPS: f64 = 32.0;
pub(crate) const ORACLE_NOISE_ULPS: f64 = 256.0;
pub(crate) const VIOLATION_ULPS: f64 = 4.0;
pub(crate) const MAX_CONTACT_ORDER: u32 = 6;
pub(crate) const CONTACT_PROBE: f64 = 1.0 / 4096.0;
const IDENTITY_ULPS: f64 = 8.0;
const REFINE_CELLS: usize = 8;
const REFINE_DEPTH: u32 = 20;
const ENDPOINT_HALVINGS: i32 = 20;
const SEARCH_GRID: usize = 2048;
const GOLDEN_STEPS: u32 = 80;
const MIN_SCALE: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sign {
    Positive,
    Negative,
    Unresolved,
}

/// Classifies a double-double margin against its noise floor and the
/// violation threshold of 4 ulps of the larger operand.
pub(crate) fn classify_dd(margin: DoubleDouble, noise_scale: f64, operand: f64) -> Sign {
    let noise = ORACLE_NOISE_ULPS * DoubleDouble::UNIT_ROUNDOFF * noise_scale;
    let m = margin.to_f64();
    if m > noise {
        Sign::Positive
    } else if m < -noise.max(VIOLATION_ULPS * ulp(operand)) {
        Sign::Negative
    } else {
        Sign::Unresolved
    }
}

/// `round(log2(near / nearer))` clamped to `[0, MAX_CONTACT_ORDER]`, or 0
/// when the two probes do not share a resolved sign.
pub(crate) fn contact_order(near: (f64, Sign), nearer: (f64, Sign)) -> u32 {
    if near.1 != nearer.1 || near.1 == Sign::Unresolved {
        return 0;
    }
    let ratio = near.0 / nearer.0;
    if !(ratio > 0.0) || !ratio.is_finite() {
        return 0;
    }
    ratio.log2().round().clamp(0.0, MAX_CONTACT_ORDER as f64) as u32
}

pub(crate) fn contact_weight(d_lo: f64, d_hi: f64, order_lo: u32, order_hi: u32) -> f64 {
    d_lo.min(1.0).powi(order_lo as i32) * d_hi.min(1.0).powi(order_hi as i32)
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    x: f64,
    d_lo: f64,
    d_hi: f64,
    margin: f64,
    operand: f64,
    sign: Sign,
}

impl Sample {
    fn normalized(&self, order_lo: u32, order_hi: u32) -> f64 {
        let w = contact_weight(self.d_lo, self.d_hi, order_lo, order_hi);
        self.margin / (self.operand.max(MIN_SCALE) * w)
    }
}

struct Scanner<'a> {
    case: &'a InequalityCase,
    domain: IntervalSpec,
    kernel: Kernel,
    oracle: bool,
    evaluations: u64,
    order_lo: u32,
    order_hi: u32,
    samples: Vec<Sample>,
}

impl<'a> Scanner<'a> {
    fn new(case: &'a InequalityCase, domain: IntervalSpec, cfg: &PrecisionConfig) -> Self {
        Self {
            case,
            domain,
            kernel: Kernel::from_config(cfg),
            oracle: cfg.mode == Mode::Oracle,
            evaluations: 0,
            order_lo: 0,
            order_hi: 0,
            samples: Vec::new(),
        }
    }

    fn normalized(&self, s: &Sample) -> f64 {
        s.normalized(self.order_lo, self.order_hi)
    }

    // (margin, sign, larger operand)
    fn margin_dd(&mut self, x: DoubleDouble) -> Result<(f64, Sign, f64)> {
        self.evaluations += 1;
        let l = self.case.lhs.eval(&self.kernel, x)?;
        let r = self.case.rhs.eval(&self.kernel, x)?;
        let (lf, rf) = (l.to_f64().abs(), r.to_f64().abs());
        let m = r - l;
        Ok((m.to_f64(), classify_dd(m, lf + rf, lf.max(rf)), lf.max(rf)))
    }

    fn margin_f64(&mut self, x: f64) -> Result<(f64, Sign, f64)> {
        if self.oracle {
            return self.margin_dd(DoubleDouble::from_f64(x));
        }
        self.evaluations += 1;
        let l: f64 = self.case.lhs.eval(&self.kernel, x)?;
        let r: f64 = self.case.rhs.eval(&self.kernel, x)?;
        let m = r - l;
        if m > WORKING_NOISE_ULPS * f64::UNIT_ROUNDOFF * (l.abs() + r.abs()) {
            return Ok((m, Sign::Positive, l.abs().max(r.abs())));
        }
        self.margin_dd(DoubleDouble::from_f64(x))
    }

    fn sample(&mut self, x: f64) -> Result<Sample> {
        let (margin, sign, operand) = self.margin_f64(x)?;
        let s = Sample { x, d_lo: x - self.domain.lo, d_hi: self.domain.hi - x, margin, operand, sign };
        self.samples.push(s);
        Ok(s)
    }

    /// Double-double sample at distance `d` inside one endpoint.
    fn probe(&mut self, d: f64, at_lo: bool) -> Result<Sample> {
        let x = if at_lo {
            DoubleDouble::from_f64(self.domain.lo) + DoubleDouble::from_f64(d)
        } else {
            DoubleDouble::from_f64(self.domain.hi) - DoubleDouble::from_f64(d)
        };
        let (margin, sign, operand) = self.margin_dd(x)?;
        let rest = self.domain.width() - d;
        let (d_lo, d_hi) = if at_lo { (d, rest) } else { (rest, d) };
        Ok(Sample { x: x.to_f64(), d_lo, d_hi, margin, operand, sign })
    }

    /// Contact order at one endpoint from two probes a factor 2 apart; the
    /// probes themselves must show a positive margin for the side to pass.
    fn contact(&mut self, at_lo: bool) -> Result<(u32, bool)> {
        let d = CONTACT_PROBE.min(self.domain.width() / 8.0);
        let near = self.probe(d, at_lo)?;
        let nearer = self.probe(d / 2.0, at_lo)?;
        self.samples.push(near);
        self.samples.push(nearer);
        let ok = near.sign == Sign::Positive && nearer.sign == Sign::Positive;
        Ok((contact_order((near.margin, near.sign), (nearer.margin, nearer.sign)), ok))
    }

    /// Probes `eps * 2^-j` inside an open endpoint until the margin sinks
    /// into rounding noise.
    fn open_side(&mut self, at_lo: bool) -> Result<()> {
        for j in 0..=ENDPOINT_HALVINGS {
            let d = self.domain.endpoint_epsilon * 2f64.powi(-j);
            let s = self.probe(d, at_lo)?;
            if s.sign == Sign::Unresolved {
                break;
            }
            self.samples.push(s);
        }
        Ok(())
    }

    /// Evaluates a closed endpoint exactly; `LessEq` admits equality there.
    fn closed_side(&mut self, at_lo: bool) -> Result<bool> {
        let x = if at_lo { self.domain.lo } else { self.domain.hi };
        let (margin, sign, operand) = self.margin_dd(DoubleDouble::from_f64(x))?;
        if sign == Sign::Negative {
            // contact weight is zero here, so the ranking uses d = 1
            self.samples.push(Sample { x, d_lo: 1.0, d_hi: 1.0, margin, operand, sign });
        }
        Ok(match self.case.relation {
            Relation::Less => sign == Sign::Positive,
            _ => sign != Sign::Negative,
        })
    }

    fn grid_and_refine(&mut self, grid: usize) -> Result<()> {
        let (a, b) = self.domain.scan_bounds();
        let step = (b - a) / (grid - 1) as f64;
        let first = self.samples.len();
        for i in 0..grid {
            let x = if i + 1 == grid { b } else { a + step * i as f64 };
            self.sample(x)?;
        }
        let mut order: Vec<usize> = (first..self.samples.len()).collect();
        let keys: Vec<f64> = self.samples.iter().map(|s| self.normalized(s)).collect();
        order.sort_by(|&i, &j| keys[i].total_cmp(&keys[j]).then(i.cmp(&j)));
        for &idx in order.iter().take(REFINE_CELLS) {
            let mut best = self.samples[idx];
            let mut h = step;
            for _ in 0..REFINE_DEPTH {
                h /= 2.0;
                let center = best.x;
                for x in [center - h, center + h] {
                    if x < a || x > b {
                        continue;
                    }
                    let s = self.sample(x)?;
                    if self.normalized(&s) < self.normalized(&best) {
                        best = s;
                    }
                }
            }
        }
        Ok(())
    }

    fn run(mut self, grid: usize, floor: f64) -> Result<Verdict> {
        let (order_lo, lo_ok) = self.contact(true)?;
        let (order_hi, hi_ok) = self.contact(false)?;
        self.order_lo = order_lo;
        self.order_hi = order_hi;
        self.grid_and_refine(grid)?;
        let mut closed_ok = true;
        for at_lo in [true, false] {
            let open = if at_lo { self.domain.lo_open } else { self.domain.hi_open };
            if open {
                self.open_side(at_lo)?;
            } else {
                closed_ok &= self.closed_side(at_lo)?;
            }
        }
        Ok(self.verdict(lo_ok && hi_ok, closed_ok, floor))
    }

    fn verdict(&self, contact_ok: bool, closed_ok: bool, floor: f64) -> Verdict {
        let ranked = |pred: &dyn Fn(&Sample) -> bool| {
            self.samples
                .iter()
                .filter(|s| pred(s))
                .map(|s| (self.normalized(s), s))
                .filter(|(n, _)| !n.is_nan())
                .min_by(|p, q| p.0.total_cmp(&q.0))
                .map(|(n, s)| (n, *s))
        };
        if let Some((n, v)) = ranked(&|s| s.sign == Sign::Negative) {
            return Verdict {
                status: Status::Violated,
                witness: Some(Witness { x: v.x, gap: v.margin }),
                min_margin: n,
                argmin: v.x,
                evaluations: self.evaluations,
                note: None,
            };
        }
        let (min_margin, argmin) = ranked(&|_| true).map(|(n, s)| (n, s.x)).unwrap_or((0.0, self.domain.lo));
        let note = if self.samples.iter().any(|s| s.sign == Sign::Unresolved) {
            Some("margin within rounding noise at double-double precision".to_string())
        } else if !contact_ok {
            Some("endpoint probes did not resolve a positive margin".to_string())
        } else if !closed_ok {
            Some("closed endpoint does not satisfy the relation".to_string())
        } else if !(min_margin > floor) {
            Some(format!("normalized margin {min_margin:e} not above floor {floor:e}"))
        } else {
            None
        };
        Verdict {
            status: if note.is_none() { Status::Verified } else { Status::Inconclusive },
            witness: None,
            min_margin,
            argmin,
            evaluations: self.evaluations,
            note,
        }
    }

    /// Pointwise agreement within `IDENTITY_ULPS` of the larger term magnitude.
    fn run_identity(mut self, grid: usize) -> Result<Verdict> {
        let (a, b) = self.domain.scan_bounds();
        let step = (b - a) / (grid - 1) as f64;
        let mut worst = (0.0_f64, a, 0.0_f64);
        for i in 0..grid {
            let x = if i + 1 == grid { b } else { a + step * i as f64 };
            self.evaluations += 1;
            let (gap, scale) = if self.oracle {
                let xd = DoubleDouble::from_f64(x);
                let (l, ml) = self.case.lhs.eval_with_magnitude(&self.kernel, xd)?;
                let (r, mr) = self.case.rhs.eval_with_magnitude(&self.kernel, xd)?;
                ((r - l).to_f64(), ml.max(mr))
            } else {
                let (l, ml) = self.case.lhs.eval_with_magnitude(&self.kernel, x)?;
                let (r, mr) = self.case.rhs.eval_with_magnitude(&self.kernel, x)?;
                (r - l, ml.max(mr))
            };
            let ulps = gap.abs() / ulp(scale.max(MIN_SCALE));
            if ulps > worst.0 || ulps.is_nan() {
                worst = (ulps, x, gap);
            }
        }
        let slack = IDENTITY_ULPS - worst.0;
        let holds = slack >= 0.0;
        Ok(Verdict {
            status: if holds { Status::Verified } else { Status::Violated },
            witness: (!holds).then_some(Witness { x: worst.1, gap: -worst.2.abs() }),
            min_margin: slack,
            argmin: worst.1,
            evaluations: self.evaluations,
            note: None,
        })
    }
}

fn check_grid(grid: usize, minimum: usize) -> Result<()> {
    if grid < minimum {
        return Err(domain("verify", format!("grid = {grid} below minimum {minimum}")));
    }
    Ok(())
}

/// Scans `case` over its domain. Cases expected to fail that show no
/// violation on the domain get a dedicated search over their witness region.
pub fn verify_case(case: &InequalityCase, grid: usize, cfg: &PrecisionConfig) -> Result<Verdict> {
    check_grid(grid, MIN_GRID)?;
    cfg.validate()?;
    case.domain.validate()?;
    let scanner = Scanner::new(case, case.domain, cfg);
    if case.relation == Relation::Identity {
        return scanner.run_identity(grid);
    }
    let mut verdict = scanner.run(grid, cfg.margin_floor)?;
    if case.expected == Expected::Fails && verdict.status != Status::Violated {
        if let Some(region) = case.witness_region {
            if let Some(w) = find_violation(case, &region, cfg)? {
                verdict.status = Status::Violated;
                verdict.witness = Some(w);
                verdict.argmin = w.x;
                verdict.note = Some("violation located by witness-region search".into());
            }
        }
    }
    Ok(verdict)
}

/// Dense scan of `region` followed by golden-section descent on the
/// normalized margin around the worst sample. Returns the most violated
/// point, if any point violates the relation.
pub fn find_violation(case: &InequalityCase, region: &IntervalSpec, cfg: &PrecisionConfig) -> Result<Option<Witness>> {
    cfg.validate()?;
    region.validate()?;
    if case.relation == Relation::Identity {
        let v = Scanner::new(case, *region, cfg).run_identity(SEARCH_GRID)?;
        return Ok(v.witness);
    }
    let mut scanner = Scanner::new(case, *region, cfg);
    let (order_lo, _) = scanner.contact(true)?;
    let (order_hi, _) = scanner.contact(false)?;
    scanner.order_lo = order_lo;
    scanner.order_hi = order_hi;
    scanner.grid_and_refine(SEARCH_GRID)?;
    for at_lo in [true, false] {
        let open = if at_lo { region.lo_open } else { region.hi_open };
        if open {
            scanner.open_side(at_lo)?;
        } else {
            scanner.closed_side(at_lo)?;
        }
    }
    let Some(start) = scanner
        .samples
        .iter()
        .filter(|s| s.sign == Sign::Negative)
        .min_by(|p, q| scanner.normalized(p).total_cmp(&scanner.normalized(q)))
        .copied()
    else {
        return Ok(None);
    };
    let (a, b) = region.scan_bounds();
    let h = (b - a) / (SEARCH_GRID - 1) as f64;
    let (mut lo, mut hi) = ((start.x - h).max(a), (start.x + h).min(b));
    let mut best = start;
    if lo < hi {
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - ratio * (hi - lo);
        let mut x2 = lo + ratio * (hi - lo);
        let mut s1 = scanner.sample(x1)?;
        let mut s2 = scanner.sample(x2)?;
        for _ in 0..GOLDEN_STEPS {
            if scanner.normalized(&s1) < scanner.normalized(&s2) {
                hi = x2;
                x2 = x1;
                s2 = s1;
                x1 = hi - ratio * (hi - lo);
                s1 = scanner.sample(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                s1 = s2;
                x2 = lo + ratio * (hi - lo);
                s2 = scanner.sample(x2)?;
            }
            if !(lo < hi) {
                break;
            }
        }
        for s in [s1, s2] {
            if s.sign == Sign::Negative && scanner.normalized(&s) < scanner.normalized(&best) {
                best = s;
            }
        }
    }
    Ok(Some(Witness { x: best.x, gap: best.margin }))
}
