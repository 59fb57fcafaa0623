//! The built-in claims: the bounds themselves, the designed failures that
//! show where they stop holding, and the perturbations that show their
//! constants cannot be improved.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::OnceLock;

use crate::bounds::BoundExpr;
use crate::constants::{solve_p0_in, Catalogue};
use crate::dd::DoubleDouble;

use super::{Direction, Expected, Expr, InequalityCase, IntervalSpec, MonotoneCase, MonotoneTarget, Relation};

/// Sharp parameters rounded in the direction that keeps the claim true
/// (a lower bound may only get smaller, an upper bound only larger).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpParameters {
    /// The threshold exponent, rounded up.
    pub p0: f64,
    /// The lower exponent on `cos(x/3)`, rounded up.
    pub alpha: f64,
    /// Multiplier of `cos^3(x/3)` on `(0, pi/2)`, rounded down.
    pub beta_third_half: f64,
    /// Multiplier of `cos^3(x/3)` on `(0, pi/4)`, rounded down.
    pub beta_third_quarter: f64,
    /// Multiplier of `cos^2(x/2)`, rounded up.
    pub beta_half_half: f64,
}

impl SharpParameters {
    pub fn get() -> &'static SharpParameters {
        static PARAMS: OnceLock<SharpParameters> = OnceLock::new();
        PARAMS.get_or_init(|| {
            let p0 = solve_p0_in::<DoubleDouble>(1e-28).expect("bracket [1/3, 1/2] has a sign change").value;
            let cat = Catalogue::closed_forms(p0);
            SharpParameters {
                p0: p0.round_up_f64(),
                alpha: cat.alpha.round_up_f64(),
                beta_third_half: cat.beta_13_half.round_down_f64(),
                beta_third_quarter: cat.beta_13_quarter.round_down_f64(),
                beta_half_half: cat.beta_12_half.round_up_f64(),
            }
        })
    }
}

fn interval_label(d: &IntervalSpec) -> String {
    let show = |v: f64| {
        for (name, value) in
            [("pi/4", FRAC_PI_4), ("pi/2", FRAC_PI_2), ("pi", PI), ("3pi/2", 1.5 * PI), ("3pi", 3.0 * PI)]
        {
            if v == value {
                return name.to_string();
            }
        }
        if (v - (FRAC_PI_2 - 0.2)).abs() < 1e-15 {
            return "pi/2-0.2".into();
        }
        format!("{v}")
    };
    format!("{}{}, {}{}", if d.lo_open { "(" } else { "[" }, show(d.lo), show(d.hi), if d.hi_open { ")" } else { "]" })
}

fn case(
    id: &str,
    name: &str,
    lhs: impl Into<Expr>,
    relation: Relation,
    rhs: impl Into<Expr>,
    domain: IntervalSpec,
) -> InequalityCase {
    let (lhs, rhs) = (lhs.into(), rhs.into());
    let rel = match relation {
        Relation::Less => "<",
        Relation::LessEq => "<=",
        Relation::Identity => "==",
    };
    InequalityCase {
        id: id.to_string(),
        claim: format!("{name}: {} {rel} {} on {}", lhs.label(), rhs.label(), interval_label(&domain)),
        lhs,
        relation,
        rhs,
        domain,
        expected: Expected::Holds,
        witness_region: None,
    }
}

fn failing(mut c: InequalityCase, region: IntervalSpec) -> InequalityCase {
    c.expected = Expected::Fails;
    c.witness_region = Some(region);
    c
}

fn param_tag(p: f64) -> String {
    if p == 1.0 / 3.0 {
        "1/3".into()
    } else {
        format!("{p}")
    }
}

use BoundExpr::*;
use Relation::{Identity, Less, LessEq};

/// Every claim the engine checks by default. Ids are unique.
pub fn builtin_suite() -> Vec<InequalityCase> {
    let sp = SharpParameters::get();
    let half = IntervalSpec::open(0.0, FRAC_PI_2);
    let third = 1.0 / 3.0;
    let mut v = vec![
        case(
            "jordan-lower",
            "Jordan lower bound",
            ConstantTwoOverPi,
            LessEq,
            Sinc,
            IntervalSpec::left_open(0.0, FRAC_PI_2),
        ),
        case("jordan-upper", "Jordan upper bound", Sinc, LessEq, Expr::One, IntervalSpec::left_open(0.0, FRAC_PI_2)),
        case(
            "qi-lower",
            "half-angle square below sinc, extended range",
            QiLower,
            Less,
            Sinc,
            IntervalSpec::open(0.0, PI),
        ),
        case(
            "klen-sinc-cubic",
            "sinc below cos^3(x/3), extended range",
            Sinc,
            Less,
            KlenUpper3,
            IntervalSpec::open(0.0, PI),
        ),
        case(
            "klen-cubic-average",
            "cos^3(x/3) below (2+cos x)/3",
            KlenUpper3,
            Less,
            TwoPlusCosOver3,
            IntervalSpec::open(0.0, PI),
        ),
    ];
    for (tag, p) in [("-at-p0", sp.p0), ("-p0.4", 0.4), ("-p0.7", 0.7), ("-p1", 1.0)] {
        v.push(case(
            &format!("cos-power-lower{tag}"),
            "cos-power lower bound, p in [p0, 1]",
            CosPower { p },
            Less,
            Sinc,
            half,
        ));
    }
    for q in [0.1, 0.2, third] {
        v.push(case(
            &format!("cos-power-upper-q{}", param_tag(q)),
            "cos-power upper bound, q in (0, 1/3]",
            Sinc,
            Less,
            CosPower { p: q },
            half,
        ));
    }
    v.extend([
        case("alpha-exponent-lower", "cos(x/3)^alpha lower bound", CosPowerAlpha { alpha: sp.alpha }, Less, Sinc, half),
        case("cubic-exponent-upper", "cos(x/3)^3 upper bound", Sinc, Less, KlenUpper3, half),
        case("p0-exponent-lower", "cos(p0 x)^(1/p0) lower bound", CosPower { p: sp.p0 }, Less, Sinc, half),
        case(
            "p0-matched-upper",
            "cos(p0 x)^(1/(3 p0^2)) upper bound",
            Sinc,
            Less,
            Expr::CosPowerMatched { p: sp.p0 },
            half,
        ),
    ]);
    for p in [0.1, 0.25, third] {
        v.push(case(
            &format!("beta-scaled-lower-p{}", param_tag(p)),
            "beta-scaled lower bound, p in (0, 1/3]",
            ScaledCosPower { p, c: FRAC_PI_2 },
            Less,
            Sinc,
            half,
        ));
        v.push(case(
            &format!("beta-regime-upper-p{}", param_tag(p)),
            "unscaled upper bound, p in (0, 1/3]",
            Sinc,
            Less,
            CosPower { p },
            half,
        ));
    }
    for p in [0.5, 0.75, 1.0] {
        v.push(case(
            &format!("reversed-lower-p{p}"),
            "reversed: unscaled lower bound, p in [1/2, 1]",
            CosPower { p },
            Less,
            Sinc,
            half,
        ));
        if p < 1.0 {
            v.push(case(
                &format!("reversed-upper-p{p}"),
                "reversed: beta-scaled upper bound, p in [1/2, 1]",
                Sinc,
                Less,
                ScaledCosPower { p, c: FRAC_PI_2 },
                half,
            ));
        }
    }
    let quarter = IntervalSpec::open(0.0, FRAC_PI_4);
    v.extend([
        case(
            "cubic-sharp-lower",
            "16 sqrt3/(9 pi) cos^3(x/3) lower bound",
            Expr::scaled(sp.beta_third_half, KlenUpper3),
            Less,
            Sinc,
            half,
        ),
        case(
            "cubic-upper-extended",
            "cos^3(x/3) upper bound up to 3pi/2",
            Sinc,
            Less,
            KlenUpper3,
            IntervalSpec::open(0.0, 1.5 * PI),
        ),
        case(
            "cubic-quarter-lower",
            "16(3 sqrt3 - 5)/pi cos^3(x/3) lower bound",
            Expr::scaled(sp.beta_third_quarter, KlenUpper3),
            Less,
            Sinc,
            quarter,
        ),
        case("cubic-quarter-upper", "cos^3(x/3) upper bound on (0, pi/4)", Sinc, Less, KlenUpper3, quarter),
        case("triple-angle", "sin(3x)/x below 3 cos^3 x", Expr::Sin3xOverX, Less, ThreeCosCubed, half),
        case("rational-upper", "rational upper bound", Sinc, Less, Mb4Rational, half),
        case(
            "averaged-sine",
            "averaged sine below squared half-cosine",
            Expr::AveragedSine,
            Less,
            Expr::HalfCosSquared,
            half,
        ),
        case("half-angle-lower", "cos^2(x/2) lower bound", QiLower, Less, Sinc, half),
        case(
            "half-angle-upper",
            "4/pi cos^2(x/2) upper bound",
            Sinc,
            Less,
            Expr::scaled(sp.beta_half_half, QiLower),
            half,
        ),
        case(
            "chain-lower",
            "half-angle chain lower bound",
            Expr::HalfAngleChain { scale: sp.beta_third_quarter },
            Less,
            Sinc,
            half,
        ),
        case("chain-upper", "half-angle chain upper bound", Sinc, Less, Expr::HalfAngleChain { scale: 1.0 }, half),
        case(
            "lin-hyperbolic",
            "sinh(u)/u below cosh^3(u/3)",
            Expr::Sinhc,
            Less,
            Expr::CoshCubedThird,
            IntervalSpec::left_open(0.0, 50.0),
        ),
        case(
            "identity-h-derivative",
            "derivative of x - sin x / cos^3(x/3)",
            Expr::HDerivative,
            Identity,
            Expr::TanFourthThird,
            IntervalSpec::open(0.0, 1.5 * PI),
        ),
        case(
            "identity-cube-difference",
            "factorization of cos^3(x/3) - (2+cos x)/3",
            Expr::CubeDifference,
            Identity,
            Expr::CubeDifferenceFactored,
            IntervalSpec::open(0.0, 3.0 * PI),
        ),
    ]);
    let near_half_pi = IntervalSpec::open(FRAC_PI_2 - 0.2, FRAC_PI_2);
    v.extend([
        failing(
            case("cos-power-lower-p0.346", "cos-power lower bound below p0", CosPower { p: 0.346 }, Less, Sinc, half),
            near_half_pi,
        ),
        failing(
            case("cos-power-upper-q0.34", "cos-power upper bound above 1/3", Sinc, Less, CosPower { p: 0.34 }, half),
            IntervalSpec::open(0.0, 0.5),
        ),
        failing(
            case("cos-power-upper-q1", "cos-power upper bound at q = 1", Sinc, Less, CosPower { p: 1.0 }, half),
            half,
        ),
    ]);
    v
}

/// Perturbed sharp constants; each must produce a violation.
pub fn sharpness_suite() -> Vec<InequalityCase> {
    let sp = SharpParameters::get();
    let half = IntervalSpec::open(0.0, FRAC_PI_2);
    let near_zero = IntervalSpec::open(0.0, 0.2);
    let near_half_pi = IntervalSpec::open(FRAC_PI_2 - 0.2, FRAC_PI_2);
    let near_quarter_pi = IntervalSpec::open(FRAC_PI_4 - 0.2, FRAC_PI_4);
    let up = 1.0 + 1e-6;
    let down = 1.0 - 1e-6;
    let p0 = sp.p0;
    vec![
        failing(
            case(
                "sharp-cubic-lower-beta-up",
                "beta_1/3(pi/2) raised by 1e-6",
                Expr::scaled(sp.beta_third_half * up, KlenUpper3),
                Less,
                Sinc,
                half,
            ),
            near_half_pi,
        ),
        failing(
            case(
                "sharp-cubic-upper-one-down",
                "upper multiplier 1 lowered by 1e-6",
                Sinc,
                Less,
                Expr::scaled(down, KlenUpper3),
                half,
            ),
            near_zero,
        ),
        failing(
            case(
                "sharp-quarter-lower-beta-up",
                "beta_1/3(pi/4) raised by 1e-6",
                Expr::scaled(sp.beta_third_quarter * up, KlenUpper3),
                Less,
                Sinc,
                IntervalSpec::open(0.0, FRAC_PI_4),
            ),
            near_quarter_pi,
        ),
        failing(
            case(
                "sharp-half-angle-upper-beta-down",
                "4/pi lowered by 1e-6",
                Sinc,
                Less,
                Expr::scaled(sp.beta_half_half * down, QiLower),
                half,
            ),
            near_half_pi,
        ),
        failing(
            case(
                "sharp-alpha-down",
                "exponent alpha lowered by 1e-6",
                CosPowerAlpha { alpha: sp.alpha * down },
                Less,
                Sinc,
                half,
            ),
            near_half_pi,
        ),
        failing(
            case(
                "sharp-cubic-exponent-up",
                "exponent 3 raised by 1e-6",
                Sinc,
                Less,
                CosPowerAlpha { alpha: 3.0 * up },
                half,
            ),
            near_zero,
        ),
        failing(
            case(
                "sharp-p0-exponent-down",
                "exponent 1/p0 lowered by 1e-6",
                Expr::CosPowerExponent { p: p0, exponent: down / p0 },
                Less,
                Sinc,
                half,
            ),
            near_half_pi,
        ),
        failing(
            case(
                "sharp-p0-matched-exponent-up",
                "exponent 1/(3 p0^2) raised by 1e-6",
                Sinc,
                Less,
                Expr::CosPowerExponent { p: p0, exponent: up / (3.0 * p0 * p0) },
                half,
            ),
            near_zero,
        ),
        failing(
            case("sharp-p0-lowered", "p0 lowered by 1e-6", CosPower { p: p0 * down }, Less, Sinc, half),
            near_half_pi,
        ),
        failing(
            case("sharp-third-raised", "q = 1/3 raised by 1e-6", Sinc, Less, CosPower { p: (1.0 / 3.0) * up }, half),
            near_zero,
        ),
    ]
}

fn monotone(id: &str, target: MonotoneTarget, domain: IntervalSpec, direction: Direction) -> MonotoneCase {
    let dir = match direction {
        Direction::Increasing => "increasing",
        Direction::Decreasing => "decreasing",
    };
    MonotoneCase {
        id: id.to_string(),
        claim: format!("{} is {dir} on {}", target.label(), interval_label(&domain)),
        target,
        domain,
        direction,
        expected: Expected::Holds,
    }
}

/// Monotonicity claims for `f_p`, `F_p` and the cos-power family.
pub fn monotone_suite() -> Vec<MonotoneCase> {
    let half = IntervalSpec::open(0.0, FRAC_PI_2);
    let third = 1.0 / 3.0;
    let mut v = Vec::new();
    for p in [0.1, 0.25, third] {
        v.push(monotone(
            &format!("log-difference-decreasing-p{}", param_tag(p)),
            MonotoneTarget::LogDifference { p },
            half,
            Direction::Decreasing,
        ));
    }
    for p in [0.5, 0.75, 1.0] {
        v.push(monotone(
            &format!("log-difference-increasing-p{p}"),
            MonotoneTarget::LogDifference { p },
            half,
            Direction::Increasing,
        ));
    }
    for p in [0.1, 0.25, third, 0.4] {
        v.push(monotone(
            &format!("log-ratio-increasing-p{}", param_tag(p)),
            MonotoneTarget::LogRatio { p },
            half,
            Direction::Increasing,
        ));
    }
    for p in [0.5, 0.75, 1.0] {
        v.push(monotone(
            &format!("log-ratio-decreasing-p{p}"),
            MonotoneTarget::LogRatio { p },
            half,
            Direction::Decreasing,
        ));
    }
    v.push(monotone(
        "log-difference-at-half-pi-in-p",
        MonotoneTarget::LogDifferenceAtHalfPi,
        IntervalSpec::closed(0.05, 0.95),
        Direction::Increasing,
    ));
    for x in [1.0, 1.5] {
        v.push(monotone(
            &format!("cos-power-decreasing-in-p-x{x}"),
            MonotoneTarget::CosPowerInExponent { x },
            IntervalSpec::closed(0.01, 1.0),
            Direction::Decreasing,
        ));
    }
    v
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique() {
        let mut seen = HashSet::new();
        for c in builtin_suite().iter().chain(sharpness_suite().iter()) {
            assert!(seen.insert(c.id.clone()), "duplicate id {}", c.id);
        }
        for c in monotone_suite() {
            assert!(seen.insert(c.id.clone()), "duplicate id {}", c.id);
        }
    }

    #[test]
    fn failing_cases_carry_regions() {
        for c in builtin_suite().iter().chain(sharpness_suite().iter()) {
            if c.expected == Expected::Fails {
                assert!(c.witness_region.is_some(), "{}", c.id);
            }
        }
    }

    #[test]
    fn suite_is_large_enough() {
        assert!(builtin_suite().len() >= 30);
    }

    #[test]
    fn sharp_parameters_round_outward() {
        let sp = SharpParameters::get();
        // reference values to 20 digits
        assert!(sp.p0 >= 0.347_307_245_464_888_874_96);
        assert!(sp.alpha >= 3.139_456_702_608_020_248);
        assert!(sp.beta_third_half <= 0.980_140_258_527_630_31);
        assert!(sp.beta_half_half >= 1.273_239_544_735_162_69);
        assert!(sp.alpha - 3.139_456_702_608_020_248 < 1e-15);
    }
}
