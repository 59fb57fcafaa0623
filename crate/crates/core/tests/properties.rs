use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use sincbound_core::bounds::{BoundExpr, Kernel};
use sincbound_core::means::{a4_margin, a5_margin, schwab_borchardt};
use sincbound_core::report::{CaseRow, RowKind};
use sincbound_core::series::cot_series;
use sincbound_core::ulp::{ulp, ulps_between};
use sincbound_core::verifier::{builtin_suite, verify_case, Expected, Status, Witness};
use sincbound_core::{DoubleDouble, PrecisionConfig, Real};

const P0_UP: f64 = 0.347_307_245_464_889;

fn half_open_quadrant() -> impl Strategy<Value = f64> {
    (1e-8f64..FRAC_PI_2).prop_filter("inside", |x| *x < FRAC_PI_2)
}

proptest! {
    #[test]
    fn sinc_is_even_and_bounded(x in -50.0f64..50.0) {
        let k = Kernel::default();
        let s: f64 = k.sinc(x);
        prop_assert_eq!(s, k.sinc(-x));
        prop_assert!(s.abs() <= 1.0);
    }

    #[test]
    fn jordan_bounds(x in 0.0f64..=FRAC_PI_2) {
        let s: f64 = Kernel::default().sinc(x);
        prop_assert!(2.0 / PI <= s + 2.0 * f64::EPSILON && s <= 1.0);
    }

    #[test]
    fn working_and_oracle_sinc_agree(x in 0.0f64..3.0) {
        let k = Kernel::default();
        let w: f64 = k.sinc(x);
        let o = k.sinc(DoubleDouble::from_f64(x)).to_f64();
        prop_assert!(ulps_between(w, o) <= 2.0, "x = {x}: {w} vs {o}");
    }

    #[test]
    fn cos_power_decreases_in_exponent(x in 0.01f64..1.5, p in 0.01f64..0.99, dp in 0.001f64..0.3) {
        let k = Kernel::default();
        let q = (p + dp).min(1.0);
        prop_assume!(q > p);
        let a: f64 = k.cos_power(p, x).unwrap();
        let b: f64 = k.cos_power(q, x).unwrap();
        prop_assert!(b <= a * (1.0 + 4.0 * f64::EPSILON));
    }

    #[test]
    fn sharp_two_sided_bound(x in half_open_quadrant()) {
        let k = Kernel::default();
        let s: f64 = k.sinc(x);
        let lower: f64 = BoundExpr::CosPower { p: P0_UP }.eval(&k, x).unwrap();
        let upper: f64 = BoundExpr::KlenUpper3.eval(&k, x).unwrap();
        prop_assert!(lower <= s && s <= upper, "x = {x}");
    }

    #[test]
    fn log_difference_sign_by_regime(x in 1e-3f64..FRAC_PI_2, low in 0.02f64..=1.0 / 3.0, high in 0.5f64..0.99) {
        let k = Kernel::default();
        prop_assert!(k.f_p(low, x).unwrap() < 0.0);
        prop_assert!(k.f_p(high, x).unwrap() > 0.0);
    }

    #[test]
    fn out_of_domain_is_an_error(x in 1.6f64..10.0) {
        let k = Kernel::default();
        prop_assert!(k.cos_power::<f64>(1.0, x).is_err());
        prop_assert!(k.f_p::<f64>(0.5, x).is_err());
    }

    #[test]
    fn schwab_borchardt_is_homogeneous_and_between(a in 1e-3f64..1e3, b in 1e-3f64..1e3, scale in 1e-2f64..1e2) {
        let m = schwab_borchardt(a, b).unwrap();
        prop_assert!(m >= a.min(b) * (1.0 - 1e-14) && m <= a.max(b) * (1.0 + 1e-14));
        let scaled = schwab_borchardt(scale * a, scale * b).unwrap();
        prop_assert!(((scaled - scale * m) / (scale * m)).abs() < 1e-13);
    }

    #[test]
    fn cubic_mean_bound_nonnegative(t in 1e-3f64..1e3) {
        prop_assert!(a4_margin(t).unwrap() >= -1e-12);
    }

    #[test]
    fn seiffert_bound_positive(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        prop_assume!((a - b).abs() > 1e-6 * a.max(b));
        prop_assert!(a5_margin(a, b).unwrap() > 0.0);
    }

    #[test]
    fn cot_partial_sum_close_to_direct(x in 0.05f64..1.4) {
        let s = cot_series(x, 40).unwrap();
        prop_assert!((s.sum - 1.0 / x.tan()).abs() <= 1e-12);
        prop_assert!(s.remainder_bound >= 0.0);
    }

    #[test]
    fn double_double_sum_is_exact(a in -1e10f64..1e10, b in -1e10f64..1e10) {
        let s = DoubleDouble::from_f64(a) + DoubleDouble::from_f64(b);
        let back = s - DoubleDouble::from_f64(b);
        prop_assert_eq!(back.to_f64(), a);
    }

    #[test]
    fn double_double_division_round_trips(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let (da, db) = (DoubleDouble::from_f64(a), DoubleDouble::from_f64(b));
        let r = (da / db) * db - da;
        prop_assert!(r.to_f64().abs() <= 1e-30 * a);
    }

    #[test]
    fn ulp_distance_is_symmetric(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        prop_assert_eq!(ulps_between(a, b), ulps_between(b, a));
        prop_assert_eq!(ulps_between(a, a), 0.0);
        prop_assert!(ulp(a) > 0.0);
    }

    #[test]
    fn case_rows_round_trip_bit_exactly(margin in proptest::num::f64::NORMAL, x in proptest::num::f64::NORMAL, evals in 0u64..1_000_000) {
        let row = CaseRow {
            id: "row".into(),
            claim: "claim".into(),
            kind: RowKind::Inequality,
            expected: Expected::Fails,
            status: Status::Violated,
            matched: true,
            min_margin: margin,
            argmin: x,
            witness: Some(Witness { x, gap: -margin.abs() }),
            evaluations: evals,
            note: None,
        };
        let text = serde_json::to_string(&row).unwrap();
        let back: CaseRow = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.min_margin.to_bits(), margin.to_bits());
        prop_assert_eq!(back, row);
    }
}

#[test]
fn verdicts_are_deterministic() {
    let cfg = PrecisionConfig::default();
    for case in builtin_suite().iter().take(12) {
        let a = verify_case(case, 256, &cfg).unwrap();
        let b = verify_case(case, 256, &cfg).unwrap();
        assert_eq!(a, b, "{}", case.id);
    }
}

#[test]
fn violations_exceed_four_ulps() {
    let cfg = PrecisionConfig::default();
    let k = Kernel::default();
    for case in builtin_suite().iter().filter(|c| c.expected == Expected::Fails) {
        let v = verify_case(case, 512, &cfg).unwrap();
        let w = v.witness.expect("failing case has a witness");
        let l: f64 = case.lhs.eval(&k, w.x).unwrap();
        let r: f64 = case.rhs.eval(&k, w.x).unwrap();
        assert!(r - l < -4.0 * ulp(l.abs().max(r.abs())), "{}: {l} vs {r}", case.id);
    }
}
