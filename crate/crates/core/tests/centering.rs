mod common;

use proptest::prelude::*;

use pec_advantage::centering::{
    conservative_proxy, default_shift_axis, default_width_axis, proxy_success, relative_error,
    relative_error_map, true_success, true_success_with_span, CenteringPoint,
};

fn quadrature_truth(shift: f64, width: f64) -> f64 {
    common::normal_mass_quadrature(0.5 * shift, width, -0.5, 0.5)
}

#[test]
fn matches_density_quadrature() {
    for (s, w) in [(0.5, 0.05), (0.0, 0.3), (0.9, 0.02), (0.7, 1.0), (0.25, 0.001)] {
        let pt = CenteringPoint::new(s, w).unwrap();
        assert!((true_success(pt) - quadrature_truth(s, w)).abs() < 1e-12, "({s}, {w})");
    }
}

#[test]
fn reference_point() {
    // (0.5, 0.05): mean 0.25 on (-0.5, 0.5) with spread 0.05.
    let pt = CenteringPoint::new(0.5, 0.05).unwrap();
    let expected = 0.5 * (common::erf_oracle(0.25 / (0.05 * 2f64.sqrt())) + common::erf_oracle(0.75 / (0.05 * 2f64.sqrt())));
    assert!((true_success(pt) - expected).abs() < 1e-14);
}

#[test]
fn conservative_proxy_bounds_truth_for_moderate_shifts() {
    let widths = default_width_axis();
    for &s in default_shift_axis().iter().filter(|&&s| s <= 0.75) {
        for &w in widths.iter().filter(|&&w| w < 0.1) {
            let truth = true_success(CenteringPoint::new(s, w).unwrap());
            assert!(truth >= conservative_proxy(w).unwrap(), "({s}, {w})");
        }
    }
}

#[test]
fn centred_row_has_zero_error() {
    let map = relative_error_map(&default_shift_axis(), &default_width_axis()).unwrap();
    assert_eq!(map.shift_values[0], 0.0);
    assert!(map.relative_error[0].iter().all(|v| *v == Some(0.0)));
    assert_eq!(map.true_success.len(), 100);
    assert!(map.true_success.iter().all(|r| r.len() == 100));
}

#[test]
fn rejects_out_of_range_points() {
    assert!(CenteringPoint::new(1.0, 0.1).is_err());
    assert!(CenteringPoint::new(-0.1, 0.1).is_err());
    assert!(CenteringPoint::new(0.5, 0.0).is_err());
    assert!(proxy_success(-1.0).is_err());
    assert!(relative_error_map(&[], &[0.1]).is_err());
}

proptest! {
    #[test]
    fn truth_never_exceeds_proxy(s in 0.0..0.999f64, w in 1e-3..10.0f64) {
        let pt = CenteringPoint::new(s, w).unwrap();
        prop_assert!(true_success(pt) <= proxy_success(w).unwrap());
        if let Some(e) = relative_error(pt) {
            prop_assert!(e >= 0.0);
        }
    }

    #[test]
    fn truth_falls_with_shift(a in 0.0..0.999f64, b in 0.0..0.999f64, w in 1e-3..10.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let t_lo = true_success(CenteringPoint::new(lo, w).unwrap());
        let t_hi = true_success(CenteringPoint::new(hi, w).unwrap());
        prop_assert!(t_hi <= t_lo + 1e-15);
    }

    #[test]
    fn depends_only_on_ratios(s in 0.0..0.99f64, w in 1e-3..1.0f64) {
        let pt = CenteringPoint::new(s, w).unwrap();
        let base = true_success(pt);
        for span in [1.0, 10.0, 137.0] {
            prop_assert!((true_success_with_span(pt, span).unwrap() - base).abs() <= 1e-12);
        }
    }
}
