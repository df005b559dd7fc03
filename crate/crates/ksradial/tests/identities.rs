use std::f64::consts::PI;

use ksradial::compound::{s0, s1, v};
use ksradial::specfun::{j0, j1, j1_root, y0, y1};
use ksradial::supports::{f_inner, f_outer, solve_r1, solve_r2};
use ksradial::thresholds::{omega_ab, r_under0, rbar0};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lommel(s in 0.01f64..200.0) {
        let lhs = y1(s) * j0(s) - j1(s) * y0(s);
        let rhs = -2.0 / (PI * s);
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-11, "s = {}: {:e}", s, (lhs - rhs) / rhs);
    }

    #[test]
    fn cross(w in 0.2f64..20.0, big in 0.5f64..20.0, frac in 0.0f64..0.99) {
        let r = frac * big;
        let lhs = s0(r, w, big) * v(1, r, w, big) - v(0, r, w, big) * s1(r, w, big);
        let rhs = -4.0 / (PI * PI * w * w * big * (big - r));
        prop_assert!(((lhs - rhs) / rhs).abs() < 1e-11, "{:e}", (lhs - rhs) / rhs);
    }
}

fn derivative(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    // Fourth-order central difference.
    let h = 1e-4 * x.max(1e-2);
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

#[test]
fn inner_slope_at_root() {
    for big in [1.0, 5.0, 20.0] {
        for w in [1.0, 2.0, 5.0, 20.0].map(|t| t * j1_root(1) / big + 0.05) {
            let r1 = solve_r1(w, big).unwrap();
            let d = derivative(|r| f_inner(r, w, big), r1);
            let want = -(w * w + 1.0);
            assert!(((d - want) / want).abs() < 1e-6, "R {big} ω {w}: {d} vs {want}");
        }
    }
}

#[test]
fn outer_slope_at_root() {
    for big in [1.0, 5.0, 20.0] {
        for w in [1.0, 2.0, 5.0, 20.0].map(|t| t * j1_root(1) / big + 0.05) {
            let r2 = solve_r2(w, big).unwrap();
            let d = derivative(|r| f_outer(r, w, big), r2);
            let want = w * w + 1.0;
            assert!(((d - want) / want).abs() < 1e-6, "R {big} ω {w}: {d} vs {want}");
        }
    }
}

#[test]
fn supports_shrink_with_omega() {
    let big = 5.0;
    let ws: Vec<f64> = (1..=60).map(|i| j1_root(1) / big * (1.0 + 0.25 * i as f64)).collect();
    let r1: Vec<f64> = ws.iter().map(|&w| solve_r1(w, big).unwrap()).collect();
    let r2: Vec<f64> = ws.iter().map(|&w| solve_r2(w, big).unwrap()).collect();
    assert!(r1.windows(2).all(|p| p[1] < p[0]));
    assert!(r2.windows(2).all(|p| p[1] < p[0]));
}

#[test]
fn annulus_threshold_increases_with_inner_radius() {
    let b = 5.0;
    let ws: Vec<f64> = (0..40).map(|i| omega_ab(0.1 * i as f64, b)).collect();
    assert!(ws.windows(2).all(|p| p[1] > p[0]));
    assert!((ws[0] - j1_root(1) / b).abs() < 1e-15);
}

#[test]
fn valley_window_limits() {
    let big = 5.0;
    let mut last = (f64::INFINITY, 0.0);
    for w in [2.0, 5.0, 20.0, 100.0, 1000.0] {
        let lo = r_under0(w);
        let hi = rbar0(w, big, 2).unwrap();
        assert!(lo < hi && hi < big);
        assert!(lo < last.0 && hi > last.1);
        last = (lo, hi);
    }
    assert!(last.0 < 1e-2);
    assert!(big - last.1 < 1e-2);
}
