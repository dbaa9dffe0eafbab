mod common;

use common::{count_le_linear, draw, model_zoo};
use monohazard_core::statistic::statistic_t_resample;
use monohazard_core::{
    default_region, statistic_t, statistic_t_generic, statistic_t_piecewise, EmpiricalHazard,
    Region, Sample, TestConfig,
};
use proptest::prelude::*;

/// Brute-force midpoint sum of the exact step-function integrand, written
/// without the library's hazard table or pointer walk.
fn brute_force_t(xs: &[f64], lo: f64, hi: f64, g: usize) -> f64 {
    let n = xs.len() as f64;
    let h = |x: f64| -(1.0 - count_le_linear(xs, x) as f64 / n).ln();
    let dx = (hi - lo) / g as f64;
    let mut total = 0.0;
    for i in 0..g {
        let x = lo + (i as f64 + 0.5) * dx;
        let d = (x - lo).min(hi - x);
        let dy = 2.0 * d / g as f64;
        let hx = h(x);
        let mut row = 0.0;
        for j in 0..g {
            let y = -d + (j as f64 + 0.5) * dy;
            row += (2.0 * hx - h(x + y) - h(x - y)).max(0.0);
        }
        total += row * dy * dx;
    }
    total
}

#[test]
fn three_point_sample_matches_fine_grid() {
    let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
    let region = Region::single(0.0, 2.5).unwrap();
    let t = statistic_t(&s, &region, &TestConfig::default()).unwrap();
    let oracle = brute_force_t(s.values(), 0.0, 2.5, 2000);
    assert!(oracle > 0.0);
    assert!((t - oracle).abs() <= 0.01 * oracle, "T = {t}, oracle = {oracle}");
}

#[test]
fn smooth_hazards_through_generic_path() {
    let cfg = TestConfig::default();
    let r = Region::single(0.0, 2.0).unwrap();
    // H(x) = x - (x-1)^2: closed-form value 2/3.
    let t = statistic_t_generic(|x| x - (x - 1.0) * (x - 1.0), &r, &cfg).unwrap();
    assert!((t - 2.0 / 3.0).abs() < 2e-4, "{t}");
    // Any convex cumulative hazard scores zero.
    assert_eq!(statistic_t_generic(|x| x * x * x + x, &r, &cfg).unwrap(), 0.0);
}

#[test]
fn exponential_sample_has_positive_statistic() {
    let s = draw(&common::exponential(), 50, 3, 0);
    let region = default_region(&s).unwrap();
    assert!(statistic_t(&s, &region, &TestConfig::default()).unwrap() > 0.0);
}

#[test]
fn grid_doubling_changes_little_on_model_samples() {
    let base = TestConfig::default();
    let fine = TestConfig { grid_points: 2 * base.grid_points, ..base.clone() };
    for (mi, model) in model_zoo().iter().enumerate() {
        for n in [50, 200] {
            let s = draw(model, n, 17, (mi * 10 + n) as u64);
            let region = default_region(&s).unwrap();
            let a = statistic_t(&s, &region, &base).unwrap();
            let b = statistic_t(&s, &region, &fine).unwrap();
            assert!((a - b).abs() < 0.02 * b, "model {mi}, n {n}: {a} vs {b}");
        }
    }
}

#[test]
fn model_samples_match_fine_brute_force() {
    let cfg = TestConfig::default();
    for (mi, model) in model_zoo().iter().enumerate() {
        for n in [30, 100] {
            let s = draw(model, n, 23, (mi * 1000 + n) as u64);
            let region = default_region(&s).unwrap();
            let t = statistic_t(&s, &region, &cfg).unwrap();
            let oracle = brute_force_t(s.values(), 0.0, region.upper(), 2000);
            assert!((t - oracle).abs() <= 0.01 * oracle, "model {mi}, n {n}: {t} vs {oracle}");
        }
    }
}

#[test]
fn odd_tilt_in_the_weight_cancels() {
    // w(x, y) = 1 + 0.4 y integrates like w = 1 over the symmetric y-range.
    let tilted = TestConfig {
        weight: monohazard_core::config::Weight::custom(|_, y| 1.0 + 0.4 * y),
        ..TestConfig::default()
    };
    for (mi, model) in model_zoo().iter().enumerate() {
        let s = draw(model, 60, 29, mi as u64);
        let region = default_region(&s).unwrap();
        let a = statistic_t(&s, &region, &TestConfig::default()).unwrap();
        let b = statistic_t(&s, &region, &tilted).unwrap();
        assert!((a - b).abs() <= 1e-12 * a, "model {mi}: {a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn statistic_is_nonnegative_and_paths_agree(
        raw in prop::collection::vec(0.0f64..5.0, 5..60),
        frac in 0.3f64..0.9,
        g in 16usize..80,
    ) {
        let s = Sample::new(raw).unwrap();
        prop_assume!(s.max() > 0.0);
        let hi = s.max() * frac;
        prop_assume!(hi > 1e-6);
        let region = Region::single(0.0, hi).unwrap();
        let cfg = TestConfig { grid_points: g, ..TestConfig::default() };
        let t = statistic_t(&s, &region, &cfg).unwrap();
        prop_assert!(t >= 0.0);
        let emp = EmpiricalHazard::new(&s);
        let generic = statistic_t_piecewise(|x| emp.eval(x), s.values(), &region, &cfg).unwrap();
        prop_assert!((t - generic).abs() <= 1e-12 * t, "{} vs {}", t, generic);
        prop_assert_eq!(t, statistic_t_resample(&s, &region, &cfg));
    }

    #[test]
    fn second_difference_is_even_in_y(
        raw in prop::collection::vec(0.0f64..5.0, 5..40),
        x in 1.0f64..2.0,
        y in 0.0f64..0.9,
    ) {
        let s = Sample::new(raw).unwrap();
        prop_assume!(s.max() > 3.0);
        let a = monohazard_core::second_diff_emp(&s, x, y).unwrap();
        let b = monohazard_core::second_diff_emp(&s, x, -y).unwrap();
        // Same three terms, subtracted in the other order.
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
    }
}
