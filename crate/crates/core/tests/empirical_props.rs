use monohazard_core::{cum_hazard_emp, ecdf, empirical_quantile, EmpiricalHazard, Sample};
use proptest::prelude::*;

fn values() -> impl Strategy<Value = Vec<f64>> {
    // Rounded to a coarse lattice so ties show up regularly.
    prop::collection::vec((0u32..400).prop_map(|k| k as f64 * 0.025), 2..80)
}

proptest! {
    #[test]
    fn ecdf_is_a_right_continuous_staircase(raw in values()) {
        let s = Sample::new(raw).unwrap();
        let n = s.len() as f64;
        let lo = s.min() - 1.0;
        let hi = s.max() + 1.0;
        let mut prev = 0.0;
        for k in 0..=2000 {
            let x = lo + (hi - lo) * k as f64 / 2000.0;
            let f = ecdf(&s, x);
            prop_assert!(f >= prev);
            let steps = f * n;
            prop_assert!((steps - steps.round()).abs() < 1e-9);
            prev = f;
        }
        prop_assert_eq!(ecdf(&s, lo), 0.0);
        prop_assert_eq!(ecdf(&s, s.max()), 1.0);
        // Right-continuity: the value at a data point is the value just above it.
        for &x in s.values() {
            prop_assert_eq!(ecdf(&s, x), ecdf(&s, x + 1e-9));
        }
    }

    #[test]
    fn cumulative_hazard_is_monotone_and_matches_definition(raw in values()) {
        let s = Sample::new(raw).unwrap();
        let table = EmpiricalHazard::new(&s);
        let mut prev = 0.0;
        let top = s.max();
        for k in 0..=500 {
            let x = -0.5 + (top + 0.5) * k as f64 / 500.0;
            if x >= top {
                break;
            }
            let h = cum_hazard_emp(&s, x).unwrap();
            prop_assert!(h >= prev);
            let direct = -(1.0 - ecdf(&s, x)).ln();
            prop_assert!((h - direct).abs() <= 4.0 * f64::EPSILON * direct.max(1.0));
            prop_assert_eq!(h, table.eval(x));
            prev = h;
        }
        prop_assert!(cum_hazard_emp(&s, top).is_err());
        prop_assert!(table.eval(top).is_infinite());
    }

    #[test]
    fn quantile_is_a_sample_value_covering_p(raw in values(), p in 0.001f64..1.0) {
        let s = Sample::new(raw).unwrap();
        let q = empirical_quantile(&s, p).unwrap();
        prop_assert!(s.values().contains(&q));
        prop_assert!(ecdf(&s, q) >= p);
    }
}
