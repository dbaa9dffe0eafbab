mod common;

use common::ks_distance;
use monohazard_core::baseline::{normalized_spacings, trend_count};
use monohazard_core::{pp_statistic, seed, Sample};
use proptest::prelude::*;
use rand::Rng;

fn exp_sample(n: usize, rng: &mut impl Rng) -> Sample {
    Sample::new((0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect()).unwrap()
}

#[test]
fn spacings_of_exponential_data_are_standard_exponential() {
    let mut rng = seed::stream(12, &[0]);
    let mut pooled: Vec<f64> = (0..200)
        .flat_map(|_| normalized_spacings(&exp_sample(50, &mut rng)))
        .collect();
    pooled.sort_by(f64::total_cmp);
    let d = ks_distance(&pooled, |x| 1.0 - (-x).exp());
    assert!(d < 1.628 * 1.5 / (pooled.len() as f64).sqrt(), "KS {d}");
}

#[test]
fn size_under_the_exponential_is_near_nominal() {
    let mut rng = seed::stream(13, &[0]);
    let runs = 2000;
    let rejections = (0..runs)
        .filter(|_| pp_statistic(&exp_sample(50, &mut rng), 0.10).unwrap().reject)
        .count();
    let rate = rejections as f64 / runs as f64;
    assert!((rate - 0.10).abs() <= 0.02, "{rate}");
}

proptest! {
    #[test]
    fn forward_and_reverse_counts_partition_all_pairs(
        d in prop::collection::vec((0u32..20).prop_map(f64::from), 2..60),
    ) {
        let n = d.len() as f64;
        let reversed: Vec<f64> = d.iter().rev().copied().collect();
        prop_assert_eq!(trend_count(&d) + trend_count(&reversed), n * (n - 1.0) / 2.0);
    }

    #[test]
    fn count_is_scale_invariant(
        raw in prop::collection::vec(0.01f64..10.0, 5..60),
        c in 0.01f64..100.0,
    ) {
        let a = pp_statistic(&Sample::new(raw.clone()).unwrap(), 0.1).unwrap();
        let scaled = raw.iter().map(|x| x * c).collect();
        let b = pp_statistic(&Sample::new(scaled).unwrap(), 0.1).unwrap();
        prop_assert_eq!(a.v, b.v);
        let n = a.n as f64;
        prop_assert!(a.v >= 0.0 && a.v <= n * (n - 1.0) / 2.0);
    }
}
