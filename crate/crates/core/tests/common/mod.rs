#![allow(dead_code)]

use monohazard_core::{seed, HazardModel, ModelA, ModelB, Sample};

/// Two-sided Kolmogorov–Smirnov distance between a sorted sample and a CDF.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Count of observations `<= x` by linear scan.
pub fn count_le_linear(xs: &[f64], x: f64) -> usize {
    xs.iter().filter(|&&v| v <= x).count()
}

pub fn model_a(d: f64) -> HazardModel {
    HazardModel::ModelA(ModelA::new(2.5, 0.75, 0.5, d).unwrap())
}

pub fn model_b(gamma: f64, beta: f64, sigma: f64) -> HazardModel {
    HazardModel::ModelB(ModelB::new(gamma, beta, 1.0, sigma).unwrap())
}

pub fn exponential() -> HazardModel {
    model_b(0.0, 0.0, 0.1)
}

/// A spread of the simulation models used across the tests.
pub fn model_zoo() -> Vec<HazardModel> {
    vec![
        model_a(-1.0),
        model_a(0.0),
        model_a(1.5),
        exponential(),
        model_b(-0.5, 0.0, 0.1),
        model_b(1.0, 0.0, 0.1),
        model_b(0.0, 0.3, 0.1),
        model_b(0.5, 0.3, 0.2),
    ]
}

pub fn draw(model: &HazardModel, n: usize, seed_value: u64, index: u64) -> Sample {
    model.sample(n, &mut seed::stream(seed_value, &[index])).unwrap()
}

pub fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
