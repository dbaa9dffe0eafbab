//! Smoothed-bootstrap calibration at the critical bandwidth and the
//! end-to-end test.
//!
//! Resamples are drawn from the kernel-smoothed distribution through its
//! mixture form `X*_j = X_{I_j} + h ε_j`, which makes each draw exact and
//! `O(1)`. Resample `j` owns the random stream derived from
//! `(config.seed, j)`, so the bootstrap distribution is the same under any
//! execution order.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::config::TestConfig;
use crate::empirical::{default_region, Sample};
use crate::error::{Error, Result};
use crate::region::Region;
use crate::seed;
use crate::smoothing::{critical_bandwidth, reference_bandwidth};
use crate::statistic::{fit_region_to_support, statistic_t, statistic_t_resample};

/// Runs `count` independent index-keyed jobs and returns their results in
/// index order.
pub trait ResampleExecutor {
    fn map_indexed(&self, count: usize, job: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl ResampleExecutor for Sequential {
    fn map_indexed(&self, count: usize, job: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        (0..count).map(job).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    #[serde(rename = "T")]
    pub t: f64,
    pub h_start: f64,
    pub h_crit: f64,
    pub c_alpha: f64,
    pub p_value: f64,
    pub reject: bool,
    #[serde(rename = "B")]
    pub bootstrap_b: usize,
    pub region: Region,
    pub diagnostics: Vec<String>,
}

/// One draw of size `n` from the density `f(·|h)` of `sample`, sorted.
pub fn smoothed_bootstrap_sample<R: Rng + ?Sized>(sample: &Sample, h: f64, rng: &mut R) -> Sample {
    let xs = sample.values();
    let draws = (0..xs.len())
        .map(|_| {
            let i = rng.random_range(0..xs.len());
            let eps: f64 = rng.sample(StandardNormal);
            xs[i] + h * eps
        })
        .collect();
    Sample::new(draws).expect("finite draws from a finite sample")
}

pub fn bootstrap_distribution(
    sample: &Sample,
    region: &Region,
    h_crit: f64,
    config: &TestConfig,
) -> Result<Vec<f64>> {
    bootstrap_distribution_with(&Sequential, sample, region, h_crit, config)
}

/// Sorted bootstrap values of the statistic, each resample scored on the
/// region fixed from the original data.
pub fn bootstrap_distribution_with<E: ResampleExecutor + ?Sized>(
    exec: &E,
    sample: &Sample,
    region: &Region,
    h_crit: f64,
    config: &TestConfig,
) -> Result<Vec<f64>> {
    config.validate()?;
    if !(h_crit > 0.0 && h_crit.is_finite()) {
        return Err(Error::InvalidConfig(alloc::format!(
            "bootstrap bandwidth must be positive, got {h_crit}"
        )));
    }
    let job = |j: usize| {
        let mut rng = seed::stream(config.seed, &[j as u64]);
        let resample = smoothed_bootstrap_sample(sample, h_crit, &mut rng);
        statistic_t_resample(&resample, region, config)
    };
    let mut tstars = exec.map_indexed(config.bootstrap_b, &job);
    tstars.sort_unstable_by(f64::total_cmp);
    Ok(tstars)
}

/// The `ceil((1 - alpha) B)`-th smallest bootstrap value.
pub fn critical_point(tstars: &[f64], alpha: f64) -> f64 {
    let b = tstars.len();
    let k = libm::ceil((1.0 - alpha) * b as f64 - 1e-9).max(1.0) as usize;
    tstars[k.min(b) - 1]
}

/// `(1 + #{T* >= t_obs}) / (B + 1)`.
pub fn p_value(tstars: &[f64], t_obs: f64) -> f64 {
    let at_least = tstars.len() - tstars.partition_point(|&t| t < t_obs);
    (1 + at_least) as f64 / (tstars.len() + 1) as f64
}

pub fn run_test(
    sample: &Sample,
    config: &TestConfig,
    region_override: Option<&Region>,
) -> Result<TestResult> {
    run_test_with(&Sequential, sample, config, region_override)
}

/// The full pipeline: region, starting and critical bandwidth, observed
/// statistic, bootstrap distribution, critical point and decision.
pub fn run_test_with<E: ResampleExecutor + ?Sized>(
    exec: &E,
    sample: &Sample,
    config: &TestConfig,
    region_override: Option<&Region>,
) -> Result<TestResult> {
    config.validate()?;
    let mut diagnostics = Vec::new();
    let region = match region_override {
        Some(r) => r.clone(),
        None => default_region(sample).map_err(|e| e.at_stage("region"))?,
    };
    let (region, note) = fit_region_to_support(sample, &region, config.grid_points)
        .map_err(|e| e.at_stage("region"))?;
    diagnostics.extend(note);

    let h_start = reference_bandwidth(sample).map_err(|e| e.at_stage("starting bandwidth"))?;
    let h_crit = critical_bandwidth(sample, &region, h_start, config)
        .map_err(|e| e.at_stage("critical bandwidth"))?;
    let t = statistic_t(sample, &region, config).map_err(|e| e.at_stage("statistic"))?;
    let tstars = bootstrap_distribution_with(exec, sample, &region, h_crit, config)
        .map_err(|e| e.at_stage("bootstrap"))?;

    let c_alpha = critical_point(&tstars, config.alpha);
    Ok(TestResult {
        t,
        h_start,
        h_crit,
        c_alpha,
        p_value: p_value(&tstars, t),
        reject: t > c_alpha,
        bootstrap_b: tstars.len(),
        region,
        diagnostics,
    })
}
