//! Monte Carlo size and power studies.
//!
//! Replication `r` of spec `s` draws its sample from the stream keyed
//! `(master_seed, s, r, 0)` and seeds its bootstrap with
//! `derive(master_seed, s, r, 1)`. Replications run in parallel and are
//! aggregated in index order, so the output is the same for any thread
//! count.

use std::time::{Duration, Instant};

use monohazard_core::{pp_statistic, run_test, seed, Error, HazardModel, TestConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TestSelection {
    New,
    Global,
    Both,
}

impl TestSelection {
    fn new(self) -> bool {
        matches!(self, TestSelection::New | TestSelection::Both)
    }

    fn global(self) -> bool {
        matches!(self, TestSelection::Global | TestSelection::Both)
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub label: String,
    pub model: HazardModel,
    pub n: usize,
    pub mc_reps: usize,
    pub tests: TestSelection,
    pub config: TestConfig,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), Error> {
        if self.mc_reps < 10 {
            return Err(Error::InvalidConfig(format!(
                "{}: mc_reps must be >= 10, got {}",
                self.label, self.mc_reps
            )));
        }
        if self.n < 10 {
            return Err(Error::InvalidConfig(format!(
                "{}: n must be >= 10, got {}",
                self.label, self.n
            )));
        }
        self.model.validate()?;
        self.config.validate()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerStudyResult {
    pub label: String,
    pub model_params: String,
    pub n: usize,
    pub mc_reps: usize,
    pub test_name: String,
    pub alpha: f64,
    pub reject_rate: f64,
    pub mc_se: f64,
    pub mean_h_start: Option<f64>,
    pub mean_h_crit: Option<f64>,
    /// Mean of `h_crit / h_start` over successful replications.
    pub mean_h_ratio: Option<f64>,
    #[serde(rename = "mean_T")]
    pub mean_t: Option<f64>,
    pub failures: usize,
    pub config: TestConfig,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy)]
struct NewOutcome {
    reject: bool,
    h_start: f64,
    h_crit: f64,
    t: f64,
}

#[derive(Debug, Clone)]
struct Replication {
    new: Option<Result<NewOutcome, Error>>,
    global: Option<Result<bool, Error>>,
}

fn replicate(spec: &ExperimentSpec, spec_index: usize, rep: usize, master_seed: u64) -> Replication {
    let path = [spec_index as u64, rep as u64];
    let mut rng = seed::stream(master_seed, &[path[0], path[1], 0]);
    let sample = spec.model.sample(spec.n, &mut rng);
    let new = spec.tests.new().then(|| {
        let sample = sample.as_ref().map_err(Clone::clone)?;
        let config = TestConfig {
            seed: seed::derive(master_seed, &[path[0], path[1], 1]),
            ..spec.config.clone()
        };
        let r = run_test(sample, &config, None)?;
        Ok(NewOutcome {
            reject: r.reject,
            h_start: r.h_start,
            h_crit: r.h_crit,
            t: r.t,
        })
    });
    let global = spec.tests.global().then(|| {
        let sample = sample.as_ref().map_err(Clone::clone)?;
        Ok(pp_statistic(sample, spec.config.alpha)?.reject)
    });
    Replication { new, global }
}

fn rate_and_se(rejections: usize, ok: usize) -> (f64, f64) {
    if ok == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = rejections as f64 / ok as f64;
    (p, (p * (1.0 - p) / ok as f64).sqrt())
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut s, mut k) = (0.0, 0usize);
    for x in xs {
        s += x;
        k += 1;
    }
    (k > 0).then(|| s / k as f64)
}

/// Runs every spec on a pool of `threads` workers (0 = one per core).
pub fn run_power_study(
    specs: &[ExperimentSpec],
    master_seed: u64,
    threads: usize,
) -> Result<Vec<PowerStudyResult>, Error> {
    for s in specs {
        s.validate()?;
    }
    let pool = exec::pool(threads);
    let mut out = Vec::new();
    for (si, spec) in specs.iter().enumerate() {
        let started = Instant::now();
        let reps: Vec<Replication> = pool.install(|| {
            (0..spec.mc_reps)
                .into_par_iter()
                .map(|r| replicate(spec, si, r, master_seed))
                .collect()
        });
        let wall_time = started.elapsed();
        let row = |test_name: &str| PowerStudyResult {
            label: spec.label.clone(),
            model_params: spec.model.describe(),
            n: spec.n,
            mc_reps: spec.mc_reps,
            test_name: test_name.to_string(),
            alpha: spec.config.alpha,
            reject_rate: f64::NAN,
            mc_se: f64::NAN,
            mean_h_start: None,
            mean_h_crit: None,
            mean_h_ratio: None,
            mean_t: None,
            failures: 0,
            config: spec.config.clone(),
            wall_time,
        };
        if spec.tests.new() {
            let ok: Vec<NewOutcome> = reps
                .iter()
                .filter_map(|r| r.new.as_ref().and_then(|o| o.as_ref().ok().copied()))
                .collect();
            let rejections = ok.iter().filter(|o| o.reject).count();
            let (rate, se) = rate_and_se(rejections, ok.len());
            out.push(PowerStudyResult {
                reject_rate: rate,
                mc_se: se,
                mean_h_start: mean(ok.iter().map(|o| o.h_start)),
                mean_h_crit: mean(ok.iter().map(|o| o.h_crit)),
                mean_h_ratio: mean(ok.iter().map(|o| o.h_crit / o.h_start)),
                mean_t: mean(ok.iter().map(|o| o.t)),
                failures: spec.mc_reps - ok.len(),
                ..row("new")
            });
        }
        if spec.tests.global() {
            let ok: Vec<bool> = reps
                .iter()
                .filter_map(|r| r.global.as_ref().and_then(|o| o.as_ref().ok().copied()))
                .collect();
            let rejections = ok.iter().filter(|&&b| b).count();
            let (rate, se) = rate_and_se(rejections, ok.len());
            out.push(PowerStudyResult {
                reject_rate: rate,
                mc_se: se,
                failures: spec.mc_reps - ok.len(),
                ..row("global")
            });
        }
    }
    Ok(out)
}
