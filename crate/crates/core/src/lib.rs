//! Nonparametric test of the hypothesis that a hazard rate is monotone
//! nondecreasing on a region, calibrated by a smoothed bootstrap drawn at the
//! critical bandwidth.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs plus caller-owned random streams; IO, threads and
//! file formats live in the `monohazard` companion crate.
//!
//! Module map:
//!
//! * [`empirical`]: samples, empirical CDF and cumulative hazard, quantiles.
//! * [`statistic`]: the convexity-violation statistic `T`.
//! * [`smoothing`]: Gaussian KDE, smoothed hazard curvature, critical bandwidth.
//! * [`calibration`]: smoothed bootstrap, critical point, p-value, end-to-end test.
//! * [`models`]: simulation models and their samplers.
//! * [`baseline`]: the normalized-spacings global sign test.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baseline;
pub mod calibration;
pub mod config;
pub mod empirical;
mod error;
pub mod models;
pub mod quad;
pub mod region;
pub mod roots;
pub mod seed;
pub mod smoothing;
pub mod statistic;

pub use crate::baseline::{normalized_spacings, pp_statistic, SpacingsStat};
pub use crate::calibration::{
    bootstrap_distribution, critical_point, p_value, run_test, run_test_with,
    smoothed_bootstrap_sample, ResampleExecutor, Sequential, TestResult,
};
pub use crate::config::{TestConfig, Weight};
pub use crate::empirical::{
    cum_hazard_emp, default_region, ecdf, empirical_quantile, EmpiricalHazard, Sample,
};
pub use crate::error::{Error, Result};
pub use crate::models::{HazardModel, ModelA, ModelB, Perturbed};
pub use crate::region::{Interval, Region};
pub use crate::smoothing::{critical_bandwidth, reference_bandwidth, Kernel, KdeModel};
pub use crate::statistic::{
    second_diff_emp, statistic_t, statistic_t_generic, statistic_t_piecewise,
};
