//! Global sign test on normalized spacings.
//!
//! Under an exponential parent the normalized spacings
//! `D_i = (n - i + 1)(X_(i) - X_(i-1))` are i.i.d.; an increasing hazard
//! makes them drift downward and a decreasing one upward. `V` counts pairs
//! `i < j` with `D_j > D_i` and is compared with its exchangeable-null
//! normal approximation; large `V` rejects the increasing-hazard null.

use alloc::vec::Vec;

use serde::Serialize;

use crate::empirical::Sample;
use crate::error::{Error, Result};

pub const MIN_SPACINGS_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacingsStat {
    /// Increasing pairs, ties counted one half.
    #[serde(rename = "V")]
    pub v: f64,
    pub n: usize,
    pub z: f64,
    /// Upper-tail normal p-value of `z`.
    pub p_value: f64,
    pub reject: bool,
}

/// Normalized spacings with `X_(0) = 0`.
pub fn normalized_spacings(sample: &Sample) -> Vec<f64> {
    let xs = sample.values();
    let n = xs.len();
    let mut prev = 0.0;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let d = (n - i) as f64 * (x - prev);
            prev = x;
            d
        })
        .collect()
}

/// Returns whether the sample has tied observations (zero spacings).
pub fn has_ties(sample: &Sample) -> bool {
    sample.values().windows(2).any(|w| w[0] == w[1])
}

pub fn trend_count(d: &[f64]) -> f64 {
    let mut v = 0.0;
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            if d[j] > d[i] {
                v += 1.0;
            } else if d[j] == d[i] {
                v += 0.5;
            }
        }
    }
    v
}

pub fn pp_statistic(sample: &Sample, alpha: f64) -> Result<SpacingsStat> {
    let n = sample.len();
    if n < MIN_SPACINGS_N {
        return Err(Error::SampleTooSmall { n, min: MIN_SPACINGS_N });
    }
    let v = trend_count(&normalized_spacings(sample));
    let nf = n as f64;
    let mean = nf * (nf - 1.0) / 4.0;
    let var = nf * (nf - 1.0) * (2.0 * nf + 5.0) / 72.0;
    let z = (v - mean) / libm::sqrt(var);
    let p_value = 0.5 * libm::erfc(z * core::f64::consts::FRAC_1_SQRT_2);
    Ok(SpacingsStat {
        v,
        n,
        z,
        p_value,
        reject: p_value < alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn spacings_of_small_sample() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        let d = normalized_spacings(&s);
        assert_eq!(d, vec![3.0, 2.0, 1.0]);
        assert_eq!(trend_count(&d), 0.0);
        assert_eq!(trend_count(&[1.0, 2.0, 3.0]), 3.0);
    }

    #[test]
    fn tied_sample_has_zero_spacings() {
        let s = Sample::new(vec![2.0; 6]).unwrap();
        let d = normalized_spacings(&s);
        assert_eq!(d[0], 12.0);
        assert!(d[1..].iter().all(|&x| x == 0.0));
        assert!(has_ties(&s));
    }

    #[test]
    fn too_small() {
        let s = Sample::new(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(pp_statistic(&s, 0.1), Err(Error::SampleTooSmall { n: 4, min: 5 }));
    }

    #[test]
    fn decreasing_spacings_do_not_reject() {
        // Spacings that shrink with i carry no evidence of a decreasing hazard.
        let xs: Vec<f64> = (1..=30).map(|i| libm::sqrt(i as f64)).collect();
        let st = pp_statistic(&Sample::new(xs).unwrap(), 0.1).unwrap();
        assert!(st.z < 0.0 && !st.reject);
    }
}
