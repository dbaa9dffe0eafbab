//! Empirical distribution function, empirical cumulative hazard and the
//! order-statistic quantile used to build the default test region.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::region::Region;

/// A sorted sample of at least two finite observations.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    /// Sorts `values` and checks the sample invariants.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidSample(format!(
                "need at least 2 observations, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!(
                "observation {i} is not finite ({})",
                values[i]
            )));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Number of observations `<= x`.
    #[inline]
    pub fn count_le(&self, x: f64) -> usize {
        self.values.partition_point(|&v| v <= x)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Standard deviation with divisor `n - 1`.
    pub fn std_dev(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self.values.iter().map(|v| (v - m) * (v - m)).sum();
        libm::sqrt(ss / (self.values.len() - 1) as f64)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

pub fn ecdf(sample: &Sample, x: f64) -> f64 {
    sample.count_le(x) as f64 / sample.len() as f64
}

pub fn cum_hazard_emp(sample: &Sample, x: f64) -> Result<f64> {
    let f = ecdf(sample, x);
    if f >= 1.0 {
        return Err(Error::DomainError { x });
    }
    Ok(-libm::log(1.0 - f))
}

/// The order statistic `X_(ceil(n p))`.
pub fn empirical_quantile(sample: &Sample, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "quantile level must lie in (0, 1), got {p}"
        )));
    }
    let n = sample.len();
    // Guard against n*p landing a rounding error above an integer.
    let k = libm::ceil(n as f64 * p - 1e-9).max(1.0) as usize;
    Ok(sample.values[k.min(n) - 1])
}

/// `[0, X_(ceil(0.95 n))]`.
pub fn default_region(sample: &Sample) -> Result<Region> {
    let hi = empirical_quantile(sample, 0.95)?;
    if !(hi > 0.0) {
        return Err(Error::DegenerateRegion { hi });
    }
    Region::single(0.0, hi)
}

/// The empirical cumulative hazard as a lookup table over order statistics.
///
/// `H(x) = -log(1 - k/n)` with `k = #{X_i <= x}`; `+inf` once `k = n`.
#[derive(Debug, Clone)]
pub struct EmpiricalHazard<'a> {
    sample: &'a Sample,
    table: Vec<f64>,
}

impl<'a> EmpiricalHazard<'a> {
    pub fn new(sample: &'a Sample) -> Self {
        let n = sample.len();
        let table = (0..=n)
            .map(|k| {
                if k == n {
                    f64::INFINITY
                } else {
                    -libm::log(1.0 - k as f64 / n as f64)
                }
            })
            .collect();
        EmpiricalHazard { sample, table }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.table[self.sample.count_le(x)]
    }

    #[inline]
    pub fn value_at_count(&self, k: usize) -> f64 {
        self.table[k]
    }

    pub fn sample(&self) -> &Sample {
        self.sample
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ecdf_counts() {
        let x = s(&[1.0, 2.0, 3.0]);
        assert_eq!(ecdf(&x, 2.0), 2.0 / 3.0);
        assert_eq!(ecdf(&x, 0.5), 0.0);
        assert_eq!(ecdf(&x, 3.0), 1.0);
    }

    #[test]
    fn cumulative_hazard_examples() {
        let x = s(&[1.0, 2.0, 3.0]);
        assert!((cum_hazard_emp(&x, 2.0).unwrap() - libm::log(3.0)).abs() < 1e-15);
        assert_eq!(cum_hazard_emp(&x, 0.0).unwrap(), 0.0);
        assert_eq!(cum_hazard_emp(&x, 3.0), Err(Error::DomainError { x: 3.0 }));
    }

    #[test]
    fn quantile_examples() {
        let x = s(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(empirical_quantile(&x, 0.5).unwrap(), 2.0);
        assert_eq!(empirical_quantile(&x, 0.95).unwrap(), 4.0);
        assert!(empirical_quantile(&x, 1.0).is_err());
        assert!(Sample::new(vec![5.0]).is_err());
    }

    #[test]
    fn default_region_examples() {
        let x = s(&(1..=20).map(f64::from).collect::<Vec<_>>());
        assert_eq!(default_region(&x).unwrap(), Region::single(0.0, 19.0).unwrap());
        let flat = s(&[5.0; 10]);
        assert_eq!(default_region(&flat).unwrap(), Region::single(0.0, 5.0).unwrap());
        let neg = s(&[-3.0, -2.0, -1.0]);
        assert_eq!(default_region(&neg), Err(Error::DegenerateRegion { hi: -1.0 }));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(Sample::new(vec![1.0, f64::NAN]).is_err());
        assert!(Sample::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn table_matches_direct_formula() {
        let x = s(&[0.3, 0.3, 1.0, 2.5, 4.0]);
        let h = EmpiricalHazard::new(&x);
        for t in [-1.0, 0.3, 0.5, 1.0, 3.0, 3.999] {
            assert_eq!(h.eval(t), cum_hazard_emp(&x, t).unwrap());
        }
        assert!(h.eval(4.0).is_infinite());
    }
}
