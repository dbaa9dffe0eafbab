//! Gaussian kernel density estimate, its derivative and distribution
//! function, the curvature of the smoothed cumulative hazard
//!
//! ```text
//! H''(x) = ({1 - F(x)} f'(x) + f(x)^2) / {1 - F(x)}^2
//! ```
//!
//! and the search for the smallest bandwidth, at or above a starting value,
//! for which that curvature is positive throughout the region.

use alloc::format;

use crate::config::TestConfig;
use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::region::Region;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const SURVIVAL_FLOOR: f64 = 1e-12;
const SCAN_STRIDE: usize = 64;
/// Beyond this many bandwidths a data point's kernel contributes nothing to
/// the density in double precision.
const KERNEL_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[non_exhaustive]
pub enum Kernel {
    #[default]
    Gaussian,
}

impl Kernel {
    #[inline]
    pub fn density(self, u: f64) -> f64 {
        match self {
            Kernel::Gaussian => FRAC_1_SQRT_2PI * libm::exp(-0.5 * u * u),
        }
    }

    #[inline]
    pub fn density_deriv(self, u: f64) -> f64 {
        match self {
            Kernel::Gaussian => -u * self.density(u),
        }
    }

    /// Upper tail `P(U > u)`.
    #[inline]
    pub fn survival(self, u: f64) -> f64 {
        match self {
            Kernel::Gaussian => 0.5 * libm::erfc(u * core::f64::consts::FRAC_1_SQRT_2),
        }
    }

    #[inline]
    pub fn cdf(self, u: f64) -> f64 {
        self.survival(-u)
    }
}

/// Kernel density estimate `f(x|h) = (nh)^-1 Σ K((x - X_i)/h)`.
#[derive(Debug, Clone, Copy)]
pub struct KdeModel<'a> {
    data: &'a Sample,
    h: f64,
    kernel: Kernel,
}

/// Density, its derivative and the survival function at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KdePieces {
    pub pdf: f64,
    pub pdf_deriv: f64,
    pub survival: f64,
}

impl<'a> KdeModel<'a> {
    pub fn new(data: &'a Sample, h: f64) -> Result<Self> {
        Self::with_kernel(data, h, Kernel::Gaussian)
    }

    pub fn with_kernel(data: &'a Sample, h: f64, kernel: Kernel) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidConfig(format!("bandwidth must be positive, got {h}")));
        }
        Ok(KdeModel { data, h, kernel })
    }

    pub fn bandwidth(&self) -> f64 {
        self.h
    }

    pub fn data(&self) -> &Sample {
        self.data
    }

    fn n(&self) -> f64 {
        self.data.len() as f64
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let s: f64 = self
            .data
            .values()
            .iter()
            .map(|&xi| self.kernel.density((x - xi) / self.h))
            .sum();
        s / (self.n() * self.h)
    }

    pub fn pdf_deriv(&self, x: f64) -> f64 {
        let s: f64 = self
            .data
            .values()
            .iter()
            .map(|&xi| self.kernel.density_deriv((x - xi) / self.h))
            .sum();
        s / (self.n() * self.h * self.h)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let s: f64 = self
            .data
            .values()
            .iter()
            .map(|&xi| self.kernel.cdf((x - xi) / self.h))
            .sum();
        s / self.n()
    }

    /// `1 - F(x)`, summed from the upper tails to avoid cancellation.
    pub fn survival(&self, x: f64) -> f64 {
        let s: f64 = self
            .data
            .values()
            .iter()
            .map(|&xi| self.kernel.survival((x - xi) / self.h))
            .sum();
        s / self.n()
    }

    /// One pass over the data for all three quantities.
    pub fn pieces(&self, x: f64) -> KdePieces {
        let (mut f, mut fd, mut sv) = (0.0, 0.0, 0.0);
        for &xi in self.data.values() {
            let u = (x - xi) / self.h;
            if u > KERNEL_CUTOFF {
                continue;
            }
            if u < -KERNEL_CUTOFF {
                sv += 1.0;
                continue;
            }
            let k = self.kernel.density(u);
            f += k;
            fd -= u * k;
            sv += self.kernel.survival(u);
        }
        let n = self.n();
        KdePieces {
            pdf: f / (n * self.h),
            pdf_deriv: fd / (n * self.h * self.h),
            survival: sv / n,
        }
    }

    /// Curvature of `-log(1 - F)` at `x`.
    pub fn h2_tilde(&self, x: f64) -> Result<f64> {
        let p = self.pieces(x);
        if p.survival < SURVIVAL_FLOOR {
            return Err(Error::SurvivalUnderflow {
                x,
                survival: p.survival,
            });
        }
        Ok((p.survival * p.pdf_deriv + p.pdf * p.pdf) / (p.survival * p.survival))
    }

    /// True when the curvature is strictly positive at `m` equally spaced
    /// points (endpoints included) on every interval of `region`.
    ///
    /// Points are visited coarse-to-fine (stride 64, then the remaining
    /// points at stride 32, ...), so failing bandwidths usually exit early;
    /// the answer does not depend on the order.
    pub fn curvature_positive_on(&self, region: &Region, m: usize) -> Result<bool> {
        for iv in region.intervals() {
            let step = iv.width() / (m - 1) as f64;
            let point = |k: usize| if k + 1 == m { iv.hi } else { iv.lo + k as f64 * step };
            let mut stride = SCAN_STRIDE;
            let mut first = true;
            while stride >= 1 {
                let mut k = if first { 0 } else { stride };
                while k < m {
                    if !(self.h2_tilde(point(k))? > 0.0) {
                        return Ok(false);
                    }
                    k += if first { stride } else { 2 * stride };
                }
                first = false;
                stride /= 2;
            }
        }
        Ok(true)
    }
}

/// Normal reference rule `1.06 n^(-1/5) sd`.
pub fn reference_bandwidth(sample: &Sample) -> Result<f64> {
    let sd = sample.std_dev();
    if !(sd > 0.0) {
        return Err(Error::ZeroVariance);
    }
    Ok(1.06 * libm::pow(sample.len() as f64, -0.2) * sd)
}

/// Smallest bandwidth `>= h_start` whose smoothed cumulative hazard has
/// strictly positive curvature at every point of the sign grid.
///
/// A geometric ladder from `h_start` finds the first passing bandwidth, then
/// bisection against the last failing one narrows the bracket to
/// `bisect_tol` relative width. The passing end of the bracket is returned.
pub fn critical_bandwidth(
    sample: &Sample,
    region: &Region,
    h_start: f64,
    config: &TestConfig,
) -> Result<f64> {
    let passes = |h: f64| KdeModel::new(sample, h)?.curvature_positive_on(region, config.sign_grid_m);
    if passes(h_start)? {
        return Ok(h_start);
    }
    let h_max = config.ladder_max_mult * h_start;
    let mut fail = h_start;
    let mut pass = h_start * config.ladder_factor;
    while !passes(pass)? {
        if pass > h_max {
            return Err(Error::LadderExhausted { h_start, h_max });
        }
        fail = pass;
        pass *= config.ladder_factor;
    }
    while (pass - fail) > config.bisect_tol * pass {
        let mid = 0.5 * (fail + pass);
        if passes(mid)? {
            pass = mid;
        } else {
            fail = mid;
        }
    }
    Ok(pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn s(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * a.abs().max(b.abs())
    }

    #[test]
    fn pdf_examples() {
        let zeros = s(&[0.0, 0.0]);
        let m = KdeModel::new(&zeros, 1.0).unwrap();
        assert!((m.pdf(0.0) - 0.398_942_280_401_432_7).abs() < 1e-15);
        assert_eq!(m.pdf_deriv(0.0), 0.0);
        assert_eq!(m.cdf(0.0), 0.5);

        let pm = s(&[-1.0, 1.0]);
        let m = KdeModel::new(&pm, 1.0).unwrap();
        assert!((m.pdf(0.0) - 0.241_970_724_519_143_37).abs() < 1e-15);
        assert_eq!(m.pdf_deriv(0.0), 0.0);
        assert!(m.h2_tilde(0.0).unwrap() > 0.0);
    }

    #[test]
    fn pdf_three_point_hand_sum() {
        // Three kernel terms at u = 2, 0, -2 with h = 0.5.
        let d = s(&[1.0, 2.0, 3.0]);
        let m = KdeModel::new(&d, 0.5).unwrap();
        let phi = |u: f64| libm::exp(-0.5 * u * u) / libm::sqrt(2.0 * core::f64::consts::PI);
        let expect = (phi(2.0) + phi(0.0) + phi(-2.0)) / (3.0 * 0.5);
        assert!(close(m.pdf(2.0), expect, 1e-14));
    }

    #[test]
    fn derivative_matches_central_difference() {
        let d = s(&[1.0, 2.0, 3.0]);
        let m = KdeModel::new(&d, 0.5).unwrap();
        let delta = 1e-5;
        let fd = (m.pdf(1.7 + delta) - m.pdf(1.7 - delta)) / (2.0 * delta);
        assert!(close(m.pdf_deriv(1.7), fd, 1e-6));
    }

    #[test]
    fn cdf_limits_and_survival_complement() {
        let d = s(&[1.0, 2.0, 3.0]);
        let m = KdeModel::new(&d, 0.5).unwrap();
        assert!(m.cdf(1.0 - 20.0 * 0.5) < 1e-12);
        assert!((m.cdf(3.0 + 20.0 * 0.5) - 1.0).abs() < 1e-12);
        for x in [0.0, 1.2, 2.0, 3.7] {
            assert!((m.cdf(x) + m.survival(x) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn pieces_agree_with_separate_sums() {
        let d = s(&[0.2, 0.5, 1.1, 1.3, 2.8]);
        let m = KdeModel::new(&d, 0.3).unwrap();
        for x in [0.0, 0.7, 1.2, 2.0, 3.5] {
            let p = m.pieces(x);
            assert!(close(p.pdf, m.pdf(x), 1e-14));
            assert!((p.pdf_deriv - m.pdf_deriv(x)).abs() < 1e-13);
            assert!(close(p.survival, m.survival(x), 1e-14));
        }
    }

    #[test]
    fn curvature_closed_form_at_point_mass() {
        let zeros = s(&[0.0, 0.0]);
        let m = KdeModel::new(&zeros, 1.0).unwrap();
        let v = m.h2_tilde(0.0).unwrap();
        assert!((v - 4.0 / (2.0 * core::f64::consts::PI)).abs() < 1e-14);
    }

    #[test]
    fn curvature_underflow_is_reported() {
        let d = s(&[0.0, 1.0]);
        let m = KdeModel::new(&d, 0.1).unwrap();
        assert!(matches!(
            m.h2_tilde(50.0),
            Err(Error::SurvivalUnderflow { .. })
        ));
    }

    #[test]
    fn reference_bandwidth_arithmetic() {
        // 1.06 * 50^(-1/5) = 0.484743355..., times the sample sd.
        let v: Vec<f64> = (0..50).map(|i| libm::sin(i as f64)).collect();
        let sample = s(&v);
        let h = reference_bandwidth(&sample).unwrap();
        assert!((h / sample.std_dev() - 0.484_743_355_042_965_9).abs() < 1e-12);

        assert_eq!(reference_bandwidth(&s(&[2.0; 5])), Err(Error::ZeroVariance));

        let base = s(&[0.3, 1.0, 1.7, 2.2, 4.0]);
        let scaled = s(&[0.9, 3.0, 5.1, 6.6, 12.0]);
        assert!(close(
            reference_bandwidth(&scaled).unwrap(),
            3.0 * reference_bandwidth(&base).unwrap(),
            1e-14
        ));
    }

    #[test]
    fn huge_start_bandwidth_is_returned_unchanged() {
        let d = s(&[0.1, 0.3, 0.35, 0.9, 1.4, 1.45, 2.5]);
        let region = Region::single(0.0, 1.5).unwrap();
        let cfg = TestConfig::default();
        let h0 = 100.0 * 2.4;
        assert_eq!(critical_bandwidth(&d, &region, h0, &cfg).unwrap(), h0);
    }

    #[test]
    fn critical_bandwidth_is_a_passing_bandwidth() {
        // A clustered sample with a gap forces the ladder to climb.
        let d = s(&[0.1, 0.12, 0.15, 0.2, 0.22, 1.0, 1.05, 1.1, 1.2, 2.0]);
        let region = Region::single(0.0, 1.2).unwrap();
        let cfg = TestConfig::default();
        let h0 = 0.02;
        let hc = critical_bandwidth(&d, &region, h0, &cfg).unwrap();
        assert!(hc > h0);
        let kde = KdeModel::new(&d, hc).unwrap();
        assert!(kde.curvature_positive_on(&region, cfg.sign_grid_m).unwrap());
    }

    #[test]
    fn strided_scan_matches_plain_scan() {
        let d = s(&[0.1, 0.12, 0.15, 0.2, 0.22, 1.0, 1.05, 1.1, 1.2, 2.0]);
        let region = Region::single(0.0, 1.2).unwrap();
        for m in [2, 3, 100, 512, 513] {
            for k in 0..40 {
                let h = 0.02 * libm::pow(1.1, k as f64);
                let kde = KdeModel::new(&d, h).unwrap();
                let iv = region.intervals()[0];
                let plain = (0..m).all(|j| {
                    let x = if j + 1 == m { iv.hi } else { iv.lo + j as f64 * iv.width() / (m - 1) as f64 };
                    kde.h2_tilde(x).unwrap() > 0.0
                });
                assert_eq!(kde.curvature_positive_on(&region, m).unwrap(), plain, "m={m} h={h}");
            }
        }
    }

    #[test]
    fn ladder_cap_is_enforced() {
        let d = s(&[0.1, 0.12, 0.15, 0.2, 0.22, 1.0, 1.05, 1.1, 1.2, 2.0]);
        let region = Region::single(0.0, 1.2).unwrap();
        let cfg = TestConfig { ladder_max_mult: 1.01, ..TestConfig::default() };
        assert!(matches!(
            critical_bandwidth(&d, &region, 0.02, &cfg),
            Err(Error::LadderExhausted { .. })
        ));
    }
}
