//! Simulation distributions.
//!
//! * [`ModelA`]: hazard `a{(x-b)^3 + b^3} + c + d x^2`, which is increasing
//!   for `d > 0`, has a single flat point for `d = 0` and a dip for `d < 0`.
//! * [`ModelB`]: hazard `x^γ exp(β φ_σ(x - μ))`, a power law with a
//!   multiplicative bump at `μ`.
//! * [`Perturbed`]: a base distribution plus a local wiggle
//!   `a ε^4 Ψ((x - center)/ε)` whose hazard decreases near `center`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::empirical::Sample;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson_panels;
use crate::roots::solve_increasing;

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const CUM_HAZARD_TOL: f64 = 1e-9;
/// Relative tolerance on the cumulative hazard when inverting a sampler.
const INVERSION_TOL: f64 = 1e-12;
const MONOTONE_GRID: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelA {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ModelA {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = ModelA { a, b, c, d };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let ModelA { a, b, c, d } = *self;
        if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "model A needs a, b, c > 0 (got a = {a}, b = {b}, c = {c})"
            )));
        }
        let min_d = model_a_min_d(a, b, c);
        if !(d >= min_d && d.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "model A needs d >= {min_d:.6} for a positive hazard (got d = {d})"
            )));
        }
        Ok(())
    }

    pub fn hazard(&self, x: f64) -> f64 {
        let ModelA { a, b, c, d } = *self;
        let u = x - b;
        a * (u * u * u + b * b * b) + c + d * x * x
    }

    /// Derivative of the hazard, i.e. the curvature of the cumulative hazard.
    pub fn hazard_slope(&self, x: f64) -> f64 {
        let u = x - self.b;
        3.0 * self.a * u * u + 2.0 * self.d * x
    }

    /// Integral of the hazard from 0.
    pub fn cum_hazard(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let ModelA { a, b, c, d } = *self;
        let u = x - b;
        let b4 = b * b * b * b;
        a * (0.25 * (u * u * u * u - b4) + b * b * b * x) + c * x + d * x * x * x / 3.0
    }

    pub fn cdf(&self, x: f64) -> f64 {
        -libm::expm1(-self.cum_hazard(x))
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        self.hazard(x) * libm::exp(-self.cum_hazard(x))
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        let draws = (0..n)
            .map(|_| {
                let e = exponential_draw(rng);
                solve_increasing(
                    |x| Ok(self.cum_hazard(x)),
                    |x| self.hazard(x),
                    e,
                    0.0,
                    e / self.c,
                    INVERSION_TOL,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Sample::new(draws)
    }
}

/// Smallest `d` for which the model A hazard stays nonnegative on `(0, ∞)`.
///
/// Positivity means `d >= g(x) = -(a{(x-b)^3 + b^3} + c) / x^2` for all
/// `x > 0`. `g' = -a + 3ab^2/x^2 + 2c/x^3` is strictly decreasing, so `g`
/// has a single maximum at the positive root of `a x^3 = 3ab^2 x + 2c`,
/// located here by bisection.
pub fn model_a_min_d(a: f64, b: f64, c: f64) -> f64 {
    let slope = |x: f64| -a + 3.0 * a * b * b / (x * x) + 2.0 * c / (x * x * x);
    let mut hi = b.max(1e-3);
    while slope(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = hi;
    while slope(lo) <= 0.0 {
        lo *= 0.5;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let u = x - b;
    -(a * (u * u * u + b * b * b) + c) / (x * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelB {
    pub gamma: f64,
    pub beta: f64,
    pub mu: f64,
    pub sigma: f64,
}

impl ModelB {
    pub fn new(gamma: f64, beta: f64, mu: f64, sigma: f64) -> Result<Self> {
        let m = ModelB { gamma, beta, mu, sigma };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let ModelB { gamma, beta, mu, sigma } = *self;
        if !(gamma > -1.0 && gamma.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "model B needs gamma > -1 for an integrable hazard (got {gamma})"
            )));
        }
        if !beta.is_finite() {
            return Err(Error::InvalidModel(format!("model B needs a finite beta (got {beta})")));
        }
        if !(mu > 0.0 && sigma > 0.0 && mu.is_finite() && sigma.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "model B needs mu, sigma > 0 (got mu = {mu}, sigma = {sigma})"
            )));
        }
        Ok(())
    }

    /// The multiplicative bump `exp(β φ_σ(x - μ))`.
    #[inline]
    fn bump(&self, x: f64) -> f64 {
        if self.beta == 0.0 {
            return 1.0;
        }
        let z = (x - self.mu) / self.sigma;
        libm::exp(self.beta * FRAC_1_SQRT_2PI / self.sigma * libm::exp(-0.5 * z * z))
    }

    pub fn hazard(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        libm::exp(self.gamma * libm::log(x)) * self.bump(x)
    }

    /// `∫_0^x t^γ bump(t) dt`, computed after substituting `s = t^(1+γ)`:
    /// the integral becomes `(1+γ)^-1 ∫_0^{x^(1+γ)} bump(s^(1/(1+γ))) ds`,
    /// whose integrand is bounded even where `t^γ` is singular at 0.
    pub fn cum_hazard(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        let p = 1.0 + self.gamma;
        let inv = 1.0 / p;
        let to_s = |t: f64| libm::pow(t, p);
        let g = |s: f64| self.bump(libm::pow(s, inv));

        // Resolve the bump window finely and the rest coarsely.
        let lo_t = (self.mu - 8.0 * self.sigma).clamp(0.0, x);
        let hi_t = (self.mu + 8.0 * self.sigma).clamp(0.0, x);
        let cuts = [0.0, to_s(lo_t), to_s(hi_t), to_s(x)];
        let panels = [4usize, 32, 4];
        let mut total = 0.0;
        for k in 0..3 {
            if cuts[k + 1] > cuts[k] {
                total += adaptive_simpson_panels(&g, cuts[k], cuts[k + 1], panels[k], CUM_HAZARD_TOL / 3.0)?;
            }
        }
        Ok(total * inv)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(-libm::expm1(-self.cum_hazard(x)?))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        if x <= 0.0 {
            return Ok(0.0);
        }
        Ok(self.hazard(x) * libm::exp(-self.cum_hazard(x)?))
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        let p = 1.0 + self.gamma;
        let draws = (0..n)
            .map(|_| {
                let e = exponential_draw(rng);
                solve_increasing(
                    |x| self.cum_hazard(x),
                    |x| self.hazard(x),
                    e,
                    0.0,
                    libm::pow(p * e, 1.0 / p),
                    INVERSION_TOL,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Sample::new(draws)
    }
}

/// Smooth taper, 1 on `[0, 1/2]`, 0 on `[1, ∞)`.
fn taper(t: f64) -> f64 {
    if t <= 0.5 {
        1.0
    } else if t >= 1.0 {
        0.0
    } else {
        blend(2.0 * (t - 0.5))
    }
}

fn taper_deriv(t: f64) -> f64 {
    if t <= 0.5 || t >= 1.0 {
        0.0
    } else {
        2.0 * blend_deriv(2.0 * (t - 0.5))
    }
}

#[inline]
fn flat(s: f64) -> f64 {
    if s > 0.0 {
        libm::exp(-1.0 / s)
    } else {
        0.0
    }
}

#[inline]
fn flat_deriv(s: f64) -> f64 {
    if s > 0.0 {
        flat(s) / (s * s)
    } else {
        0.0
    }
}

/// `e(1-s) / (e(1-s) + e(s))` with `e(s) = exp(-1/s)`: 1 at 0, 0 at 1, all
/// derivatives vanishing at both ends.
fn blend(s: f64) -> f64 {
    let (l, r) = (flat(1.0 - s), flat(s));
    l / (l + r)
}

fn blend_deriv(s: f64) -> f64 {
    let (l, r) = (flat(1.0 - s), flat(s));
    let (dl, dr) = (-flat_deriv(1.0 - s), flat_deriv(s));
    (dl * r - l * dr) / ((l + r) * (l + r))
}

/// `Ψ(x) = -x^4 taper(|x|)`: smooth, supported on `[-1, 1]`, exactly `-x^4`
/// on `|x| <= 1/2`.
pub fn psi_bump(x: f64) -> f64 {
    let x2 = x * x;
    -x2 * x2 * taper(x.abs())
}

/// `Ψ'`.
pub fn psi_bump_deriv(x: f64) -> f64 {
    let t = x.abs();
    -4.0 * x * x * x * taper(t) - x * x * x * x * taper_deriv(t) * x.signum()
}

/// Perturbation scale `n^(-1/7)`.
pub fn perturbation_scale(n: usize) -> f64 {
    libm::pow(n as f64, -1.0 / 7.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbed {
    pub base: Box<HazardModel>,
    /// Bump height `a`.
    pub height: f64,
    /// Bump half-width `ε`.
    pub eps: f64,
    pub center: f64,
}

impl Perturbed {
    pub fn new(base: HazardModel, height: f64, eps: f64, center: f64) -> Result<Self> {
        let p = Perturbed {
            base: Box::new(base),
            height,
            eps,
            center,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameter checks plus a scan for monotonicity of the perturbed CDF on
    /// a fine grid over the bump's support.
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !(self.height > 0.0 && self.eps > 0.0) || !(self.height.is_finite() && self.eps.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "perturbation needs height, eps > 0 (got {}, {})",
                self.height, self.eps
            )));
        }
        if !(self.center - self.eps >= 0.0 && self.center.is_finite()) {
            return Err(Error::InvalidModel(format!(
                "perturbation support [{}, {}] must lie in [0, ∞)",
                self.center - self.eps,
                self.center + self.eps
            )));
        }
        let lo = self.center - self.eps;
        let step = 2.0 * self.eps / (MONOTONE_GRID - 1) as f64;
        let mut prev = self.cdf(lo)?;
        for k in 1..MONOTONE_GRID {
            let x = lo + k as f64 * step;
            let f = self.cdf(x)?;
            if f < prev || f > 1.0 {
                return Err(Error::NonMonotoneCdf { x });
            }
            prev = f;
        }
        Ok(())
    }

    pub fn offset(&self, x: f64) -> f64 {
        let e2 = self.eps * self.eps;
        self.height * e2 * e2 * psi_bump((x - self.center) / self.eps)
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.base.cdf(x)? + self.offset(x))
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        let e3 = self.eps * self.eps * self.eps;
        Ok(self.base.pdf(x)? + self.height * e3 * psi_bump_deriv((x - self.center) / self.eps))
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        let draws = (0..n)
            .map(|_| {
                let u: f64 = rng.sample(Open01);
                solve_increasing(
                    |x| self.cdf(x),
                    |x| self.pdf(x).unwrap_or(0.0),
                    u,
                    0.0,
                    self.center,
                    INVERSION_TOL,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Sample::new(draws)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HazardModel {
    ModelA(ModelA),
    ModelB(ModelB),
    Perturbed(Perturbed),
}

impl HazardModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            HazardModel::ModelA(m) => m.validate(),
            HazardModel::ModelB(m) => m.validate(),
            HazardModel::Perturbed(m) => m.validate(),
        }
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            HazardModel::ModelA(m) => Ok(m.cdf(x)),
            HazardModel::ModelB(m) => m.cdf(x),
            HazardModel::Perturbed(m) => m.cdf(x),
        }
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        match self {
            HazardModel::ModelA(m) => Ok(m.pdf(x)),
            HazardModel::ModelB(m) => m.pdf(x),
            HazardModel::Perturbed(m) => m.pdf(x),
        }
    }

    /// `f / (1 - F)`.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        match self {
            HazardModel::ModelA(m) => Ok(m.hazard(x)),
            HazardModel::ModelB(m) => Ok(m.hazard(x)),
            HazardModel::Perturbed(m) => Ok(m.pdf(x)? / (1.0 - m.cdf(x)?)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        match self {
            HazardModel::ModelA(m) => m.sample(n, rng),
            HazardModel::ModelB(m) => m.sample(n, rng),
            HazardModel::Perturbed(m) => m.sample(n, rng),
        }
    }

    /// Compact `name(key=value;...)` label without commas, for CSV cells.
    pub fn describe(&self) -> String {
        match self {
            HazardModel::ModelA(m) => format!("modelA(a={};b={};c={};d={})", m.a, m.b, m.c, m.d),
            HazardModel::ModelB(m) => format!(
                "modelB(gamma={};beta={};mu={};sigma={})",
                m.gamma, m.beta, m.mu, m.sigma
            ),
            HazardModel::Perturbed(p) => format!(
                "perturbed(base={};height={};eps={};center={})",
                p.base.describe(),
                p.height,
                p.eps,
                p.center
            ),
        }
    }
}

fn exponential_draw<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -libm::log(u)
}
