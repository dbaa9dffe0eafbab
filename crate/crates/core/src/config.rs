//! Test configuration: statistic exponent and weight, quadrature resolution,
//! bootstrap size, level and the bandwidth-search knobs.

use alloc::format;
use alloc::sync::Arc;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weight `w(x, y)` applied to the integrand of the statistic.
#[derive(Clone, Default)]
pub enum Weight {
    #[default]
    Unit,
    Custom(Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>),
}

impl Weight {
    pub fn custom(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        Weight::Custom(Arc::new(f))
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        matches!(self, Weight::Unit)
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self {
            Weight::Unit => 1.0,
            Weight::Custom(f) => f(x, y),
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Unit => f.write_str("Unit"),
            Weight::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Weight::Unit => "unit",
            Weight::Custom(_) => "custom",
        })
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let s = <&str>::deserialize(d)?;
        match s {
            "unit" => Ok(Weight::Unit),
            other => Err(serde::de::Error::custom(format!(
                "weight {other:?} cannot be deserialized; only \"unit\" is supported"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TestConfig {
    /// Exponent applied to the positive part of the second difference.
    pub r: f64,
    pub weight: Weight,
    /// Cells per axis in the quadrature of the statistic.
    pub grid_points: usize,
    pub bootstrap_b: usize,
    pub alpha: f64,
    pub ladder_factor: f64,
    /// The bandwidth search gives up above `ladder_max_mult * h_start`.
    pub ladder_max_mult: f64,
    /// Points per region interval in the curvature positivity scan.
    pub sign_grid_m: usize,
    /// Relative width at which the bandwidth bisection stops.
    pub bisect_tol: f64,
    pub seed: u64,
}

impl Default for TestConfig {
    fn default() -> Self {
        TestConfig {
            r: 1.0,
            weight: Weight::Unit,
            grid_points: 200,
            bootstrap_b: 1000,
            alpha: 0.10,
            ladder_factor: 1.05,
            ladder_max_mult: 50.0,
            sign_grid_m: 512,
            bisect_tol: 1e-3,
            seed: 0,
        }
    }
}

impl TestConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if !(self.r > 0.0 && self.r.is_finite()) {
            return bad(format!("r must be positive, got {}", self.r));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if self.grid_points < 16 {
            return bad(format!("grid_points must be >= 16, got {}", self.grid_points));
        }
        if self.bootstrap_b < 20 {
            return bad(format!("bootstrap_b must be >= 20, got {}", self.bootstrap_b));
        }
        if !(self.ladder_factor > 1.0 && self.ladder_factor.is_finite()) {
            return bad(format!("ladder_factor must exceed 1, got {}", self.ladder_factor));
        }
        if !(self.ladder_max_mult >= 1.0 && self.ladder_max_mult.is_finite()) {
            return bad(format!(
                "ladder_max_mult must be at least 1, got {}",
                self.ladder_max_mult
            ));
        }
        if self.sign_grid_m < 2 {
            return bad(format!("sign_grid_m must be >= 2, got {}", self.sign_grid_m));
        }
        if !(self.bisect_tol > 0.0 && self.bisect_tol < 1.0) {
            return bad(format!("bisect_tol must lie in (0, 1), got {}", self.bisect_tol));
        }
        Ok(())
    }
}
