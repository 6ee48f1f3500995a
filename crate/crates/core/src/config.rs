//! The simulation frame: ring radius, flux and basis truncation.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_N_MAX: usize = 32;
pub const DEFAULT_PANELS: usize = 2048;

/// Radius `r`, flux `σ`, truncation `n_max` and default Simpson panel count.
///
/// Two configurations are compatible only when radius, sigma and `n_max`
/// agree bit for bit; the panel count is a numerical knob and is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleConfig {
    radius: f64,
    sigma: f64,
    n_max: usize,
    quad_panels: usize,
}

impl CircleConfig {
    pub fn new(radius: f64, sigma: f64, n_max: usize) -> Result<Self> {
        Self::with_panels(radius, sigma, n_max, DEFAULT_PANELS)
    }

    pub fn with_panels(radius: f64, sigma: f64, n_max: usize, quad_panels: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidConfig(format!("radius must be positive, got {radius}")));
        }
        if !sigma.is_finite() {
            return Err(Error::InvalidConfig(format!("sigma must be finite, got {sigma}")));
        }
        if n_max < 1 {
            return Err(Error::InvalidConfig("n_max must be at least 1".into()));
        }
        if quad_panels < 2 || !quad_panels.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!(
                "quadrature panels must be even and >= 2, got {quad_panels}"
            )));
        }
        Ok(Self { radius, sigma, n_max, quad_panels })
    }

    /// Same frame with a different flux.
    pub fn with_sigma(&self, sigma: f64) -> Result<Self> {
        Self::with_panels(self.radius, sigma, self.n_max, self.quad_panels)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn quad_panels(&self) -> usize {
        self.quad_panels
    }

    /// Basis dimension `2·n_max + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn labels(&self) -> RangeInclusive<i64> {
        let n = self.n_max as i64;
        -n..=n
    }

    pub fn contains(&self, n: i64) -> bool {
        n.unsigned_abs() as usize <= self.n_max
    }

    /// Array offset of label `n`, if representable.
    pub fn index_of(&self, n: i64) -> Option<usize> {
        self.contains(n).then(|| (n + self.n_max as i64) as usize)
    }

    pub fn label_of(&self, index: usize) -> i64 {
        index as i64 - self.n_max as i64
    }

    /// `p_N = (N + σ)/r`.
    pub fn momentum(&self, n: i64) -> f64 {
        (n as f64 + self.sigma) / self.radius
    }

    /// Circumference `2πr`.
    pub fn period(&self) -> f64 {
        2.0 * PI * self.radius
    }

    /// `floor(x / 2πr)`.
    pub fn winding_number(&self, x: f64) -> i64 {
        (x / self.period()).floor() as i64
    }

    pub fn is_compatible(&self, other: &CircleConfig) -> bool {
        self.radius.to_bits() == other.radius.to_bits()
            && self.sigma.to_bits() == other.sigma.to_bits()
            && self.n_max == other.n_max
    }

    pub fn ensure_compatible(&self, other: &CircleConfig) -> Result<()> {
        if self.is_compatible(other) {
            Ok(())
        } else {
            Err(Error::ConfigMismatch)
        }
    }
}

pub fn momentum_value(config: &CircleConfig, n: i64) -> f64 {
    config.momentum(n)
}

pub fn winding_number(config: &CircleConfig, x: f64) -> i64 {
    config.winding_number(x)
}
