//! Pure states in the truncated momentum basis.

use ndarray::Array1;
use num_complex::Complex64;

use crate::config::CircleConfig;
use crate::error::{Error, Result};

/// Coefficients `c_N = ⟨p_N|R⟩` for `N ∈ [−n_max, n_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumState {
    config: CircleConfig,
    coeffs: Array1<Complex64>,
}

impl MomentumState {
    pub fn from_coeffs(config: CircleConfig, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != config.dim() {
            return Err(Error::DimensionMismatch { expected: config.dim(), got: coeffs.len() });
        }
        Ok(Self { config, coeffs: Array1::from(coeffs) })
    }

    /// Build from a function of the momentum label.
    pub fn from_fn(config: CircleConfig, f: impl Fn(i64) -> Complex64) -> Self {
        let coeffs = config.labels().map(f).collect::<Vec<_>>();
        Self { config, coeffs: Array1::from(coeffs) }
    }

    /// The momentum eigenstate `|p_n⟩`.
    pub fn basis(config: CircleConfig, n: i64) -> Result<Self> {
        if !config.contains(n) {
            return Err(Error::IndexOutOfRange { n, n_max: config.n_max() });
        }
        Ok(Self::from_fn(config, |m| if m == n { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) }))
    }

    pub fn config(&self) -> &CircleConfig {
        &self.config
    }

    pub fn coeffs(&self) -> &Array1<Complex64> {
        &self.coeffs
    }

    /// `c_n`, zero outside the basis.
    pub fn coeff(&self, n: i64) -> Complex64 {
        self.config.index_of(n).map_or(Complex64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(Self { config: self.config, coeffs: self.coeffs.mapv(|c| c / norm) })
    }

    /// `⟨self|other⟩ = Σ conj(a_N)·b_N`.
    pub fn inner_product(&self, other: &MomentumState) -> Result<Complex64> {
        self.config.ensure_compatible(&other.config)?;
        Ok(self.coeffs.iter().zip(other.coeffs.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    /// `R(x) = Σ c_N exp(i p_N x)`.
    pub fn position_wavefunction(&self, x: f64) -> Complex64 {
        self.config
            .labels()
            .zip(self.coeffs.iter())
            .map(|(n, c)| c * Complex64::cis(self.config.momentum(n) * x))
            .sum()
    }

    pub(crate) fn map_coeffs(&self, f: impl Fn(i64, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .config
            .labels()
            .zip(self.coeffs.iter())
            .map(|(n, &c)| f(n, c))
            .collect::<Vec<_>>();
        Self { config: self.config, coeffs: Array1::from(coeffs) }
    }
}

pub fn inner_product(a: &MomentumState, b: &MomentumState) -> Result<Complex64> {
    a.inner_product(b)
}

pub fn normalize(state: &MomentumState) -> Result<MomentumState> {
    state.normalize()
}

pub fn position_wavefunction(state: &MomentumState, x: f64) -> Complex64 {
    state.position_wavefunction(x)
}
