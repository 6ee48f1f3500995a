//! Theta series, Gaussian wavefunctions and Zak-transformed (theta) states.

use std::collections::HashMap;
use std::f64::consts::{PI, SQRT_2};
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::CircleConfig;
use crate::error::{Error, Result};
use crate::quadrature::simpson_rule;
use crate::state::MomentumState;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Hard cap on the theta series half-width.
pub const THETA_MAX_TERMS: usize = 500;

/// Relative tolerance used by [`theta_position`].
pub const THETA_TOL: f64 = 1e-17;

/// Gaussian displacement parameter `A = A_R + i·A_I`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    pub a: Complex64,
}

impl GaussianParams {
    pub fn new(a_re: f64, a_im: f64) -> Self {
        Self { a: Complex64::new(a_re, a_im) }
    }
}

/// `Θ₃[u; τ] = Σ_n exp(iπτn² + 2inu)`.
///
/// Terms `n` and `−n` are added as a pair, in ascending `|n|`, and the series
/// stops once a pair's magnitude drops below `tol·max(|partial sum|, 1)`.
pub fn theta3(u: Complex64, tau: Complex64, tol: f64) -> Result<Complex64> {
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(Error::ThetaDomain(tau.im));
    }
    let term = |n: f64| (I * PI * tau * (n * n) + I * 2.0 * n * u).exp();
    let mut sum = Complex64::new(1.0, 0.0);
    for n in 1..=THETA_MAX_TERMS {
        let (plus, minus) = (term(n as f64), term(-(n as f64)));
        sum += plus + minus;
        if plus.norm() + minus.norm() < tol * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::ThetaNoConvergence(THETA_MAX_TERMS))
}

/// `S(y; A) = π^{−1/4}·exp(−y²/2 + √2·A·y − A·A_R)`, unit norm on the line.
pub fn gaussian_position(params: &GaussianParams, y: f64) -> Complex64 {
    let a = params.a;
    PI.powf(-0.25) * (Complex64::new(-0.5 * y * y, 0.0) + SQRT_2 * a * y - a * a.re).exp()
}

/// Fourier transform `S̃(p) = ∫ S(x) exp(−ipx) dx`
/// `= √2·π^{1/4}·exp(−p²/2 − i√2·A·p + i·A·A_I)`.
pub fn gaussian_momentum(params: &GaussianParams, p: f64) -> Complex64 {
    let a = params.a;
    SQRT_2 * PI.powf(0.25) * (Complex64::new(-0.5 * p * p, 0.0) - I * SQRT_2 * a * p + I * a * a.im).exp()
}

/// Zak transform of the Gaussian in the momentum basis:
/// `c_N ∝ S̃(p_N)/2πr`, normalized.
pub fn zak_state(config: &CircleConfig, params: &GaussianParams) -> Result<MomentumState> {
    let scale = 1.0 / config.period();
    let raw = MomentumState::from_fn(*config, |n| gaussian_momentum(params, config.momentum(n)) * scale);
    raw.normalize().map_err(|_| Error::Underflow)
}

/// Unnormalized closed form `π^{−1/4}·exp(−x²/2 + √2Ax − A·A_R)·Θ₃[−πσ + iπr(x − √2A); i2πr²]`.
fn theta_unnormalized(config: &CircleConfig, params: &GaussianParams, x: f64) -> Result<Complex64> {
    let r = config.radius();
    let a = params.a;
    let u = Complex64::new(-PI * config.sigma(), 0.0) + I * PI * r * (Complex64::new(x, 0.0) - SQRT_2 * a);
    let tau = Complex64::new(0.0, 2.0 * PI * r * r);
    Ok(gaussian_position(params, x) * theta3(u, tau, THETA_TOL)?)
}

type NormKey = (u64, u64, u64, u64, usize);

fn norm_cache() -> &'static RwLock<HashMap<NormKey, f64>> {
    static CACHE: OnceLock<RwLock<HashMap<NormKey, f64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Normalization constant of the theta wavefunction, from Simpson quadrature
/// of `|R|²` over one period with the config's panel count. Cached.
pub fn theta_normalization(config: &CircleConfig, params: &GaussianParams) -> Result<f64> {
    let key = (
        config.radius().to_bits(),
        config.sigma().to_bits(),
        params.a.re.to_bits(),
        params.a.im.to_bits(),
        config.quad_panels(),
    );
    if let Some(&n) = norm_cache().read().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return Ok(n);
    }
    let mut integral = 0.0;
    for (x, w) in simpson_rule(0.0, config.period(), config.quad_panels())? {
        integral += w * theta_unnormalized(config, params, x)?.norm_sqr();
    }
    let mean = integral / config.period();
    if mean.is_nan() || mean <= 0.0 {
        return Err(Error::Underflow);
    }
    let n = mean.sqrt().recip();
    // identical inputs give identical results, so a racing insert is harmless
    norm_cache().write().unwrap_or_else(|e| e.into_inner()).insert(key, n);
    Ok(n)
}

/// The normalized theta wavefunction `R(x, σ; A)` on the circle.
///
/// Evaluated directly from the closed form, so accuracy degrades once
/// `exp(−x²/2)` underflows (roughly `|x| > 35`).
pub fn theta_position(config: &CircleConfig, params: &GaussianParams, x: f64) -> Result<Complex64> {
    Ok(theta_normalization(config, params)? * theta_unnormalized(config, params, x)?)
}
