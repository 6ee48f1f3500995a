//! Position/momentum kinematics: the sinc-type delta, projection from the
//! position domain, and the `x̂`, `p̂` matrices.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64;

use crate::config::CircleConfig;
use crate::error::Result;
use crate::matrix::{Band, OperatorMatrix};
use crate::quadrature::simpson;

/// `sin(πx)` with argument reduction to `[−1, 1]`.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).sin()
}

fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    (PI * r).cos()
}

/// `Δ(x) = (1/2π)∫₀^{2π} exp(iβx) dβ = exp(iπx)·sin(πx)/(πx)`.
///
/// Exactly `1` at zero and exactly `0` at every other integer.
pub fn delta_sinc(x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    if x.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = sin_pi(x);
    let sinc = s / (PI * x);
    Complex64::new(cos_pi(x) * sinc, s * sinc)
}

/// `R_n = (1/2πr)∫₀^{2πr} exp(−i p_n x) f(x) dx` by composite Simpson.
pub fn project_to_momentum(
    config: &CircleConfig,
    f: impl Fn(f64) -> Complex64,
    n: i64,
    panels: usize,
) -> Result<Complex64> {
    let p = config.momentum(n);
    let integral = simpson(|x| Complex64::cis(-p * x) * f(x), 0.0, config.period(), panels)?;
    Ok(integral / config.period())
}

/// `⟨p_M|x̂|p_N⟩ = (1/2πr)∫₀^{2πr} x·exp(ix(N − M)/r) dx`:
/// `πr` on the diagonal and `i·r/(M − N)` off it.
pub fn position_operator_matrix(config: &CircleConfig) -> OperatorMatrix {
    let r = config.radius();
    let d = config.dim();
    let mat = Array2::from_shape_fn((d, d), |(i, j)| {
        if i == j {
            Complex64::new(PI * r, 0.0)
        } else {
            Complex64::new(0.0, r / (i as f64 - j as f64))
        }
    });
    OperatorMatrix::from_dense(*config, mat)
}

/// Diagonal `p_N`.
pub fn momentum_operator_matrix(config: &CircleConfig) -> OperatorMatrix {
    let phases = config.labels().map(|n| Complex64::new(config.momentum(n), 0.0)).collect();
    OperatorMatrix::from_band(*config, Band { offset: 0, phases })
}
