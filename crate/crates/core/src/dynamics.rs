//! Free evolution `Ĥ = p̂²` in the momentum representation.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::CircleConfig;
use crate::error::{Error, Result};
use crate::specialfn::GaussianParams;
use crate::state::MomentumState;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Sign of the evolution phase `exp(i·sign·t·p_N²)`.
///
/// `Positive` follows `exp(+itĤ)`; `Negative` is the textbook `exp(−itĤ)`.
/// The two are related by time reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PhaseSign {
    #[default]
    Positive,
    Negative,
}

impl PhaseSign {
    pub fn value(self) -> f64 {
        match self {
            PhaseSign::Positive => 1.0,
            PhaseSign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionParams {
    pub t: f64,
    pub sign: PhaseSign,
}

impl EvolutionParams {
    pub fn new(t: f64) -> Self {
        Self { t, sign: PhaseSign::Positive }
    }

    pub fn with_sign(t: f64, sign: PhaseSign) -> Self {
        Self { t, sign }
    }
}

/// `c_N ← exp(i·sign·t·p_N²)·c_N`.
pub fn evolve_free(state: &MomentumState, params: EvolutionParams) -> MomentumState {
    let cfg = *state.config();
    let s = params.sign.value() * params.t;
    state.map_coeffs(|n, c| {
        let p = cfg.momentum(n);
        c * Complex64::cis(s * p * p)
    })
}

/// Closed form `c_N ∝ exp[−(1/2 − i·sign·t)p_N² − i√2A·p_N + i·A·A_I]`, normalized.
pub fn evolved_zak_coefficients(
    config: &CircleConfig,
    params: &GaussianParams,
    evolution: EvolutionParams,
) -> Result<MomentumState> {
    let s = evolution.sign.value() * evolution.t;
    let a = params.a;
    let width = Complex64::new(0.5, -s);
    let raw = MomentumState::from_fn(*config, |n| {
        let p = config.momentum(n);
        (-width * (p * p) - I * SQRT_2 * a * p + I * a * a.im).exp()
    });
    raw.normalize().map_err(|_| Error::Underflow)
}
