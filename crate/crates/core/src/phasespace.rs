//! Wigner and Weyl functions on `S × Z`.
//!
//! `W̃(α, K) = Tr[ρ D(α, K)]` and `W(x, p_N) = Tr[ρ U(x, N)]`, both evaluated
//! from their momentum-basis sums, which are exact on the truncated basis.
//! Quadrature-based relations (marginals, trace products, the Weyl→Wigner
//! Fourier route) are provided for cross-checking.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::CircleConfig;
use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::exec::{pairwise_sum, Execution};
use crate::grid::{GridAxis, GridValues, PhaseGrid};
use crate::quadrature::simpson_rule;
use crate::state::MomentumState;

/// Largest imaginary part tolerated before a Wigner value is declared inconsistent.
pub const WIGNER_IMAG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WignerPoint {
    pub x: f64,
    pub n: i64,
}

impl WignerPoint {
    pub fn momentum(&self, config: &CircleConfig) -> f64 {
        config.momentum(self.n)
    }
}

/// Weyl function plus a flag set when `|k| > 2·n_max` (value is then zero).
pub fn weyl_function_flagged(rho: &DensityOperator, alpha: f64, k: i64) -> (Complex64, bool) {
    let cfg = rho.config();
    if k.unsigned_abs() as usize > 2 * cfg.n_max() {
        return (Complex64::new(0.0, 0.0), true);
    }
    let half = k as f64 / (2.0 * cfg.radius());
    let terms: Vec<Complex64> = cfg
        .labels()
        .filter(|&n| cfg.contains(n - k))
        .map(|n| rho.element(n - k, n) * Complex64::cis(-alpha * (cfg.momentum(n) - half)))
        .collect();
    (pairwise_sum(&terms), false)
}

/// `W̃(α, K) = Σ_N ⟨p_{N−K}|ρ|p_N⟩·exp(−iα(p_N − K/2r))`.
pub fn weyl_function(rho: &DensityOperator, alpha: f64, k: i64) -> Complex64 {
    weyl_function_flagged(rho, alpha, k).0
}

/// `Σ_K ⟨p_{N+K}|ρ|p_{N−K}⟩·exp(2ixK/r)` before the imaginary part is dropped.
pub fn wigner_function_complex(rho: &DensityOperator, x: f64, n: i64) -> Result<Complex64> {
    let cfg = rho.config();
    if !cfg.contains(n) {
        return Err(Error::IndexOutOfRange { n, n_max: cfg.n_max() });
    }
    let reach = cfg.n_max() as i64 - n.abs();
    let terms: Vec<Complex64> = (-reach..=reach)
        .map(|k| rho.element(n + k, n - k) * Complex64::cis(2.0 * x * k as f64 / cfg.radius()))
        .collect();
    Ok(pairwise_sum(&terms))
}

/// `W(x, p_n)`; real for Hermitian `ρ`.
pub fn wigner_function(rho: &DensityOperator, x: f64, n: i64) -> Result<f64> {
    let w = wigner_function_complex(rho, x, n)?;
    if w.im.abs() > WIGNER_IMAG_TOL {
        return Err(Error::ImaginaryWigner { imag: w.im });
    }
    Ok(w.re)
}

pub fn wigner_grid(rho: &DensityOperator, xs: &[f64], n_range: RangeInclusive<i64>) -> Result<PhaseGrid> {
    wigner_grid_with(rho, xs, n_range, Execution::default())
}

/// Wigner values with `x` as the outer axis and `n` inner.
pub fn wigner_grid_with(
    rho: &DensityOperator,
    xs: &[f64],
    n_range: RangeInclusive<i64>,
    exec: Execution,
) -> Result<PhaseGrid> {
    let ns: Vec<i64> = n_range.clone().collect();
    let values = exec.try_map(xs.len() * ns.len(), |i| {
        wigner_function(rho, xs[i / ns.len()], ns[i % ns.len()])
    })?;
    PhaseGrid::new(
        vec![GridAxis::new("x", xs.to_vec()), GridAxis::integers("n", n_range)],
        GridValues::Real(values),
        *rho.config(),
    )
}

pub fn weyl_grid(rho: &DensityOperator, alphas: &[f64], k_range: RangeInclusive<i64>) -> Result<PhaseGrid> {
    weyl_grid_with(rho, alphas, k_range, Execution::default())
}

/// Weyl values with `alpha` outer and `k` inner.
pub fn weyl_grid_with(
    rho: &DensityOperator,
    alphas: &[f64],
    k_range: RangeInclusive<i64>,
    exec: Execution,
) -> Result<PhaseGrid> {
    let limit = 2 * rho.config().n_max() as i64;
    if let Some(&k) = [*k_range.start(), *k_range.end()].iter().find(|k| k.abs() > limit) {
        return Err(Error::ShiftOutOfRange { k, limit });
    }
    let ks: Vec<i64> = k_range.clone().collect();
    let values = exec.map(alphas.len() * ks.len(), |i| {
        weyl_function(rho, alphas[i / ks.len()], ks[i % ks.len()])
    });
    PhaseGrid::new(
        vec![GridAxis::new("alpha", alphas.to_vec()), GridAxis::integers("k", k_range)],
        GridValues::Complex(values),
        *rho.config(),
    )
}

/// `(1/2πr)∫₀^{2πr} W(x, p_n) dx`.
pub fn wigner_marginal_momentum(rho: &DensityOperator, n: i64, panels: usize) -> Result<f64> {
    let cfg = rho.config();
    let mut acc = 0.0;
    for (x, w) in simpson_rule(0.0, cfg.period(), panels)? {
        acc += w * wigner_function(rho, x, n)?;
    }
    Ok(acc / cfg.period())
}

/// `Σ_n W(x, p_n)` over the basis.
pub fn wigner_marginal_position(rho: &DensityOperator, x: f64) -> Result<f64> {
    let values = rho
        .config()
        .labels()
        .map(|n| wigner_function(rho, x, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(pairwise_sum(&values))
}

pub fn trace_product(rho1: &DensityOperator, rho2: &DensityOperator, panels: usize) -> Result<f64> {
    trace_product_with(rho1, rho2, panels, Execution::default())
}

/// `(1/2πr)∫₀^{2πr} Σ_n W₁(x, p_n)·W₂(x, p_n) dx`.
pub fn trace_product_with(
    rho1: &DensityOperator,
    rho2: &DensityOperator,
    panels: usize,
    exec: Execution,
) -> Result<f64> {
    let cfg = rho1.config();
    cfg.ensure_compatible(rho2.config())?;
    let rule = simpson_rule(0.0, cfg.period(), panels)?;
    let rows = exec.try_map(rule.len(), |i| {
        let x = rule[i].0;
        let products = cfg
            .labels()
            .map(|n| Ok(wigner_function(rho1, x, n)? * wigner_function(rho2, x, n)?))
            .collect::<Result<Vec<f64>>>()?;
        Ok::<f64, Error>(pairwise_sum(&products))
    })?;
    let acc: f64 = rule.iter().zip(&rows).map(|((_, w), v)| w * v).sum();
    Ok(acc / cfg.period())
}

/// Weyl→Wigner Fourier route before the imaginary part is dropped:
/// `(1/2πr)∫₀^{2πr} Σ_{K even} W̃(α, K)·exp(−iKx/r)·exp(iα p_n) dα`.
pub fn wigner_from_weyl_complex(rho: &DensityOperator, x: f64, n: i64, panels: usize) -> Result<Complex64> {
    let cfg = rho.config();
    if !cfg.contains(n) {
        return Err(Error::IndexOutOfRange { n, n_max: cfg.n_max() });
    }
    let rule = simpson_rule(0.0, cfg.period(), panels)?;
    let limit = 2 * cfg.n_max() as i64;
    let (r, p) = (cfg.radius(), cfg.momentum(n));
    let values = Execution::default().map(rule.len(), |i| {
        let alpha = rule[i].0;
        let terms: Vec<Complex64> = (-limit..=limit)
            .filter(|k| k % 2 == 0)
            .map(|k| weyl_function(rho, alpha, k) * Complex64::cis(-(k as f64) * x / r))
            .collect();
        pairwise_sum(&terms) * Complex64::cis(alpha * p)
    });
    let acc: Complex64 = rule.iter().zip(&values).map(|((_, w), v)| v * *w).sum();
    Ok(acc / cfg.period())
}

pub fn wigner_from_weyl(rho: &DensityOperator, x: f64, n: i64, panels: usize) -> Result<f64> {
    let w = wigner_from_weyl_complex(rho, x, n, panels)?;
    if w.im.abs() > WIGNER_IMAG_TOL {
        return Err(Error::ImaginaryWigner { imag: w.im });
    }
    Ok(w.re)
}

fn shifted_density<F>(builder: &F, config: &CircleConfig, dsigma: f64) -> Result<DensityOperator>
where
    F: Fn(&CircleConfig) -> Result<MomentumState>,
{
    let shifted = config.with_sigma(config.sigma() + dsigma)?;
    DensityOperator::from_pure(&builder(&shifted)?)
}

/// `(W_{σ+1}(x, p_n), W_σ(x, p_{n+1}))` for the same physical state built at both fluxes.
pub fn sigma_shift_check<F>(builder: F, config: &CircleConfig, x: f64, n: i64) -> Result<(f64, f64)>
where
    F: Fn(&CircleConfig) -> Result<MomentumState>,
{
    let at = shifted_density(&builder, config, 0.0)?;
    let up = shifted_density(&builder, config, 1.0)?;
    Ok((wigner_function(&up, x, n)?, wigner_function(&at, x, n + 1)?))
}

/// `(W̃_σ(α, k), W̃_{σ+1}(α, k))`.
pub fn weyl_sigma_shift_check<F>(builder: F, config: &CircleConfig, alpha: f64, k: i64) -> Result<(Complex64, Complex64)>
where
    F: Fn(&CircleConfig) -> Result<MomentumState>,
{
    let at = shifted_density(&builder, config, 0.0)?;
    let up = shifted_density(&builder, config, 1.0)?;
    Ok((weyl_function(&at, alpha, k), weyl_function(&up, alpha, k)))
}

/// Wigner grid over `(sigma, x, n)`, rebuilding the state at every flux sample.
pub fn wigner_sigma_sweep<F>(
    builder: F,
    config: &CircleConfig,
    sigmas: &[f64],
    xs: &[f64],
    n_range: RangeInclusive<i64>,
    exec: Execution,
) -> Result<PhaseGrid>
where
    F: Fn(&CircleConfig) -> Result<MomentumState> + Sync + Send,
{
    let rows = exec.try_map(sigmas.len(), |i| {
        let cfg = config.with_sigma(sigmas[i])?;
        let rho = DensityOperator::from_pure(&builder(&cfg)?)?;
        wigner_grid_with(&rho, xs, n_range.clone(), Execution::Sequential)
    })?;
    let values = rows.into_iter().flat_map(|g| g.real().unwrap_or_default().to_vec()).collect();
    PhaseGrid::new(
        vec![
            GridAxis::new("sigma", sigmas.to_vec()),
            GridAxis::new("x", xs.to_vec()),
            GridAxis::integers("n", n_range),
        ],
        GridValues::Real(values),
        *config,
    )
}

/// Weyl grid over `(sigma, alpha, k)`.
pub fn weyl_sigma_sweep<F>(
    builder: F,
    config: &CircleConfig,
    sigmas: &[f64],
    alphas: &[f64],
    k_range: RangeInclusive<i64>,
    exec: Execution,
) -> Result<PhaseGrid>
where
    F: Fn(&CircleConfig) -> Result<MomentumState> + Sync + Send,
{
    let rows = exec.try_map(sigmas.len(), |i| {
        let cfg = config.with_sigma(sigmas[i])?;
        let rho = DensityOperator::from_pure(&builder(&cfg)?)?;
        weyl_grid_with(&rho, alphas, k_range.clone(), Execution::Sequential)
    })?;
    let values = rows.into_iter().flat_map(|g| g.complex().unwrap_or_default().to_vec()).collect();
    PhaseGrid::new(
        vec![
            GridAxis::new("sigma", sigmas.to_vec()),
            GridAxis::new("alpha", alphas.to_vec()),
            GridAxis::integers("k", k_range),
        ],
        GridValues::Complex(values),
        *config,
    )
}
