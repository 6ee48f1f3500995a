//! Displacement and parity operators and their resolution identities.
//!
//! `D(α, K)` is built from its momentum-basis action
//! `D|p_N⟩ = exp(−iαK/2r)·exp(−iα p_N)|p_{N+K}⟩`, parity from
//! `U₀|p_N⟩ = |p_{−N}⟩`, and the displaced parity from `D·U₀·D†`. All three
//! map each basis vector to at most one basis vector, which keeps products
//! exact and cheap. Closed forms of the sums and integrals are left to the
//! tests and the verification suite.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::CircleConfig;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::matrix::{Band, OperatorMatrix};
use crate::quadrature::simpson_rule;
use crate::state::MomentumState;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dropped probability above this is reported by [`Displaced::is_lossy`].
pub const DROPPED_MASS_WARNING: f64 = 1e-6;

/// Phase-space displacement: position shift `alpha`, momentum index shift `k`
/// (physical increment `k/r`, independent of the flux).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDisplacement {
    pub alpha: f64,
    pub k: i64,
}

impl PhaseDisplacement {
    pub fn new(alpha: f64, k: i64) -> Self {
        Self { alpha, k }
    }

    pub fn inverse(&self) -> Self {
        Self { alpha: -self.alpha, k: -self.k }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KParity {
    All,
    Even,
    Odd,
}

impl KParity {
    pub fn admits(self, k: i64) -> bool {
        match self {
            KParity::All => true,
            KParity::Even => k % 2 == 0,
            KParity::Odd => k % 2 != 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl AlphaInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// `[w·2πr, (w + 1)·2πr]`.
    pub fn period(config: &CircleConfig, w: i64) -> Self {
        let p = config.period();
        Self { lo: w as f64 * p, hi: (w + 1) as f64 * p }
    }
}

/// Operator that sends each basis vector to a multiple of at most one basis
/// vector, stored by column: `cols[j] = Some((i, v))` means `A_ij = v`.
#[derive(Debug, Clone)]
struct Monomial {
    cols: Vec<Option<(usize, Complex64)>>,
}

impl Monomial {
    /// `self ∘ rhs`.
    fn compose(&self, rhs: &Monomial) -> Monomial {
        let cols = rhs
            .cols
            .iter()
            .map(|c| c.and_then(|(i, v)| self.cols[i].map(|(k, w)| (k, w * v))))
            .collect();
        Monomial { cols }
    }

    /// Conjugate transpose; the column map is injective for every operator built here.
    fn adjoint(&self) -> Monomial {
        let mut cols = vec![None; self.cols.len()];
        for (j, c) in self.cols.iter().enumerate() {
            if let Some((i, v)) = *c {
                cols[i] = Some((j, v.conj()));
            }
        }
        Monomial { cols }
    }

    fn scatter_into(&self, mat: &mut Array2<Complex64>, scale: Complex64) {
        for (j, c) in self.cols.iter().enumerate() {
            if let Some((i, v)) = *c {
                mat[[i, j]] += v * scale;
            }
        }
    }

    fn to_operator(&self, config: CircleConfig) -> OperatorMatrix {
        let d = config.dim();
        let mut mat = Array2::from_elem((d, d), ZERO);
        self.scatter_into(&mut mat, ONE);
        OperatorMatrix::from_dense(config, mat)
    }
}

fn check_shift(config: &CircleConfig, k: i64) -> Result<()> {
    let limit = 2 * config.n_max() as i64;
    if k.abs() > limit {
        return Err(Error::ShiftOutOfRange { k, limit });
    }
    Ok(())
}

/// Phase of `D(α, K)` on column `N`: `exp(−iα(N + K/2 + σ)/r)`.
fn displacement_phase(config: &CircleConfig, d: PhaseDisplacement, n: i64) -> Complex64 {
    let half_k = d.k as f64 / 2.0;
    Complex64::cis(-d.alpha * (n as f64 + half_k + config.sigma()) / config.radius())
}

fn displacement_band(config: &CircleConfig, d: PhaseDisplacement) -> Band {
    let phases = config
        .labels()
        .map(|n| if config.contains(n + d.k) { displacement_phase(config, d, n) } else { ZERO })
        .collect();
    Band { offset: d.k, phases }
}

fn displacement_monomial(config: &CircleConfig, d: PhaseDisplacement) -> Monomial {
    let cols = config
        .labels()
        .map(|n| config.index_of(n + d.k).map(|i| (i, displacement_phase(config, d, n))))
        .collect();
    Monomial { cols }
}

fn parity_monomial(config: &CircleConfig) -> Monomial {
    let d = config.dim();
    Monomial { cols: (0..d).map(|j| Some((d - 1 - j, ONE))).collect() }
}

fn displaced_parity_monomial(config: &CircleConfig, d: PhaseDisplacement) -> Monomial {
    let disp = displacement_monomial(config, d);
    disp.compose(&parity_monomial(config)).compose(&disp.adjoint())
}

/// `D(α, K)` as a banded matrix with offset `K`.
pub fn displacement_matrix(config: &CircleConfig, d: PhaseDisplacement) -> Result<OperatorMatrix> {
    check_shift(config, d.k)?;
    Ok(OperatorMatrix::from_band(*config, displacement_band(config, d)))
}

/// Result of displacing a state on the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Displaced {
    pub state: MomentumState,
    /// Probability carried by coefficients shifted outside the basis.
    pub dropped_mass: f64,
}

impl Displaced {
    pub fn is_lossy(&self) -> bool {
        self.dropped_mass > DROPPED_MASS_WARNING
    }
}

pub fn apply_displacement(state: &MomentumState, d: PhaseDisplacement) -> Result<Displaced> {
    let config = *state.config();
    let op = displacement_matrix(&config, d)?;
    let dropped_mass = config
        .labels()
        .filter(|&n| !config.contains(n + d.k))
        .map(|n| state.coeff(n).norm_sqr())
        .sum();
    Ok(Displaced { state: op.apply(state)?, dropped_mass })
}

/// `D(α, K)·D(β, M) = phase·D(α + β, K + M)` with phase `exp(i(Kβ − Mα)/2r)`.
pub fn compose_displacements(
    d1: PhaseDisplacement,
    d2: PhaseDisplacement,
    config: &CircleConfig,
) -> (PhaseDisplacement, Complex64) {
    let combined = PhaseDisplacement { alpha: d1.alpha + d2.alpha, k: d1.k + d2.k };
    let phase = Complex64::cis((d1.k as f64 * d2.alpha - d2.k as f64 * d1.alpha) / (2.0 * config.radius()));
    (combined, phase)
}

/// `U₀ = Σ_N |p_{−N}⟩⟨p_N|`.
pub fn parity_matrix(config: &CircleConfig) -> OperatorMatrix {
    parity_monomial(config).to_operator(*config)
}

/// `U(α, K) = D(α, K)·U₀·D(α, K)†`.
pub fn displaced_parity_matrix(config: &CircleConfig, d: PhaseDisplacement) -> Result<OperatorMatrix> {
    check_shift(config, d.k)?;
    Ok(displaced_parity_monomial(config, d).to_operator(*config))
}

/// Truncated dyad `|x⟩⟨y|`: element `(M, N) = exp(−i p_M x)·exp(i p_N y)`.
pub fn rank_one_position(config: &CircleConfig, x: f64, y: f64) -> OperatorMatrix {
    let d = config.dim();
    let mat = Array2::from_shape_fn((d, d), |(i, j)| {
        let pm = config.momentum(config.label_of(i));
        let pn = config.momentum(config.label_of(j));
        Complex64::cis(-pm * x) * Complex64::cis(pn * y)
    });
    OperatorMatrix::from_dense(*config, mat)
}

fn shifts(limit: i64, parity: KParity) -> Vec<i64> {
    (-limit..=limit).filter(|&k| parity.admits(k)).collect()
}

/// `Σ_K D(α, K)` over every representable `K` (`|K| ≤ 2·n_max`) admitted by `parity`.
pub fn sum_displacements_over_k(config: &CircleConfig, alpha: f64, parity: KParity) -> OperatorMatrix {
    let d = config.dim();
    let mut mat = Array2::from_elem((d, d), ZERO);
    for k in shifts(2 * config.n_max() as i64, parity) {
        displacement_monomial(config, PhaseDisplacement::new(alpha, k)).scatter_into(&mut mat, ONE);
    }
    OperatorMatrix::from_dense(*config, mat)
}

/// Simpson quadrature of a band-valued integrand: returns `Σ_i w_i·f(α_i)`
/// divided by `2πr`. Node evaluations may run in parallel; the weighted sum
/// runs sequentially in node order.
fn integrate_band(
    config: &CircleConfig,
    interval: AlphaInterval,
    panels: usize,
    exec: Execution,
    f: impl Fn(f64) -> Vec<Complex64> + Sync + Send,
) -> Result<Vec<Complex64>> {
    let rule = simpson_rule(interval.lo, interval.hi, panels)?;
    let values = exec.map(rule.len(), |i| f(rule[i].0));
    let mut acc = vec![ZERO; config.dim()];
    for ((_, w), v) in rule.iter().zip(&values) {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x * *w;
        }
    }
    let norm = config.period();
    Ok(acc.into_iter().map(|a| a / norm).collect())
}

/// `(1/2πr)∫ D(α, k)·[exp(iασ/r)] dα` over `interval`, by Simpson quadrature.
pub fn integrate_displacement_over_alpha(
    config: &CircleConfig,
    k: i64,
    flux_factor: bool,
    interval: AlphaInterval,
    panels: usize,
) -> Result<OperatorMatrix> {
    integrate_displacement_over_alpha_with(config, k, flux_factor, interval, panels, Execution::default())
}

pub fn integrate_displacement_over_alpha_with(
    config: &CircleConfig,
    k: i64,
    flux_factor: bool,
    interval: AlphaInterval,
    panels: usize,
    exec: Execution,
) -> Result<OperatorMatrix> {
    check_shift(config, k)?;
    let (sigma, r) = (config.sigma(), config.radius());
    let phases = integrate_band(config, interval, panels, exec, |alpha| {
        let flux = if flux_factor { Complex64::cis(alpha * sigma / r) } else { ONE };
        displacement_band(config, PhaseDisplacement::new(alpha, k))
            .phases
            .into_iter()
            .map(|p| p * flux)
            .collect()
    })?;
    Ok(OperatorMatrix::from_band(*config, Band { offset: k, phases }))
}

/// `(1/2πr)∫₀^{2πr} U(α, k) dα`, by Simpson quadrature.
pub fn integrate_displaced_parity_over_alpha(
    config: &CircleConfig,
    k: i64,
    panels: usize,
) -> Result<OperatorMatrix> {
    integrate_displaced_parity_over_alpha_with(config, k, panels, Execution::default())
}

pub fn integrate_displaced_parity_over_alpha_with(
    config: &CircleConfig,
    k: i64,
    panels: usize,
    exec: Execution,
) -> Result<OperatorMatrix> {
    check_shift(config, k)?;
    let structure = displaced_parity_monomial(config, PhaseDisplacement::new(0.0, k));
    // the row pattern of U(α, k) does not depend on α, so integrate column values
    let values = integrate_band(config, AlphaInterval::period(config, 0), panels, exec, |alpha| {
        displaced_parity_monomial(config, PhaseDisplacement::new(alpha, k))
            .cols
            .into_iter()
            .map(|c| c.map_or(ZERO, |(_, v)| v))
            .collect()
    })?;
    let d = config.dim();
    let mut mat = Array2::from_elem((d, d), ZERO);
    for (j, c) in structure.cols.iter().enumerate() {
        if let Some((i, _)) = *c {
            mat[[i, j]] = values[j];
        }
    }
    Ok(OperatorMatrix::from_dense(*config, mat))
}

/// `Σ_{|k| ≤ n_max} U(α, k)`.
pub fn sum_displaced_parity_over_k(config: &CircleConfig, alpha: f64) -> OperatorMatrix {
    let d = config.dim();
    let mut mat = Array2::from_elem((d, d), ZERO);
    for k in shifts(config.n_max() as i64, KParity::All) {
        displaced_parity_monomial(config, PhaseDisplacement::new(alpha, k)).scatter_into(&mut mat, ONE);
    }
    OperatorMatrix::from_dense(*config, mat)
}

/// `Σ_{M even} (1/2πr)∫₀^{2πr} D(β, M)·exp(iβσ/r)·exp(i(Kβ − Mα)/r) dβ`,
/// the Fourier route from displacements to the displaced parity `U(α, K)`.
pub fn fourier_relation_d_to_u(
    config: &CircleConfig,
    d: PhaseDisplacement,
    panels: usize,
) -> Result<OperatorMatrix> {
    fourier_relation_d_to_u_with(config, d, panels, Execution::default())
}

pub fn fourier_relation_d_to_u_with(
    config: &CircleConfig,
    d: PhaseDisplacement,
    panels: usize,
    exec: Execution,
) -> Result<OperatorMatrix> {
    let (sigma, r) = (config.sigma(), config.radius());
    let limit = 2 * config.n_max() as i64;
    let mut total = OperatorMatrix::zeros(*config).into_mat();
    for m in shifts(limit, KParity::Even) {
        let outer = Complex64::cis(-(m as f64) * d.alpha / r);
        let phases = integrate_band(config, AlphaInterval::period(config, 0), panels, exec, |beta| {
            let weight = Complex64::cis(beta * sigma / r) * Complex64::cis(d.k as f64 * beta / r);
            displacement_band(config, PhaseDisplacement::new(beta, m))
                .phases
                .into_iter()
                .map(|p| p * weight)
                .collect()
        })?;
        let band = OperatorMatrix::from_band(*config, Band { offset: m, phases });
        total.scaled_add(outer, band.mat());
    }
    Ok(OperatorMatrix::from_dense(*config, total))
}
