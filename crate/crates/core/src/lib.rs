//! Phase-space quantum mechanics on the ring `S × Z`.
//!
//! A charged particle on a circle of radius `r` threaded by a flux `σ = eφ/2π`
//! has quasi-periodic wavefunctions `R(x + 2πr) = R(x)·exp(i2πσ)` and discrete
//! momenta `p_N = (N + σ)/r`. This crate represents states, density operators
//! and the displacement / parity operator algebra on a truncated momentum
//! basis `N ∈ [−n_max, n_max]`, and evaluates Wigner and Weyl functions,
//! Zak-transformed Gaussian (theta) states and free time evolution.
//!
//! Index layout: label `N` lives at array offset `N + n_max` everywhere.

pub mod config;
pub mod density;
pub mod dynamics;
pub mod error;
pub mod exec;
pub mod grid;
pub mod kinematics;
pub mod matrix;
pub mod operators;
pub mod phasespace;
pub mod quadrature;
pub mod specialfn;
pub mod state;

pub use num_complex::Complex64;

pub use config::{momentum_value, winding_number, CircleConfig, DEFAULT_N_MAX, DEFAULT_PANELS};
pub use density::DensityOperator;
pub use dynamics::{evolve_free, evolved_zak_coefficients, EvolutionParams, PhaseSign};
pub use error::{Error, Result};
pub use exec::Execution;
pub use grid::{GridAxis, GridValues, PhaseGrid};
pub use kinematics::{
    delta_sinc, momentum_operator_matrix, position_operator_matrix, project_to_momentum,
};
pub use matrix::{Band, OperatorMatrix};
pub use operators::{
    apply_displacement, compose_displacements, displaced_parity_matrix, displacement_matrix,
    fourier_relation_d_to_u, integrate_displaced_parity_over_alpha,
    integrate_displacement_over_alpha, parity_matrix, rank_one_position,
    sum_displaced_parity_over_k, sum_displacements_over_k, AlphaInterval, Displaced, KParity,
    PhaseDisplacement,
};
pub use phasespace::{
    sigma_shift_check, trace_product, weyl_function, weyl_function_flagged, weyl_grid,
    weyl_sigma_shift_check, weyl_sigma_sweep, wigner_from_weyl, wigner_function, wigner_grid,
    wigner_marginal_momentum, wigner_marginal_position, wigner_sigma_sweep, WignerPoint,
};
pub use specialfn::{
    gaussian_momentum, gaussian_position, theta3, theta_normalization, theta_position, zak_state,
    GaussianParams,
};
pub use state::MomentumState;
