//! Density operators `ρ_{MN} = ⟨p_M|ρ|p_N⟩`.

use ndarray::Array2;
use num_complex::Complex64;

use crate::config::CircleConfig;
use crate::error::{Error, Result};
use crate::matrix::OperatorMatrix;
use crate::state::MomentumState;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PURE_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    config: CircleConfig,
    mat: Array2<Complex64>,
}

impl DensityOperator {
    /// `ρ = |R⟩⟨R|`; the state must be normalized to within `1e-9`.
    pub fn from_pure(state: &MomentumState) -> Result<Self> {
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let c = state.coeffs();
        let d = c.len();
        let mat = Array2::from_shape_fn((d, d), |(i, j)| c[i] * c[j].conj());
        Ok(Self { config: *state.config(), mat })
    }

    pub fn from_matrix(config: CircleConfig, mat: Array2<Complex64>) -> Result<Self> {
        if mat.dim() != (config.dim(), config.dim()) {
            return Err(Error::DimensionMismatch { expected: config.dim(), got: mat.nrows() });
        }
        let op = OperatorMatrix::from_dense(config, mat);
        let deviation = op.hermiticity_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = op.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self { config, mat: op.into_mat() })
    }

    /// Convex mixture `Σ w_i |ψ_i⟩⟨ψ_i|`; the weights must sum to one.
    pub fn mixture(components: &[(f64, &MomentumState)]) -> Result<Self> {
        let first = components.first().ok_or(Error::ZeroState)?.1;
        let config = *first.config();
        let d = config.dim();
        let mut mat = Array2::from_elem((d, d), Complex64::new(0.0, 0.0));
        for &(w, state) in components {
            config.ensure_compatible(state.config())?;
            let pure = Self::from_pure(state)?;
            mat.scaled_add(Complex64::new(w, 0.0), &pure.mat);
        }
        Self::from_matrix(config, mat)
    }

    pub fn config(&self) -> &CircleConfig {
        &self.config
    }

    pub fn mat(&self) -> &Array2<Complex64> {
        &self.mat
    }

    /// `⟨p_m|ρ|p_n⟩`, zero outside the basis.
    pub fn element(&self, m: i64, n: i64) -> Complex64 {
        match (self.config.index_of(m), self.config.index_of(n)) {
            (Some(i), Some(j)) => self.mat[[i, j]],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diag().sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Tr[ρ A] = Σ_{ab} ρ_ab A_ba`.
    pub fn expectation(&self, op: &OperatorMatrix) -> Result<Complex64> {
        self.config.ensure_compatible(op.config())?;
        Ok(self.mat.iter().zip(op.mat().t().iter()).map(|(r, a)| r * a).sum())
    }

    /// `Tr(ρ₁ ρ₂)` computed from the matrices.
    pub fn trace_with(&self, other: &DensityOperator) -> Result<Complex64> {
        self.config.ensure_compatible(&other.config)?;
        Ok(self.mat.iter().zip(other.mat.t().iter()).map(|(a, b)| a * b).sum())
    }

    /// Position density `⟨x|ρ|x⟩ = Σ ρ_ab exp(i(p_a − p_b)x)`.
    pub fn position_density(&self, x: f64) -> f64 {
        let r = self.config.radius();
        self.mat
            .indexed_iter()
            .map(|((i, j), z)| z * Complex64::cis((i as f64 - j as f64) * x / r))
            .sum::<Complex64>()
            .re
    }

    /// Position matrix element `⟨x|ρ|y⟩`.
    pub fn position_element(&self, x: f64, y: f64) -> Complex64 {
        let cfg = &self.config;
        self.mat
            .indexed_iter()
            .map(|((i, j), z)| {
                let pa = cfg.momentum(cfg.label_of(i));
                let pb = cfg.momentum(cfg.label_of(j));
                z * Complex64::cis(pa * x - pb * y)
            })
            .sum()
    }
}

pub fn density_from_pure(state: &MomentumState) -> Result<DensityOperator> {
    DensityOperator::from_pure(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CircleConfig {
        CircleConfig::new(1.0, 0.1, 4).unwrap()
    }

    fn sample_state() -> MomentumState {
        MomentumState::from_fn(cfg(), |n| Complex64::new(1.0 / (1.0 + n.abs() as f64), 0.3 * n as f64))
            .normalize()
            .unwrap()
    }

    #[test]
    fn basis_projector() {
        let rho = density_from_pure(&MomentumState::basis(cfg(), 0).unwrap()).unwrap();
        for m in cfg().labels() {
            for n in cfg().labels() {
                let expect = if m == 0 && n == 0 { 1.0 } else { 0.0 };
                assert_eq!(rho.element(m, n), Complex64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn pure_state_is_projector() {
        let rho = density_from_pure(&sample_state()).unwrap();
        assert!((rho.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let sq = rho.mat().dot(rho.mat());
        let diff = (&sq - rho.mat()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(diff < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_unnormalized() {
        let s = MomentumState::from_fn(cfg(), |_| Complex64::new(1.0, 0.0));
        assert!(matches!(density_from_pure(&s), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn from_matrix_validates() {
        let c = cfg();
        let d = c.dim();
        let mut m = Array2::from_elem((d, d), Complex64::new(0.0, 0.0));
        m[[0, 0]] = Complex64::new(1.0, 0.0);
        m[[0, 1]] = Complex64::new(0.0, 0.1);
        assert!(matches!(DensityOperator::from_matrix(c, m.clone()), Err(Error::NotHermitian { .. })));
        m[[1, 0]] = Complex64::new(0.0, -0.1);
        assert!(DensityOperator::from_matrix(c, m.clone()).is_ok());
        m[[2, 2]] = Complex64::new(0.5, 0.0);
        assert!(matches!(DensityOperator::from_matrix(c, m), Err(Error::TraceNotOne { .. })));
    }

    #[test]
    fn mixture_is_mixed() {
        let a = MomentumState::basis(cfg(), 0).unwrap();
        let b = MomentumState::basis(cfg(), 1).unwrap();
        let rho = DensityOperator::mixture(&[(0.5, &a), (0.5, &b)]).unwrap();
        assert!((rho.purity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn position_density_matches_wavefunction() {
        let s = sample_state();
        let rho = density_from_pure(&s).unwrap();
        for x in [0.0, 0.4, 2.5] {
            let direct = s.position_wavefunction(x).norm_sqr();
            assert!((rho.position_density(x) - direct).abs() < 1e-12);
            assert!((rho.position_element(x, x).re - direct).abs() < 1e-12);
        }
    }
}
