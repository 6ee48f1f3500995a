//! Operators on the truncated momentum basis.

use ndarray::Array2;
use num_complex::Complex64;

use crate::config::CircleConfig;
use crate::error::Result;
use crate::state::MomentumState;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Single-offset band: element `(N + offset, N) = phases[N + n_max]`, all
/// others zero. Entries whose row would leave the basis are stored as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Band {
    pub offset: i64,
    pub phases: Vec<Complex64>,
}

/// Dense complex matrix, rows and columns labelled `N ∈ [−n_max, n_max]`,
/// plus the band form when the operator has one.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    config: CircleConfig,
    mat: Array2<Complex64>,
    band: Option<Band>,
}

impl OperatorMatrix {
    pub fn from_dense(config: CircleConfig, mat: Array2<Complex64>) -> Self {
        assert_eq!(mat.dim(), (config.dim(), config.dim()), "matrix shape must match basis");
        Self { config, mat, band: None }
    }

    /// Dense matrix with element `(m, n) = f(m, n)` over basis labels.
    pub fn from_fn(config: CircleConfig, f: impl Fn(i64, i64) -> Complex64) -> Self {
        let d = config.dim();
        let mat = Array2::from_shape_fn((d, d), |(i, j)| f(config.label_of(i), config.label_of(j)));
        Self::from_dense(config, mat)
    }

    pub fn from_band(config: CircleConfig, band: Band) -> Self {
        let d = config.dim();
        assert_eq!(band.phases.len(), d, "band length must match basis");
        let mut mat = Array2::from_elem((d, d), ZERO);
        for (j, &v) in band.phases.iter().enumerate() {
            if let Some(i) = config.index_of(config.label_of(j) + band.offset) {
                mat[[i, j]] = v;
            }
        }
        Self { config, mat, band: Some(band) }
    }

    pub fn zeros(config: CircleConfig) -> Self {
        let d = config.dim();
        Self::from_dense(config, Array2::from_elem((d, d), ZERO))
    }

    pub fn identity(config: CircleConfig) -> Self {
        Self::from_band(config, Band { offset: 0, phases: vec![Complex64::new(1.0, 0.0); config.dim()] })
    }

    pub fn config(&self) -> &CircleConfig {
        &self.config
    }

    pub fn mat(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn band(&self) -> Option<&Band> {
        self.band.as_ref()
    }

    pub fn into_mat(self) -> Array2<Complex64> {
        self.mat
    }

    /// Element `⟨p_m|A|p_n⟩`, zero outside the basis.
    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        match (self.config.index_of(m), self.config.index_of(n)) {
            (Some(i), Some(j)) => self.mat[[i, j]],
            _ => ZERO,
        }
    }

    pub fn apply(&self, state: &MomentumState) -> Result<MomentumState> {
        self.config.ensure_compatible(state.config())?;
        let out = match &self.band {
            Some(band) => {
                let mut out = vec![ZERO; self.config.dim()];
                for (j, (&v, c)) in band.phases.iter().zip(state.coeffs()).enumerate() {
                    if let Some(i) = self.config.index_of(self.config.label_of(j) + band.offset) {
                        out[i] += v * c;
                    }
                }
                out
            }
            None => self.mat.dot(state.coeffs()).to_vec(),
        };
        MomentumState::from_coeffs(self.config, out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_dense(self.config, self.mat.t().mapv(|z| z.conj()))
    }

    pub fn matmul(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.config.ensure_compatible(&rhs.config)?;
        Ok(Self::from_dense(self.config, self.mat.dot(&rhs.mat)))
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<Self> {
        self.config.ensure_compatible(&rhs.config)?;
        Ok(Self::from_dense(self.config, &self.mat + &rhs.mat))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_dense(self.config, self.mat.mapv(|z| z * s))
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.diag().sum()
    }

    /// Largest `|A_ij − B_ij|` over entries whose labels satisfy `keep`.
    pub fn max_deviation_where(
        &self,
        other: &OperatorMatrix,
        keep: impl Fn(i64, i64) -> bool,
    ) -> f64 {
        let mut worst: f64 = 0.0;
        for ((i, j), a) in self.mat.indexed_iter() {
            let (m, n) = (self.config.label_of(i), self.config.label_of(j));
            if keep(m, n) {
                worst = worst.max((a - other.mat[[i, j]]).norm());
            }
        }
        worst
    }

    pub fn max_deviation(&self, other: &OperatorMatrix) -> f64 {
        self.max_deviation_where(other, |_, _| true)
    }

    /// `max |A − A†|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.config.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.mat[[i, j]] - self.mat[[j, i]].conj()).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_densifies_exactly() {
        let cfg = CircleConfig::new(1.0, 0.0, 3).unwrap();
        let phases: Vec<_> = (0..7).map(|j| Complex64::new(j as f64, 1.0)).collect();
        let op = OperatorMatrix::from_band(cfg, Band { offset: 2, phases: phases.clone() });
        for n in cfg.labels() {
            for m in cfg.labels() {
                let expect = if m == n + 2 { phases[(n + 3) as usize] } else { ZERO };
                assert_eq!(op.get(m, n), expect);
            }
        }
        // banded and dense application agree
        let s = MomentumState::from_fn(cfg, |n| Complex64::new(1.0, n as f64));
        let dense = OperatorMatrix::from_dense(cfg, op.mat().clone());
        assert_eq!(op.apply(&s).unwrap(), dense.apply(&s).unwrap());
    }

    #[test]
    fn identity_and_adjoint() {
        let cfg = CircleConfig::new(1.0, 0.3, 2).unwrap();
        let id = OperatorMatrix::identity(cfg);
        assert_eq!(id.trace(), Complex64::new(5.0, 0.0));
        assert_eq!(id.adjoint().max_deviation(&id), 0.0);
        assert_eq!(id.hermiticity_defect(), 0.0);
    }
}
