//! Rectangular grids of phase-space values with axis metadata.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::CircleConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub name: String,
    pub values: Vec<f64>,
}

impl GridAxis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self { name: name.into(), values }
    }

    pub fn integers(name: impl Into<String>, range: std::ops::RangeInclusive<i64>) -> Self {
        Self::new(name, range.map(|n| n as f64).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
pub enum GridValues {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl GridValues {
    pub fn len(&self) -> usize {
        match self {
            GridValues::Real(v) => v.len(),
            GridValues::Complex(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Values stored row-major: the last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub axes: Vec<GridAxis>,
    pub values: GridValues,
    pub config: CircleConfig,
    /// Parameters that produced the grid (no timestamps).
    pub provenance: BTreeMap<String, String>,
}

impl PhaseGrid {
    pub fn new(axes: Vec<GridAxis>, values: GridValues, config: CircleConfig) -> Result<Self> {
        let expected: usize = axes.iter().map(|a| a.values.len()).product();
        if expected != values.len() {
            return Err(Error::DimensionMismatch { expected, got: values.len() });
        }
        Ok(Self { axes, values, config, provenance: BTreeMap::new() })
    }

    pub fn with_provenance(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.provenance.insert(key.into(), value.to_string());
        self
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.values.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-axis indices of the flat position `flat`.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let shape = self.shape();
        let mut idx = vec![0; shape.len()];
        for (slot, &len) in idx.iter_mut().zip(&shape).rev() {
            *slot = flat % len;
            flat /= len;
        }
        idx
    }

    /// Axis coordinates of the flat position `flat`.
    pub fn coordinates(&self, flat: usize) -> Vec<f64> {
        self.multi_index(flat)
            .into_iter()
            .zip(&self.axes)
            .map(|(i, a)| a.values[i])
            .collect()
    }

    pub fn real(&self) -> Option<&[f64]> {
        match &self.values {
            GridValues::Real(v) => Some(v),
            GridValues::Complex(_) => None,
        }
    }

    pub fn complex(&self) -> Option<&[Complex64]> {
        match &self.values {
            GridValues::Complex(v) => Some(v),
            GridValues::Real(_) => None,
        }
    }

    pub fn all_finite(&self) -> bool {
        match &self.values {
            GridValues::Real(v) => v.iter().all(|x| x.is_finite()),
            GridValues::Complex(v) => v.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checked() {
        let cfg = CircleConfig::new(1.0, 0.0, 2).unwrap();
        let axes = vec![GridAxis::new("x", vec![0.0, 1.0]), GridAxis::integers("n", -1..=1)];
        assert!(PhaseGrid::new(axes.clone(), GridValues::Real(vec![0.0; 5]), cfg).is_err());
        let g = PhaseGrid::new(axes, GridValues::Real((0..6).map(f64::from).collect()), cfg).unwrap();
        assert_eq!(g.multi_index(4), vec![1, 1]);
        assert_eq!(g.coordinates(5), vec![1.0, 1.0]);
        assert_eq!(g.coordinates(0), vec![0.0, -1.0]);
    }
}
