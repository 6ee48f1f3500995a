//! Composite Simpson quadrature.

use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::error::{Error, Result};

/// Nodes and weights of the composite Simpson rule with `panels` subintervals.
///
/// Nodes are `lo + (hi - lo)·i/panels` so both endpoints are hit exactly.
pub fn simpson_rule(lo: f64, hi: f64, panels: usize) -> Result<Vec<(f64, f64)>> {
    check_panels(panels)?;
    let h = (hi - lo) / panels as f64;
    Ok((0..=panels)
        .map(|i| {
            let x = lo + (hi - lo) * (i as f64 / panels as f64);
            let w = if i == 0 || i == panels {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            (x, w * h / 3.0)
        })
        .collect())
}

pub fn check_panels(panels: usize) -> Result<()> {
    if panels == 0 || !panels.is_multiple_of(2) {
        return Err(Error::OddPanels(panels));
    }
    Ok(())
}

/// Integrate `f` over `[lo, hi]`.
pub fn simpson<T, F>(f: F, lo: f64, hi: f64, panels: usize) -> Result<T>
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let rule = simpson_rule(lo, hi, panels)?;
    Ok(rule.iter().fold(T::zero(), |acc, &(x, w)| acc + f(x) * w))
}
