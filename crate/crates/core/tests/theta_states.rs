//! Momentum-route (Fourier coefficients) versus position-route (Θ₃ closed
//! form) constructions of the Zak-transformed Gaussian.

use std::f64::consts::{PI, SQRT_2};

use ringphase::quadrature::simpson;
use ringphase::{
    gaussian_momentum, gaussian_position, project_to_momentum, theta_position, zak_state,
    CircleConfig, Complex64, GaussianParams,
};

const AS: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)];

/// Truncated Zak sum `Σ_{|w| ≤ 3} S(x + 2πrw)·exp(−i2πσw)`.
fn winding_sum(cfg: &CircleConfig, g: &GaussianParams, x: f64) -> Complex64 {
    (-3..=3)
        .map(|w| {
            gaussian_position(g, x + cfg.period() * w as f64) * Complex64::cis(-2.0 * PI * cfg.sigma() * w as f64)
        })
        .sum()
}

#[test]
fn momentum_and_position_routes_agree() {
    for sigma in [0.0, 0.1, 0.5] {
        let cfg = CircleConfig::new(1.0, sigma, 32).unwrap();
        for (re, im) in AS {
            let g = GaussianParams::new(re, im);
            let s = zak_state(&cfg, &g).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..64 {
                let x = cfg.period() * i as f64 / 64.0;
                let closed = theta_position(&cfg, &g, x).unwrap();
                worst = worst.max((s.position_wavefunction(x) - closed).norm());
            }
            assert!(worst < 1e-8, "sigma={sigma} A=({re},{im}): {worst:e}");
        }
    }
}

#[test]
fn projection_reproduces_coefficients() {
    for sigma in [0.0, 0.1] {
        let cfg = CircleConfig::new(1.0, sigma, 32).unwrap();
        for (re, im) in AS {
            let g = GaussianParams::new(re, im);
            let s = zak_state(&cfg, &g).unwrap();
            for n in -8..=8 {
                let c = project_to_momentum(&cfg, |x| theta_position(&cfg, &g, x).unwrap(), n, 2048).unwrap();
                assert!((c - s.coeff(n)).norm() < 1e-8, "n={n}");
            }
        }
    }
}

#[test]
fn closed_form_equals_winding_sum() {
    for sigma in [0.0, 0.1, 0.37] {
        let cfg = CircleConfig::new(1.0, sigma, 32).unwrap();
        let g = GaussianParams::new(1.0, 0.0);
        // normalize the oracle independently by quadrature
        let norm: f64 = simpson(|x| winding_sum(&cfg, &g, x).norm_sqr(), 0.0, cfg.period(), 2048).unwrap();
        let scale = (cfg.period() / norm).sqrt();
        for x in [0.0, 0.3, 1.0, 2.5, 4.0, 6.0] {
            let oracle = winding_sum(&cfg, &g, x) * scale;
            assert!((theta_position(&cfg, &g, x).unwrap() - oracle).norm() < 1e-8);
        }
    }
}

#[test]
fn theta_wavefunction_is_quasi_periodic() {
    let cfg = CircleConfig::new(1.0, 0.1, 32).unwrap();
    let g = GaussianParams::new(1.0, 0.0);
    let x = 0.3;
    let lhs = theta_position(&cfg, &g, x + cfg.period()).unwrap();
    let rhs = theta_position(&cfg, &g, x).unwrap() * Complex64::cis(2.0 * PI * 0.1);
    assert!((lhs - rhs).norm() < 1e-10);
}

#[test]
fn zak_at_origin_matches_closed_form() {
    let cfg = CircleConfig::new(1.0, 0.0, 32).unwrap();
    let g = GaussianParams::new(1.0, 0.0);
    let s = zak_state(&cfg, &g).unwrap();
    for x in [0.0, 1.0, 2.0] {
        assert!((s.position_wavefunction(x) - theta_position(&cfg, &g, x).unwrap()).norm() < 1e-8);
    }
}

#[test]
fn gaussian_momentum_is_fourier_transform() {
    for (re, im) in [(1.0, 0.0), (1.0, 1.0), (0.5, -0.8), (0.0, 0.0)] {
        let g = GaussianParams::new(re, im);
        let centre = SQRT_2 * re;
        for p in [-1.0, 0.0, 1.0] {
            let ft: Complex64 = simpson(
                |x| gaussian_position(&g, x) * Complex64::cis(-p * x),
                centre - 12.0,
                centre + 12.0,
                4000,
            )
            .unwrap();
            assert!((ft - gaussian_momentum(&g, p)).norm() < 1e-8, "A=({re},{im}) p={p}");
        }
    }
}
