use std::f64::consts::PI;

use proptest::prelude::*;
use ringphase::quadrature::simpson;
use ringphase::{
    project_to_momentum, zak_state, CircleConfig, Complex64, DensityOperator, GaussianParams,
    MomentumState,
};

fn random_state(cfg: CircleConfig, seed: &[(f64, f64)]) -> MomentumState {
    MomentumState::from_fn(cfg, |n| {
        let (re, im) = seed[(n + cfg.n_max() as i64) as usize % seed.len()];
        Complex64::new(re, im) / (1.0 + (n * n) as f64)
    })
}

#[test]
fn plane_waves_orthonormal_under_projection() {
    let cfg = CircleConfig::new(1.0, 0.1, 8).unwrap();
    let mut worst: f64 = 0.0;
    for m in cfg.labels() {
        let wave = |x: f64| Complex64::cis(cfg.momentum(m) * x);
        for n in cfg.labels() {
            let got = project_to_momentum(&cfg, wave, n, 2048).unwrap();
            let expect = if m == n { 1.0 } else { 0.0 };
            worst = worst.max((got - expect).norm());
        }
    }
    assert!(worst < 1e-10, "{worst:e}");
}

#[test]
fn parseval() {
    let cfg = CircleConfig::new(1.7, 0.3, 12).unwrap();
    let s = random_state(cfg, &[(0.3, -1.0), (2.0, 0.5), (-0.7, 0.1)]);
    let integral: f64 = simpson(|x| s.position_wavefunction(x).norm_sqr(), 0.0, cfg.period(), 2048).unwrap();
    assert!((integral / cfg.period() - s.norm_sqr()).abs() < 1e-8);
}

#[test]
fn zak_inner_product_matches_position_quadrature() {
    let cfg = CircleConfig::new(1.0, 0.0, 32).unwrap();
    let a = zak_state(&cfg, &GaussianParams::new(1.0, 0.0)).unwrap();
    let b = zak_state(&cfg, &GaussianParams::new(1.0, 1.0)).unwrap();
    let ip = a.inner_product(&b).unwrap();
    let oracle: Complex64 = simpson(
        |x| a.position_wavefunction(x).conj() * b.position_wavefunction(x),
        0.0,
        cfg.period(),
        2048,
    )
    .unwrap()
        / cfg.period();
    assert!((ip - oracle).norm() < 1e-8);
    assert!((a.inner_product(&a).unwrap() - 1.0).norm() < 1e-12);
}

#[test]
fn pure_densities_are_projectors() {
    for n_max in [4, 9, 16] {
        let cfg = CircleConfig::new(1.0, 0.25, n_max).unwrap();
        let s = random_state(cfg, &[(1.0, 0.2), (-0.4, 0.9)]).normalize().unwrap();
        let rho = DensityOperator::from_pure(&s).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((rho.trace() - 1.0).norm() < 1e-12);
        let herm = rho
            .mat()
            .indexed_iter()
            .map(|((i, j), z)| (z - rho.mat()[[j, i]].conj()).norm())
            .fold(0.0, f64::max);
        assert!(herm < 1e-12);
    }
}

proptest! {
    #[test]
    fn quasi_periodic_wavefunction(
        sigma in -1.5f64..1.5,
        radius in 0.3f64..3.0,
        x in -10.0f64..10.0,
        coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 9),
    ) {
        let cfg = CircleConfig::new(radius, sigma, 4).unwrap();
        let s = MomentumState::from_coeffs(cfg, coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let lhs = s.position_wavefunction(x + cfg.period());
        let rhs = s.position_wavefunction(x) * Complex64::cis(2.0 * PI * sigma);
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn normalize_is_idempotent(coeffs in proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 7)) {
        let cfg = CircleConfig::new(1.0, 0.0, 3).unwrap();
        let s = MomentumState::from_coeffs(cfg, coeffs.iter().map(|&(a, b)| Complex64::new(a, b)).collect()).unwrap();
        prop_assume!(s.norm_sqr() > 1e-6);
        let u = s.normalize().unwrap();
        prop_assert!((u.norm_sqr() - 1.0).abs() < 1e-12);
        let uu = u.normalize().unwrap();
        for n in cfg.labels() {
            prop_assert!((uu.coeff(n) - u.coeff(n)).norm() < 1e-15);
        }
    }
}
