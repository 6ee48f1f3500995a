//! Resolution identities of the displacement / parity algebra, each checked
//! against an independently constructed closed form.

use std::f64::consts::PI;

use ndarray::Array2;
use proptest::prelude::*;
use ringphase::{
    compose_displacements, delta_sinc, displaced_parity_matrix, displacement_matrix,
    fourier_relation_d_to_u, integrate_displaced_parity_over_alpha,
    integrate_displacement_over_alpha, parity_matrix, rank_one_position,
    sum_displaced_parity_over_k, sum_displacements_over_k, AlphaInterval, CircleConfig, Complex64,
    KParity, OperatorMatrix, PhaseDisplacement,
};

fn cfg(sigma: f64, n_max: usize) -> CircleConfig {
    CircleConfig::new(1.0, sigma, n_max).unwrap()
}

fn from_fn(c: &CircleConfig, f: impl Fn(i64, i64) -> Complex64) -> OperatorMatrix {
    let d = c.dim();
    OperatorMatrix::from_dense(*c, Array2::from_shape_fn((d, d), |(i, j)| f(c.label_of(i), c.label_of(j))))
}

/// Δ-weighted band: element `(N + k, N) = Δ(−k/2 − N − shift)`.
fn delta_band(c: &CircleConfig, k: i64, shift: f64, sign: f64) -> OperatorMatrix {
    from_fn(c, |m, n| {
        if m == n + k {
            delta_sinc(-(k as f64) / 2.0 - n as f64 - shift) * sign
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[test]
fn displacement_quasi_periodicity() {
    let c = CircleConfig::new(1.3, 0.17, 12).unwrap();
    for k in [-3, 0, 1, 4] {
        let base = displacement_matrix(&c, PhaseDisplacement::new(0.45, k)).unwrap();
        for w in [1i64, 2, -1] {
            let shifted = displacement_matrix(&c, PhaseDisplacement::new(0.45 + c.period() * w as f64, k)).unwrap();
            let factor = Complex64::new(if (k * w) % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
                * Complex64::cis(-2.0 * PI * c.sigma() * w as f64);
            assert!(shifted.max_deviation(&base.scale(factor)) < 1e-12, "k={k} w={w}");
        }
        // flux factor makes the 2πr shift a pure sign
        let a = 0.45;
        let lhs = displacement_matrix(&c, PhaseDisplacement::new(a + c.period(), k))
            .unwrap()
            .scale(Complex64::cis((a + c.period()) * c.sigma() / c.radius()));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = base.scale(Complex64::cis(a * c.sigma() / c.radius()) * sign);
        assert!(lhs.max_deviation(&rhs) < 1e-12);
    }
}

#[test]
fn displacement_unitary_on_interior() {
    let c = cfg(0.1, 10);
    for (alpha, k) in [(0.3, 2), (2.9, -4)] {
        let d = displacement_matrix(&c, PhaseDisplacement::new(alpha, k)).unwrap();
        let dd = d.adjoint().matmul(&d).unwrap();
        let id = OperatorMatrix::identity(c);
        let dev = dd.max_deviation_where(&id, |m, n| c.contains(m + k) && c.contains(n + k));
        assert!(dev < 1e-12);
        // D† = D(−α, −K) everywhere
        let inv = displacement_matrix(&c, PhaseDisplacement::new(-alpha, -k)).unwrap();
        assert!(d.adjoint().max_deviation(&inv) < 1e-15);
    }
}

#[test]
fn sum_over_k_is_exact_dyad() {
    let c = cfg(0.1, 32);
    for alpha in [0.0, 0.4, 3.3, -7.1] {
        let sum = sum_displacements_over_k(&c, alpha, KParity::All);
        let oracle = from_fn(&c, |m, n| Complex64::cis(-alpha * (m + n) as f64 / 2.0 - alpha * c.sigma()));
        assert!(sum.max_deviation(&oracle) < 1e-13);
        assert!(sum.max_deviation(&rank_one_position(&c, alpha / 2.0, -alpha / 2.0)) < 1e-12);
    }
}

#[test]
fn even_and_odd_k_splits() {
    let c = CircleConfig::new(0.8, 0.23, 16).unwrap();
    let alpha = 1.1;
    let near = rank_one_position(&c, alpha / 2.0, -alpha / 2.0);
    let far = rank_one_position(&c, alpha / 2.0 + PI * c.radius(), -alpha / 2.0 + PI * c.radius());
    let half = Complex64::new(0.5, 0.0);
    let even = sum_displacements_over_k(&c, alpha, KParity::Even);
    let odd = sum_displacements_over_k(&c, alpha, KParity::Odd);
    assert!(even.max_deviation(&near.add(&far).unwrap().scale(half)) < 1e-12);
    assert!(odd.max_deviation(&near.add(&far.scale(Complex64::new(-1.0, 0.0))).unwrap().scale(half)) < 1e-12);
    let all = sum_displacements_over_k(&c, alpha, KParity::All);
    assert_eq!(even.add(&odd).unwrap().max_deviation(&all), 0.0);
}

#[test]
fn flux_factor_integrals() {
    let c = cfg(0.1, 32);
    let first = AlphaInterval::period(&c, 0);
    let second = AlphaInterval::period(&c, 1);
    for k in [-3, -2, 0, 1, 2, 5] {
        // non-periodic integrand for odd k: the Simpson tail needs finer panels
        let got = integrate_displacement_over_alpha(&c, k, true, first, 4096).unwrap();
        let expect = delta_band(&c, k, 0.0, 1.0);
        assert!(got.max_deviation(&expect) < 1e-9, "k={k}: {:e}", got.max_deviation(&expect));

        let next = integrate_displacement_over_alpha(&c, k, true, second, 4096).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        assert!(next.max_deviation(&delta_band(&c, k, 0.0, sign)) < 1e-9);

        let both = integrate_displacement_over_alpha(&c, k, true, AlphaInterval::new(0.0, 2.0 * c.period()), 2048).unwrap();
        // normalised by 2πr, so two periods double the even-k result
        let expect = if k % 2 == 0 { delta_band(&c, k, 0.0, 2.0) } else { OperatorMatrix::zeros(c) };
        assert!(both.max_deviation(&expect) < 1e-9);
    }
}

#[test]
fn even_k_integral_is_flipped_dyad() {
    let c = cfg(0.1, 32);
    for m in [-2i64, 1, 3] {
        let got = integrate_displacement_over_alpha(&c, 2 * m, true, AlphaInterval::period(&c, 0), 2048).unwrap();
        let dyad = from_fn(&c, |a, b| Complex64::new(if a == m && b == -m { 1.0 } else { 0.0 }, 0.0));
        assert!(got.max_deviation(&dyad) < 1e-9);
    }
}

#[test]
fn integral_without_flux_factor() {
    let c = cfg(0.1, 32);
    for k in [1, 2, -3] {
        let got = integrate_displacement_over_alpha(&c, k, false, AlphaInterval::period(&c, 0), 4096).unwrap();
        let expect = delta_band(&c, k, c.sigma(), 1.0);
        assert!(got.max_deviation(&expect) < 1e-9, "k={k}");
    }
}

#[test]
fn even_k_integrals_sum_to_parity() {
    let c = cfg(0.1, 16);
    let mut total = OperatorMatrix::zeros(c);
    let mut odd_total = OperatorMatrix::zeros(c);
    for k in -32..=32 {
        let term = integrate_displacement_over_alpha(&c, k, true, AlphaInterval::period(&c, 0), 4096).unwrap();
        if k % 2 == 0 {
            total = total.add(&term).unwrap();
        } else {
            odd_total = odd_total.add(&term).unwrap();
        }
    }
    assert!(total.max_deviation(&parity_matrix(&c)) < 1e-9);
    // odd shifts contribute Σ |p_{N+2M−1}⟩⟨p_N| Δ(−M − N + 1/2)
    let odd_expect = from_fn(&c, |a, b| {
        if (a - b) % 2 != 0 {
            let m = (a - b + 1) / 2;
            delta_sinc(-(m as f64) - b as f64 + 0.5)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    assert!(odd_total.max_deviation(&odd_expect) < 1e-8);
    let all = total.add(&odd_total).unwrap();
    assert!(all.max_deviation(&parity_matrix(&c).add(&odd_expect).unwrap()) < 1e-8);
}

#[test]
fn displaced_parity_periodicity_and_involution() {
    let c = CircleConfig::new(1.2, 0.3, 12).unwrap();
    for (alpha, k) in [(0.0, 0), (0.7, 2), (-1.9, -3), (2.2, 6)] {
        let u = displaced_parity_matrix(&c, PhaseDisplacement::new(alpha, k)).unwrap();
        let v = displaced_parity_matrix(&c, PhaseDisplacement::new(alpha + PI * c.radius(), k)).unwrap();
        assert!(u.max_deviation(&v) < 1e-12);
        let sq = u.matmul(&u).unwrap();
        let id = OperatorMatrix::identity(c);
        let dev = sq.max_deviation_where(&id, |m, n| c.contains(2 * k - m) && c.contains(2 * k - n));
        assert!(dev < 1e-12);
    }
    let u00 = displaced_parity_matrix(&c, PhaseDisplacement::new(0.0, 0)).unwrap();
    assert_eq!(u00.max_deviation(&parity_matrix(&c)), 0.0);
}

#[test]
fn displaced_parity_integrals_resolve_identity() {
    let c = cfg(0.1, 32);
    let mut total = OperatorMatrix::zeros(c);
    for k in c.labels() {
        let p = integrate_displaced_parity_over_alpha(&c, k, 2048).unwrap();
        let proj = from_fn(&c, |a, b| Complex64::new(if a == k && b == k { 1.0 } else { 0.0 }, 0.0));
        assert!(p.max_deviation(&proj) < 1e-9, "k={k}");
        total = total.add(&p).unwrap();
    }
    assert!(total.max_deviation(&OperatorMatrix::identity(c)) < 1e-9);
}

#[test]
fn displaced_parity_sum_is_diametric_projectors() {
    let c = cfg(0.1, 16);
    let alpha = 0.4;
    let sum = sum_displaced_parity_over_k(&c, alpha);
    let target = rank_one_position(&c, alpha, alpha)
        .add(&rank_one_position(&c, alpha + PI, alpha + PI))
        .unwrap()
        .scale(Complex64::new(0.5, 0.0));
    let half = c.n_max() as i64 / 2;
    assert!(sum.max_deviation_where(&target, |m, n| m.abs() <= half && n.abs() <= half) < 1e-10);
    assert!(sum.hermiticity_defect() < 1e-12);
    assert!(sum.max_deviation(&sum_displaced_parity_over_k(&c, alpha + PI)) < 1e-12);
}

#[test]
fn fourier_route_reproduces_displaced_parity() {
    let c = cfg(0.1, 16);
    for (alpha, k) in [(0.0, 0), (0.3, 1), (1.1, -2)] {
        let d = PhaseDisplacement::new(alpha, k);
        let f = fourier_relation_d_to_u(&c, d, 2048).unwrap();
        let u = displaced_parity_matrix(&c, d).unwrap();
        assert!(f.max_deviation(&u) < 1e-8, "({alpha},{k})");
    }
    let shifted = fourier_relation_d_to_u(&c, PhaseDisplacement::new(0.3 + 2.0 * PI, 1), 2048).unwrap();
    let u = displaced_parity_matrix(&c, PhaseDisplacement::new(0.3, 1)).unwrap();
    assert!(shifted.max_deviation(&u) < 1e-8);
}

proptest! {
    #[test]
    fn composition_law(
        alpha in -5.0f64..5.0, beta in -5.0f64..5.0,
        k in -4i64..=4, m in -4i64..=4,
        sigma in -1.0f64..1.0, radius in 0.5f64..2.0,
    ) {
        let c = CircleConfig::new(radius, sigma, 10).unwrap();
        let (d1, d2) = (PhaseDisplacement::new(alpha, k), PhaseDisplacement::new(beta, m));
        let (sum, phase) = compose_displacements(d1, d2, &c);
        let lhs = displacement_matrix(&c, d1).unwrap().matmul(&displacement_matrix(&c, d2).unwrap()).unwrap();
        let rhs = displacement_matrix(&c, sum).unwrap().scale(phase);
        prop_assert!(lhs.max_deviation_where(&rhs, |_, n| c.contains(n + m)) < 1e-12);
    }

    #[test]
    fn displaced_parity_is_hermitian_involution(alpha in -6.0f64..6.0, k in -5i64..=5, sigma in -1.0f64..1.0) {
        let c = CircleConfig::new(1.0, sigma, 8).unwrap();
        let u = displaced_parity_matrix(&c, PhaseDisplacement::new(alpha, k)).unwrap();
        prop_assert!(u.hermiticity_defect() < 1e-14);
    }
}
