//! Identity suite: every structural identity of the operator algebra, the
//! phase-space functions and the dynamics, plus a comparison of the printed
//! closed forms against dense-product and quadrature oracles.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use ringphase::quadrature::simpson;
use ringphase::phasespace::wigner_function_complex;
use ringphase::{
    compose_displacements, delta_sinc, displaced_parity_matrix, displacement_matrix, evolve_free,
    evolved_zak_coefficients, fourier_relation_d_to_u, gaussian_momentum, gaussian_position,
    integrate_displaced_parity_over_alpha, integrate_displacement_over_alpha, parity_matrix,
    project_to_momentum, rank_one_position, sigma_shift_check, sum_displaced_parity_over_k,
    sum_displacements_over_k, theta_position, trace_product, weyl_function, weyl_sigma_shift_check,
    wigner_from_weyl, wigner_function, wigner_marginal_momentum, wigner_marginal_position,
    zak_state, AlphaInterval, CircleConfig, Complex64, DensityOperator, EvolutionParams,
    GaussianParams, KParity, MomentumState, OperatorMatrix, PhaseDisplacement,
};
use serde::Serialize;

use crate::args::{config_from, VerifyArgs};
use crate::error::{CliError, CliResult};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub config: CircleConfig,
    pub gaussian: GaussianParams,
}

impl Settings {
    pub fn new(config: CircleConfig, gaussian: GaussianParams) -> Self {
        Self { config, gaussian }
    }

    pub fn from_args(args: &VerifyArgs) -> CliResult<Self> {
        if args.nmax < 4 {
            return Err(CliError::Usage("verify needs --nmax ≥ 4".into()));
        }
        if !args.a_re.is_finite() || !args.a_im.is_finite() {
            return Err(CliError::Usage("A must be finite".into()));
        }
        let config = config_from(args.radius, args.sigma, args.nmax, args.panels)?;
        Ok(Self::new(config, GaussianParams::new(args.a_re, args.a_im)))
    }

    fn panels(&self) -> usize {
        self.config.quad_panels()
    }

    /// Integrands that are not periodic over the interval lose Simpson's
    /// spectral accuracy; they get twice the panels.
    fn nonperiodic_panels(&self) -> usize {
        2 * self.config.quad_panels()
    }

    fn zak(&self) -> CliResult<MomentumState> {
        Ok(zak_state(&self.config, &self.gaussian)?)
    }

    fn zak_rho(&self) -> CliResult<DensityOperator> {
        Ok(DensityOperator::from_pure(&self.zak()?)?)
    }

    fn shifted_gaussian(&self) -> GaussianParams {
        GaussianParams { a: self.gaussian.a + Complex64::new(0.0, 1.0) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn check(criterion: u8, name: impl Into<String>, deviation: f64, tolerance: f64) -> Check {
    Check { criterion, name: name.into(), deviation, tolerance, passed: deviation <= tolerance }
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub id: &'static str,
    pub title: &'static str,
    pub printed: &'static str,
    pub derived: &'static str,
    pub printed_deviation: f64,
    pub derived_deviation: f64,
    pub tolerance: f64,
    pub note: String,
}

impl Discrepancy {
    pub fn printed_holds(&self) -> bool {
        self.printed_deviation <= self.tolerance
    }

    pub fn derived_holds(&self) -> bool {
        self.derived_deviation <= self.tolerance
    }

    /// The printed form is refuted and the derived one confirmed.
    pub fn detected(&self) -> bool {
        !self.printed_holds() && self.derived_holds()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub settings: String,
    pub checks: Vec<Check>,
    pub discrepancies: Vec<Discrepancy>,
}

impl Report {
    /// Failed checks plus discrepancy items whose derived form does not hold.
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
            + self.discrepancies.iter().filter(|d| !d.derived_holds()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn discrepancy(&self, id: &str) -> Option<&Discrepancy> {
        self.discrepancies.iter().find(|d| d.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "identity suite: {}", self.settings);
        let _ = writeln!(s, "{:>4}  {:<6} {:>10}  {:>9}  check", "crit", "result", "deviation", "tolerance");
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{:>4}  {:<6} {:>10.3e}  {:>9.1e}  {}", c.criterion, tag, c.deviation, c.tolerance, c.name);
        }
        let _ = writeln!(s, "\nprinted-formula discrepancies");
        for d in &self.discrepancies {
            let verdict = match (d.printed_holds(), d.derived_holds()) {
                (false, true) => "printed form refuted, derived form confirmed",
                (true, true) => "both forms hold here",
                (true, false) => "printed form holds, derived form fails",
                (false, false) => "neither form holds",
            };
            let _ = writeln!(s, "({}) {}: {}", d.id, d.title, verdict);
            let _ = writeln!(s, "    printed  {:<44} deviation {:.3e}", d.printed, d.printed_deviation);
            let _ = writeln!(s, "    derived  {:<44} deviation {:.3e}", d.derived, d.derived_deviation);
            if !d.note.is_empty() {
                let _ = writeln!(s, "    {}", d.note);
            }
        }
        let verdict = if self.passed() { "all checks passed".to_string() } else { format!("{} failure(s)", self.failures()) };
        let _ = writeln!(s, "\n{verdict}");
        s
    }
}

fn from_fn(c: &CircleConfig, f: impl Fn(i64, i64) -> Complex64) -> OperatorMatrix {
    OperatorMatrix::from_fn(*c, f)
}

/// Element `(N + k, N) = sign·Δ(−k/2 − N − shift)`.
fn delta_band(c: &CircleConfig, k: i64, shift: f64, sign: f64) -> OperatorMatrix {
    from_fn(c, |m, n| if m == n + k { delta_sinc(-(k as f64) / 2.0 - n as f64 - shift) * sign } else { ZERO })
}

fn dyad(c: &CircleConfig, a: i64, b: i64) -> OperatorMatrix {
    from_fn(c, |m, n| if m == a && n == b { ONE } else { ZERO })
}

fn odd_sign(k: i64) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

const SAMPLE_ALPHAS: [f64; 3] = [0.0, 0.4, 3.3];

pub fn resolution_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let mut out = Vec::new();
    let dyad_dev = worst(SAMPLE_ALPHAS.iter().map(|&a| {
        sum_displacements_over_k(c, a, KParity::All).max_deviation(&rank_one_position(c, a / 2.0, -a / 2.0))
    }));
    out.push(check(1, "Σ_K D(α,K) equals |α/2⟩⟨−α/2|", dyad_dev, 1e-12));

    let (mut even_dev, mut odd_dev): (f64, f64) = (0.0, 0.0);
    for &a in &SAMPLE_ALPHAS {
        let near = rank_one_position(c, a / 2.0, -a / 2.0);
        let far = rank_one_position(c, a / 2.0 + PI * c.radius(), -a / 2.0 + PI * c.radius());
        let half = Complex64::new(0.5, 0.0);
        let even = near.add(&far)?.scale(half);
        let odd = near.add(&far.scale(-ONE))?.scale(half);
        even_dev = even_dev.max(sum_displacements_over_k(c, a, KParity::Even).max_deviation(&even));
        odd_dev = odd_dev.max(sum_displacements_over_k(c, a, KParity::Odd).max_deviation(&odd));
    }
    out.push(check(1, "even-K sum equals ½(|α/2⟩⟨−α/2| + diametric dyad)", even_dev, 1e-12));
    out.push(check(1, "odd-K sum equals ½(|α/2⟩⟨−α/2| − diametric dyad)", odd_dev, 1e-12));

    let first = AlphaInterval::period(c, 0);
    let second = AlphaInterval::period(c, 1);
    let (mut flux_dev, mut next_dev, mut bare_dev, mut zero_dev): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for k in -2..=3i64 {
        let panels = if k % 2 == 0 { s.panels() } else { s.nonperiodic_panels() };
        let got = integrate_displacement_over_alpha(c, k, true, first, panels)?;
        flux_dev = flux_dev.max(got.max_deviation(&delta_band(c, k, 0.0, 1.0)));
        let next = integrate_displacement_over_alpha(c, k, true, second, panels)?;
        next_dev = next_dev.max(next.max_deviation(&delta_band(c, k, 0.0, odd_sign(k))));
        let bare = integrate_displacement_over_alpha(c, k, false, first, s.nonperiodic_panels())?;
        bare_dev = bare_dev.max(bare.max_deviation(&delta_band(c, k, c.sigma(), 1.0)));
        if k % 2 != 0 {
            let both = integrate_displacement_over_alpha(c, k, true, AlphaInterval::new(0.0, 2.0 * c.period()), s.panels())?;
            zero_dev = zero_dev.max(both.max_deviation(&OperatorMatrix::zeros(*c)));
        }
    }
    out.push(check(1, "flux-factor α-integral on [0,2πr] equals Δ(−K/2−N) band", flux_dev, 1e-9));
    out.push(check(1, "flux-factor α-integral on [2πr,4πr] negates odd K", next_dev, 1e-9));
    out.push(check(1, "α-integral without flux factor equals Δ(−K/2−N−σ) band", bare_dev, 1e-9));
    out.push(check(1, "odd-K flux-factor α-integral on [0,4πr] vanishes", zero_dev, 1e-9));
    Ok(out)
}

pub fn parity_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let u0 = parity_matrix(c);
    let id = OperatorMatrix::identity(*c);
    let mut out = vec![
        check(2, "U₀ = U₀†", u0.hermiticity_defect(), 0.0),
        check(2, "U₀² = 1", u0.matmul(&u0)?.max_deviation(&id), 0.0),
    ];

    let limit = 2 * c.n_max() as i64;
    let mut even_sum = OperatorMatrix::zeros(*c);
    for k in (-limit..=limit).filter(|k| k % 2 == 0) {
        even_sum = even_sum.add(&integrate_displacement_over_alpha(c, k, true, AlphaInterval::period(c, 0), s.panels())?)?;
    }
    out.push(check(2, "even-K flux-factor integrals sum to U₀", even_sum.max_deviation(&u0), 1e-9));

    let mut period_dev: f64 = 0.0;
    for (alpha, k) in [(0.7, 2), (-1.9, -3), (2.2, 1)] {
        let u = displaced_parity_matrix(c, PhaseDisplacement::new(alpha, k))?;
        let v = displaced_parity_matrix(c, PhaseDisplacement::new(alpha + PI * c.radius(), k))?;
        period_dev = period_dev.max(u.max_deviation(&v));
    }
    out.push(check(2, "U(α+πr,K) = U(α,K)", period_dev, 1e-12));

    let mut proj_dev: f64 = 0.0;
    let mut total = OperatorMatrix::zeros(*c);
    for k in c.labels() {
        let p = integrate_displaced_parity_over_alpha(c, k, s.panels())?;
        proj_dev = proj_dev.max(p.max_deviation(&dyad(c, k, k)));
        total = total.add(&p)?;
    }
    out.push(check(2, "(1/2πr)∫U(α,K)dα = |p_K⟩⟨p_K|", proj_dev, 1e-9));
    out.push(check(2, "Σ_K (1/2πr)∫U(α,K)dα = 1", total.max_deviation(&id), 1e-9));

    let alpha = 0.4;
    let sum = sum_displaced_parity_over_k(c, alpha);
    let target = rank_one_position(c, alpha, alpha)
        .add(&rank_one_position(c, alpha + PI * c.radius(), alpha + PI * c.radius()))?
        .scale(Complex64::new(0.5, 0.0));
    let half = c.n_max() as i64 / 2;
    let dev = sum.max_deviation_where(&target, |m, n| m.abs() <= half && n.abs() <= half);
    out.push(check(2, "Σ_K U(α,K) equals diametric projector half-sum (interior)", dev, 1e-10));
    Ok(out)
}

pub fn fourier_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = CircleConfig::with_panels(s.config.radius(), s.config.sigma(), 16, s.panels())?;
    let mut out = Vec::new();
    for (alpha, k) in [(0.0, 0), (0.3, 1), (1.1, -2)] {
        let d = PhaseDisplacement::new(alpha, k);
        let dev = fourier_relation_d_to_u(&c, d, s.panels())?.max_deviation(&displaced_parity_matrix(&c, d)?);
        out.push(check(3, format!("Fourier route reproduces U({alpha},{k}) at n_max=16"), dev, 1e-8));
    }
    Ok(out)
}

/// Zak state at t = 0 and t = 1.
fn phase_space_states(s: &Settings) -> CliResult<Vec<(&'static str, DensityOperator)>> {
    let zak = s.zak()?;
    Ok(vec![
        ("t=0", DensityOperator::from_pure(&zak)?),
        ("t=1", DensityOperator::from_pure(&evolve_free(&zak, EvolutionParams::new(1.0)))?),
    ])
}

pub fn structure_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let n_lim = (c.n_max() as i64).min(6);
    let k_lim = (2 * c.n_max() as i64).min(4);
    let xs: Vec<f64> = (0..64).map(|i| c.period() * i as f64 / 64.0).collect();
    let alphas: Vec<f64> = (0..40).map(|i| -c.period() + 0.1 * c.period() * i as f64 / 2.0).collect();
    let (mut imag, mut period, mut origin, mut bound, mut conj, mut quasi): (f64, f64, f64, f64, f64, f64) =
        (0.0, 0.0, 0.0, f64::NEG_INFINITY, 0.0, 0.0);
    let flux = Complex64::cis(-2.0 * PI * c.sigma());
    for (_, rho) in phase_space_states(s)? {
        for &x in &xs {
            for n in -n_lim..=n_lim {
                let w = wigner_function_complex(&rho, x, n)?;
                imag = imag.max(w.im.abs());
                period = period.max((w - wigner_function_complex(&rho, x + PI * c.radius(), n)?).norm());
            }
        }
        origin = origin.max((weyl_function(&rho, 0.0, 0) - ONE).norm());
        for &a in &alphas {
            for k in -k_lim..=k_lim {
                let w = weyl_function(&rho, a, k);
                bound = bound.max(w.norm() - 1.0);
                conj = conj.max((w - weyl_function(&rho, -a, -k).conj()).norm());
                quasi = quasi.max((weyl_function(&rho, a + c.period(), k) - w * flux * odd_sign(k)).norm());
            }
        }
    }
    Ok(vec![
        check(4, "|Im W| before discarding", imag, 1e-10),
        check(4, "W̃(0,0) = 1", origin, 1e-12),
        check(4, "|W̃| − 1 ≤ 0", bound.max(0.0), 1e-12),
        check(4, "W̃(α,K) = conj W̃(−α,−K)", conj, 1e-12),
        check(4, "W(x+πr,N) = W(x,N)", period, 1e-12),
        check(4, "W̃(α+2πr,K) = (−1)^K e^{−i2πσ} W̃(α,K)", quasi, 1e-10),
    ])
}

/// `Σ_{a+b even} ρ₁_ab ρ₂_ba`, the part of the trace the phase-space overlap sees.
pub fn even_sublattice_trace(r1: &DensityOperator, r2: &DensityOperator) -> f64 {
    let c = r1.config();
    let mut acc = ZERO;
    for a in c.labels() {
        for b in c.labels().filter(|b| (a + b) % 2 == 0) {
            acc += r1.element(a, b) * r2.element(b, a);
        }
    }
    acc.re
}

/// `(label, ρ₁, ρ₂)` for the trace-product comparison.
pub fn trace_pairs(s: &Settings) -> CliResult<Vec<(String, DensityOperator, DensityOperator)>> {
    let c = s.config;
    let zak = s.zak_rho()?;
    let other = DensityOperator::from_pure(&zak_state(&c, &s.shifted_gaussian())?)?;
    let e0 = DensityOperator::from_pure(&MomentumState::basis(c, 0)?)?;
    let e1 = DensityOperator::from_pure(&MomentumState::basis(c, 1)?)?;
    Ok(vec![
        ("Zak(A) with itself".to_string(), zak.clone(), zak.clone()),
        ("e₀ with e₁".to_string(), e0, e1),
        ("Zak(A) with Zak(A+i)".to_string(), zak, other),
    ])
}

pub fn marginal_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let mut out = Vec::new();
    for (label, rho) in phase_space_states(s)? {
        let mut diag: f64 = 0.0;
        let mut total = 0.0;
        for n in c.labels() {
            let m = wigner_marginal_momentum(&rho, n, s.panels())?;
            diag = diag.max((m - rho.element(n, n).re).abs());
            total += m;
        }
        let pos = worst((0..17).map(|i| {
            let x = c.period() * i as f64 / 17.0;
            let half = 0.5 * (rho.position_density(x) + rho.position_density(x + PI * c.radius()));
            wigner_marginal_position(&rho, x).map_or(f64::NAN, |m| (m - half).abs())
        }));
        out.push(check(5, format!("(1/2πr)∫W dx = ρ_NN, {label}"), diag, 1e-8));
        out.push(check(5, format!("Σ_N W = ½(⟨x|ρ|x⟩ + ⟨x+πr|ρ|x+πr⟩), {label}"), pos, 1e-8));
        out.push(check(5, format!("total phase-space weight = 1, {label}"), (total - 1.0).abs(), 1e-8));
    }
    Ok(out)
}

/// The overlap identity that does hold: the even-sublattice part of the trace.
pub fn even_sublattice_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for (label, a, b) in trace_pairs(s)? {
        let dev = (trace_product(&a, &b, s.panels())? - even_sublattice_trace(&a, &b)).abs();
        out.push(check(5, format!("phase-space overlap = even-sublattice trace, {label}"), dev, 1e-7));
    }
    Ok(out)
}

/// The printed trace-product formula, `(1/2πr)∫Σ_N W₁W₂ = Tr(ρ₁ρ₂)`.
pub fn printed_trace_product_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    for (label, a, b) in trace_pairs(s)? {
        let dev = (trace_product(&a, &b, s.panels())? - a.trace_with(&b)?.re).abs();
        out.push(check(5, format!("trace-product formula = Tr(ρ₁ρ₂), {label}"), dev, 1e-7));
    }
    Ok(out)
}

pub fn reconstruction_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let rho = s.zak_rho()?;
    let n_lim = s.config.n_max() as i64;
    let points: [(f64, i64); 5] = [(0.3, 0), (1.0, 1), (2.5, -1), (4.0, 2), (5.9, -3)];
    let dev = worst(points.iter().filter(|(_, n)| n.abs() <= n_lim).map(|&(x, n)| {
        match (wigner_from_weyl(&rho, x, n, s.panels()), wigner_function(&rho, x, n)) {
            (Ok(a), Ok(b)) => (a - b).abs(),
            _ => f64::NAN,
        }
    }));
    Ok(vec![check(6, "Wigner from Weyl matches direct Wigner at 5 points", dev, 1e-7)])
}

pub fn sigma_shift_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let g = s.gaussian;
    let build = move |cfg: &CircleConfig| zak_state(cfg, &g);
    let mut w_dev: f64 = 0.0;
    for (x, n) in [(0.5, 0), (1.3, -2), (2.0, 3)] {
        let (up, at) = sigma_shift_check(build, &s.config, x, n)?;
        w_dev = w_dev.max((up - at).abs());
    }
    let mut weyl_dev: f64 = 0.0;
    for (alpha, k) in [(0.3, 1), (0.0, 0), (2.1, -2)] {
        let (lo, hi) = weyl_sigma_shift_check(build, &s.config, alpha, k)?;
        weyl_dev = weyl_dev.max((lo - hi).norm());
    }
    Ok(vec![
        check(7, "W_{σ+1}(x,p_N) = W_σ(x,p_{N+1})", w_dev, 1e-8),
        check(7, "W̃_{σ+1}(α,K) = W̃_σ(α,K)", weyl_dev, 1e-8),
    ])
}

pub fn theta_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let mut out = Vec::new();
    for (label, g) in [("A", s.gaussian), ("A+i", s.shifted_gaussian())] {
        let state = zak_state(c, &g)?;
        let mut pointwise: f64 = 0.0;
        for i in 0..64 {
            let x = c.period() * i as f64 / 64.0;
            pointwise = pointwise.max((state.position_wavefunction(x) - theta_position(c, &g, x)?).norm());
        }
        let mut projection: f64 = 0.0;
        for n in -8i64..=8 {
            if c.contains(n) {
                let coeff = project_to_momentum(c, |x| theta_position(c, &g, x).unwrap_or(ZERO * f64::NAN), n, s.panels())?;
                projection = projection.max((coeff - state.coeff(n)).norm());
            }
        }
        out.push(check(8, format!("momentum route vs Θ₃ closed form, {label}"), pointwise, 1e-8));
        out.push(check(8, format!("projection of Θ₃ form onto momenta, {label}"), projection, 1e-8));
    }
    Ok(out)
}

pub fn dynamics_checks(s: &Settings) -> CliResult<Vec<Check>> {
    let c = &s.config;
    let zak = s.zak()?;
    let ev = EvolutionParams::new(1.0);
    let a = evolve_free(&zak, ev);
    let b = evolved_zak_coefficients(c, &s.gaussian, ev)?;
    let routes = worst(c.labels().map(|n| (a.coeff(n) - b.coeff(n)).norm()));
    let norm = worst([0.1, 1.0, 10.0].iter().map(|&t| (evolve_free(&zak, EvolutionParams::new(t)).norm_sqr() - zak.norm_sqr()).abs()));
    let r0 = DensityOperator::from_pure(&zak)?;
    let r1 = DensityOperator::from_pure(&a)?;
    let mut marg: f64 = 0.0;
    for n in c.labels() {
        marg = marg.max((wigner_marginal_momentum(&r0, n, s.panels())? - wigner_marginal_momentum(&r1, n, s.panels())?).abs());
    }
    Ok(vec![
        check(9, "phase route vs closed form (1/2 − it) at t=1", routes, 1e-12),
        check(9, "norm preserved for t ∈ {0.1, 1, 10}", norm, 1e-15),
        check(9, "momentum marginal at t=0 equals t=1", marg, 1e-8),
    ])
}

pub fn discrepancies(s: &Settings) -> CliResult<Vec<Discrepancy>> {
    let c = &s.config;
    let r = c.radius();
    let mut out = Vec::new();

    // composition: dense product against both phase conventions
    let (d1, d2) = (PhaseDisplacement::new(0.7, 1), PhaseDisplacement::new(0.3, 2));
    let product = displacement_matrix(c, d1)?.matmul(&displacement_matrix(c, d2)?)?;
    let (sum, derived_phase) = compose_displacements(d1, d2, c);
    let exponent = (d1.k as f64 * d2.alpha - d2.k as f64 * d1.alpha) / (2.0 * r);
    let printed_phase = Complex64::new(exponent.exp(), 0.0);
    let combined = displacement_matrix(c, sum)?;
    let interior = |_: i64, n: i64| c.contains(n + d2.k);
    out.push(Discrepancy {
        id: "a",
        title: "composition phase of D(α,K)D(β,M)",
        printed: "exp((Kβ − Mα)/2r)",
        derived: "exp(i(Kβ − Mα)/2r)",
        printed_deviation: product.max_deviation_where(&combined.scale(printed_phase), interior),
        derived_deviation: product.max_deviation_where(&combined.scale(derived_phase), interior),
        tolerance: 1e-12,
        note: "dense product D(0.7,1)·D(0.3,2) on interior columns".into(),
    });

    // even-K flux-factor integral, K = 2M
    let m = 1;
    let integral = integrate_displacement_over_alpha(c, 2 * m, true, AlphaInterval::period(c, 0), s.panels())?;
    out.push(Discrepancy {
        id: "b",
        title: "flux-factor α-integral of D(α,2M)",
        printed: "|p_{−M}⟩⟨p_M|",
        derived: "|p_M⟩⟨p_{−M}|",
        printed_deviation: integral.max_deviation(&dyad(c, -m, m)),
        derived_deviation: integral.max_deviation(&dyad(c, m, -m)),
        tolerance: 1e-9,
        note: "Simpson quadrature at M = 1".into(),
    });

    // flux exponent in U(α,K) = e^{iλασ/r} D(2α,2K) U₀
    let (alpha, k) = (0.7, 2);
    let u = displaced_parity_matrix(c, PhaseDisplacement::new(alpha, k))?;
    let du0 = displacement_matrix(c, PhaseDisplacement::new(2.0 * alpha, 2 * k))?.matmul(&parity_matrix(c))?;
    let keep = |_: i64, n: i64| c.contains(2 * k - n);
    let with = |lambda: f64| du0.scale(Complex64::cis(lambda * alpha * c.sigma() / r));
    let ratio = u.get(2 * k, 0) / du0.get(2 * k, 0);
    let fitted = ratio.arg() * r / (alpha * c.sigma());
    out.push(Discrepancy {
        id: "c",
        title: "flux factor in U(α,K) = (flux)·D(2α,2K)·U₀",
        printed: "exp(iασ/r)",
        derived: "exp(i2ασ/r)",
        printed_deviation: u.max_deviation_where(&with(1.0), keep),
        derived_deviation: u.max_deviation_where(&with(2.0), keep),
        tolerance: 1e-12,
        note: format!("generative D·U₀·D† at (α,K) = (0.7,2); fitted exponent λ in exp(iλασ/r): {fitted:.12}"),
    });

    // trace product
    let pairs = trace_pairs(s)?;
    let mut printed_dev: f64 = 0.0;
    let mut derived_dev: f64 = 0.0;
    let mut detail = Vec::new();
    for (label, a, b) in &pairs {
        let overlap = trace_product(a, b, s.panels())?;
        let tr = a.trace_with(b)?.re;
        printed_dev = printed_dev.max((overlap - tr).abs());
        derived_dev = derived_dev.max((overlap - even_sublattice_trace(a, b)).abs());
        detail.push(format!("{label}: overlap {overlap:.6}, Tr {tr:.6}"));
    }
    out.push(Discrepancy {
        id: "d",
        title: "phase-space overlap (1/2πr)∫Σ_N W₁W₂ dx",
        printed: "Tr(ρ₁ρ₂)",
        derived: "Σ_{a+b even} ρ₁_ab ρ₂_ba",
        printed_deviation: printed_dev,
        derived_deviation: derived_dev,
        tolerance: 1e-7,
        note: detail.join("; "),
    });

    // Δ(x) as the β-average of e^{iβx}
    let xs = [0.5, 1.3, -0.7];
    let mut printed_dev: f64 = 0.0;
    let mut derived_dev: f64 = 0.0;
    for &x in &xs {
        let quad = simpson(|b: f64| Complex64::cis(b * x), 0.0, 2.0 * PI, s.nonperiodic_panels())? / (2.0 * PI);
        let sinc = (PI * x).sin() / (PI * x);
        printed_dev = printed_dev.max((quad - Complex64::cis(-PI * x) * sinc).norm());
        derived_dev = derived_dev.max((quad - delta_sinc(x)).norm());
    }
    out.push(Discrepancy {
        id: "e",
        title: "closed form of Δ(x) = (1/2π)∫₀^{2π} e^{iβx} dβ",
        printed: "e^{−iπx} sin(πx)/πx",
        derived: "e^{+iπx} sin(πx)/πx",
        printed_deviation: printed_dev,
        derived_deviation: derived_dev,
        tolerance: 1e-9,
        note: "quadrature at x ∈ {0.5, 1.3, −0.7}".into(),
    });

    // Fourier transform constant, visible only for complex A
    let g = GaussianParams::new(1.0, 1.0);
    let mut printed_dev: f64 = 0.0;
    let mut derived_dev: f64 = 0.0;
    for &p in &[-1.0, 0.5, 2.0] {
        let quad = simpson(|y: f64| gaussian_position(&g, y) * Complex64::cis(-p * y), -16.0, 18.0, 8192)?;
        let a = g.a;
        let base = Complex64::new(-0.5 * p * p, 0.0) - Complex64::new(0.0, SQRT_2) * a * p;
        let printed = SQRT_2 * PI.powf(0.25) * (base + a * a.im).exp();
        printed_dev = printed_dev.max((quad - printed).norm());
        derived_dev = derived_dev.max((quad - gaussian_momentum(&g, p)).norm());
    }
    out.push(Discrepancy {
        id: "f",
        title: "Fourier transform of the displaced Gaussian",
        printed: "√2π^{1/4} exp(−p²/2 − i√2Ap + A·A_I)",
        derived: "√2π^{1/4} exp(−p²/2 − i√2Ap + i·A·A_I)",
        printed_deviation: printed_dev,
        derived_deviation: derived_dev,
        tolerance: 1e-9,
        note: "quadrature at A = 1+i, p ∈ {−1, 0.5, 2}".into(),
    });
    Ok(out)
}

pub fn run_suite(s: &Settings) -> CliResult<Report> {
    let mut checks = Vec::new();
    checks.extend(resolution_checks(s)?);
    checks.extend(parity_checks(s)?);
    checks.extend(fourier_checks(s)?);
    checks.extend(structure_checks(s)?);
    checks.extend(marginal_checks(s)?);
    checks.extend(even_sublattice_checks(s)?);
    checks.extend(reconstruction_checks(s)?);
    checks.extend(sigma_shift_checks(s)?);
    checks.extend(theta_checks(s)?);
    checks.extend(dynamics_checks(s)?);
    let c = &s.config;
    let settings = format!(
        "r={}, σ={}, A={}{:+}i, n_max={}, panels={}",
        c.radius(),
        c.sigma(),
        s.gaussian.a.re,
        s.gaussian.a.im,
        c.n_max(),
        c.quad_panels()
    );
    Ok(Report { settings, checks, discrepancies: discrepancies(s)? })
}
