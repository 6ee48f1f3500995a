//! Data-producing subcommands. Every command renders all of its outputs in
//! memory, runs its self-checks, and only then touches the filesystem.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use ringphase::{
    evolve_free, evolved_zak_coefficients, weyl_grid, wigner_grid, wigner_marginal_momentum,
    wigner_marginal_position, zak_state, CircleConfig, Complex64, DensityOperator, MomentumState,
};

use crate::args::{ReplayArgs, RunArgs};
use crate::emit::{Cell, Rendered, Table};
use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

pub const PERIODICITY_TOL: f64 = 1e-10;
pub const QUASI_PERIODICITY_TOL: f64 = 1e-10;
pub const WEYL_BOUND_SLACK: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
pub const TWO_ROUTE_TOL: f64 = 1e-12;
pub const MARGINAL_TOL: f64 = 1e-8;

/// Files written by one run, plus the manifest path.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Zak state at the configured flux, evolved to `--time`.
pub fn prepare_state(args: &RunArgs, config: &CircleConfig) -> CliResult<MomentumState> {
    let zak = zak_state(config, &args.gaussian()?)?;
    Ok(evolve_free(&zak, args.evolution()?))
}

fn self_check(file: &str, what: &str, deviation: f64, tol: f64) -> CliResult<()> {
    if deviation <= tol {
        Ok(())
    } else {
        Err(CliError::SelfCheck { file: file.to_string(), detail: format!("{what}: {deviation:e} > {tol:e}") })
    }
}

fn flux_configs(args: &RunArgs) -> CliResult<Vec<CircleConfig>> {
    let base = args.config()?;
    match args.sigmas() {
        None => Ok(vec![base]),
        Some(sigmas) => sigmas
            .into_iter()
            .map(|s| base.with_sigma(s).map_err(|e| CliError::Usage(e.to_string())))
            .collect(),
    }
}

fn reject_sweep(args: &RunArgs, command: &str) -> CliResult<()> {
    if args.sigma_sweep.is_some() {
        return Err(CliError::Usage(format!("{command} does not take --sigma-sweep")));
    }
    Ok(())
}

pub fn render_state(args: &RunArgs) -> CliResult<Vec<Rendered>> {
    reject_sweep(args, "state")?;
    let cfg = args.config()?;
    let state = prepare_state(args, &cfg)?;
    let mut t = Table::new(&["index", "re", "im", "abs2"]);
    for n in cfg.labels() {
        let c = state.coeff(n);
        t.push(vec![n.into(), c.re.into(), c.im.into(), c.norm_sqr().into()]);
    }
    let file = "state";
    self_check(file, "total probability", (state.norm_sqr() - 1.0).abs(), NORM_TOL)?;
    Ok(vec![Rendered::from_table(file, &t, args.format)?])
}

pub fn render_evolve(args: &RunArgs) -> CliResult<Vec<Rendered>> {
    reject_sweep(args, "evolve")?;
    let cfg = args.config()?;
    let phased = prepare_state(args, &cfg)?;
    let closed = evolved_zak_coefficients(&cfg, &args.gaussian()?, args.evolution()?)?;
    let deviation = cfg.labels().map(|n| (phased.coeff(n) - closed.coeff(n)).norm()).fold(0.0, f64::max);
    let mut t = Table::new(&["index", "momentum", "re", "im", "abs2"]);
    for n in cfg.labels() {
        let c = phased.coeff(n);
        t.push(vec![n.into(), cfg.momentum(n).into(), c.re.into(), c.im.into(), c.norm_sqr().into()]);
    }
    let file = "evolve";
    self_check(file, "phase route vs closed form", deviation, TWO_ROUTE_TOL)?;
    self_check(file, "total probability", (phased.norm_sqr() - 1.0).abs(), NORM_TOL)?;
    Ok(vec![Rendered::from_table(file, &t, args.format)?])
}

pub fn render_wigner(args: &RunArgs) -> CliResult<Vec<Rendered>> {
    let file = "wigner";
    let sweep = args.sigma_sweep.is_some();
    let columns: &[&str] = if sweep { &["x", "sigma", "n", "momentum", "wigner"] } else { &["x", "n", "momentum", "wigner"] };
    let mut t = Table::new(columns);
    let xs = args.xs()?;
    for cfg in flux_configs(args)? {
        let labels = args.n_labels(&cfg)?;
        let rho = DensityOperator::from_pure(&prepare_state(args, &cfg)?)?;
        let grid = wigner_grid(&rho, &xs, labels.clone())?;
        let shifted: Vec<f64> = xs.iter().map(|x| x + PI * cfg.radius()).collect();
        let twin = wigner_grid(&rho, &shifted, labels.clone())?;
        let (values, twin) = (grid.real().unwrap_or_default(), twin.real().unwrap_or_default());
        let worst = values.iter().zip(twin).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        self_check(file, "πr periodicity", worst, PERIODICITY_TOL)?;
        let width = labels.clone().count();
        for (i, x) in xs.iter().enumerate() {
            for (j, n) in labels.clone().enumerate() {
                let mut row: Vec<Cell> = vec![(*x).into()];
                if sweep {
                    row.push(cfg.sigma().into());
                }
                row.extend::<[Cell; 3]>([n.into(), cfg.momentum(n).into(), values[i * width + j].into()]);
                t.push(row);
            }
        }
    }
    Ok(vec![Rendered::from_table(file, &t, args.format)?])
}

pub fn render_weyl(args: &RunArgs) -> CliResult<Vec<Rendered>> {
    let file = "weyl";
    let sweep = args.sigma_sweep.is_some();
    let columns: &[&str] =
        if sweep { &["alpha", "sigma", "k", "re", "im", "abs"] } else { &["alpha", "k", "re", "im", "abs"] };
    let mut t = Table::new(columns);
    let alphas = args.alphas()?;
    let ks = args.k.range();
    let limit = 2 * args.nmax as i64;
    if args.k.lo < -limit || args.k.hi > limit {
        return Err(CliError::Usage(format!("--k {} exceeds ±2·nmax = ±{limit}", args.k)));
    }
    for cfg in flux_configs(args)? {
        let rho = DensityOperator::from_pure(&prepare_state(args, &cfg)?)?;
        let grid = weyl_grid(&rho, &alphas, ks.clone())?;
        let shifted: Vec<f64> = alphas.iter().map(|a| a + cfg.period()).collect();
        let twin = weyl_grid(&rho, &shifted, ks.clone())?;
        let (values, twin) = (grid.complex().unwrap_or_default(), twin.complex().unwrap_or_default());
        let width = ks.clone().count();
        let flux = Complex64::cis(-2.0 * PI * cfg.sigma());
        let mut worst_quasi: f64 = 0.0;
        let mut worst_bound: f64 = 0.0;
        for (i, alpha) in alphas.iter().enumerate() {
            for (j, k) in ks.clone().enumerate() {
                let w = values[i * width + j];
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                worst_quasi = worst_quasi.max((twin[i * width + j] - w * flux * sign).norm());
                worst_bound = worst_bound.max(w.norm() - 1.0);
                let mut row: Vec<Cell> = vec![(*alpha).into()];
                if sweep {
                    row.push(cfg.sigma().into());
                }
                row.extend::<[Cell; 4]>([k.into(), w.re.into(), w.im.into(), w.norm().into()]);
                t.push(row);
            }
        }
        self_check(file, "quasi-periodicity factor", worst_quasi, QUASI_PERIODICITY_TOL)?;
        self_check(file, "|W̃| ≤ 1", worst_bound, WEYL_BOUND_SLACK)?;
    }
    Ok(vec![Rendered::from_table(file, &t, args.format)?])
}

pub fn render_marginals(args: &RunArgs) -> CliResult<Vec<Rendered>> {
    reject_sweep(args, "marginals")?;
    let cfg = args.config()?;
    let rho = DensityOperator::from_pure(&prepare_state(args, &cfg)?)?;

    let momentum_file = "marginals_momentum";
    let mut pt = Table::new(&["n", "momentum", "marginal", "diagonal"]);
    let mut worst: f64 = 0.0;
    for n in cfg.labels() {
        let m = wigner_marginal_momentum(&rho, n, cfg.quad_panels())?;
        let d = rho.element(n, n).re;
        worst = worst.max((m - d).abs());
        pt.push(vec![n.into(), cfg.momentum(n).into(), m.into(), d.into()]);
    }
    self_check(momentum_file, "x-integral vs diagonal", worst, MARGINAL_TOL)?;

    let position_file = "marginals_position";
    let mut xt = Table::new(&["x", "marginal", "half_sum"]);
    let mut worst: f64 = 0.0;
    for x in args.xs()? {
        let m = wigner_marginal_position(&rho, x)?;
        let h = 0.5 * (rho.position_density(x) + rho.position_density(x + PI * cfg.radius()));
        worst = worst.max((m - h).abs());
        xt.push(vec![x.into(), m.into(), h.into()]);
    }
    self_check(position_file, "n-sum vs diametric half-sum", worst, MARGINAL_TOL)?;

    Ok(vec![
        Rendered::from_table(momentum_file, &pt, args.format)?,
        Rendered::from_table(position_file, &xt, args.format)?,
    ])
}

pub fn render(command: &str, args: &RunArgs) -> CliResult<Vec<Rendered>> {
    match command {
        "state" => render_state(args),
        "evolve" => render_evolve(args),
        "wigner" => render_wigner(args),
        "weyl" => render_weyl(args),
        "marginals" => render_marginals(args),
        other => Err(CliError::Usage(format!("no data command named {other:?}"))),
    }
}

fn write_all(dir: &Path, outputs: &[Rendered], manifest: &RunManifest, command: &str) -> CliResult<RunSummary> {
    std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    let mut files = Vec::with_capacity(outputs.len());
    for r in outputs {
        let path = dir.join(&r.file);
        std::fs::write(&path, &r.contents).map_err(CliError::io(&path))?;
        files.push(path);
    }
    let path = dir.join(RunManifest::file_name(command));
    std::fs::write(&path, manifest.to_json()?).map_err(CliError::io(&path))?;
    Ok(RunSummary { files, manifest: path })
}

/// Render, self-check and write one data command into `args.output_dir`.
pub fn execute(command: &str, args: &RunArgs) -> CliResult<RunSummary> {
    let outputs = render(command, args)?;
    let manifest = RunManifest::new(command, args, &outputs);
    write_all(&args.output_dir, &outputs, &manifest, command)
}

pub fn replay(replay: &ReplayArgs) -> CliResult<RunSummary> {
    let manifest = RunManifest::load(&replay.manifest)?;
    let mut params = manifest.params.clone();
    params.output_dir = replay.output_dir.clone();
    let outputs = render(&manifest.command, &params)?;
    if replay.check {
        let source = replay.manifest.parent().unwrap_or(Path::new("."));
        if outputs.len() != manifest.outputs.len() {
            return Err(CliError::ReplayMismatch(format!("{} outputs", manifest.outputs.len())));
        }
        for (r, rec) in outputs.iter().zip(&manifest.outputs) {
            let path = source.join(&rec.file);
            let recorded = std::fs::read_to_string(&path).map_err(CliError::io(&path))?;
            if rec.file != r.file || recorded != r.contents {
                return Err(CliError::ReplayMismatch(rec.file.clone()));
            }
        }
    }
    let rebuilt = RunManifest::new(&manifest.command, &params, &outputs);
    write_all(&params.output_dir, &outputs, &rebuilt, &manifest.command)
}
