//! Command-line surface.

use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ringphase::{CircleConfig, EvolutionParams, GaussianParams, PhaseSign};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "ringphase", version, about = "Phase-space distributions for a particle on a ring with flux")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Momentum coefficients of the Zak-transformed Gaussian.
    State(RunArgs),
    /// Wigner function grid over (x, n), optionally swept over flux.
    Wigner(RunArgs),
    /// Weyl function grid over (alpha, k), optionally swept over flux.
    Weyl(RunArgs),
    /// Momentum and position marginals of the Wigner function.
    Marginals(RunArgs),
    /// Freely evolved state coefficients.
    Evolve(RunArgs),
    /// Run the identity suite and the printed-formula comparison.
    Verify(VerifyArgs),
    /// Re-run a command from its manifest.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::State(_) => "state",
            Command::Wigner(_) => "wigner",
            Command::Weyl(_) => "weyl",
            Command::Marginals(_) => "marginals",
            Command::Evolve(_) => "evolve",
            Command::Verify(_) => "verify",
            Command::Replay(_) => "replay",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Positive,
    Negative,
}

impl From<SignArg> for PhaseSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Positive => PhaseSign::Positive,
            SignArg::Negative => PhaseSign::Negative,
        }
    }
}

/// `lo:hi:count`, sampled half-open as `lo + (hi − lo)·i/count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl SweepSpec {
    pub fn samples(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.lo + (self.hi - self.lo) * i as f64 / self.count as f64).collect()
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(format!("expected lo:hi:count, got {s:?}"));
        };
        let lo: f64 = lo.parse().map_err(|e| format!("sweep lower bound: {e}"))?;
        let hi: f64 = hi.parse().map_err(|e| format!("sweep upper bound: {e}"))?;
        let count: usize = count.parse().map_err(|e| format!("sweep count: {e}"))?;
        if !lo.is_finite() || !hi.is_finite() || count == 0 {
            return Err(format!("sweep {s:?} needs finite bounds and a positive count"));
        }
        Ok(Self { lo, hi, count })
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.count)
    }
}

/// A single integer `k` or an inclusive range `lo:hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn range(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}:{}", self.lo, self.hi)
        }
    }
}

/// Parameters shared by the data-producing subcommands. Everything here is
/// recorded in the run manifest except the output directory.
#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RunArgs {
    /// Ring radius r.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Flux σ.
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub sigma: f64,
    /// Sweep σ over lo:hi:count instead of using --sigma (bare flag: 0:1:64).
    #[arg(long, value_name = "LO:HI:COUNT", num_args = 0..=1, default_missing_value = "0:1:64", require_equals = false)]
    pub sigma_sweep: Option<SweepSpec>,
    /// Real part of the Gaussian parameter A.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a_re: f64,
    /// Imaginary part of the Gaussian parameter A.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a_im: f64,
    /// Momentum cutoff: labels run over −nmax..=nmax.
    #[arg(long, default_value_t = ringphase::DEFAULT_N_MAX)]
    pub nmax: usize,
    /// Simpson panels for quadratures (even).
    #[arg(long, default_value_t = ringphase::DEFAULT_PANELS)]
    pub panels: usize,
    /// Evolution time t.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub time: f64,
    /// Sign of the evolution phase exp(±i t p²).
    #[arg(long, value_enum, default_value_t = SignArg::Positive)]
    pub sign: SignArg,
    /// Weyl momentum shift K, or a range lo:hi.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub k: IntRange,
    /// Wigner momentum labels lo:hi (default −4:4, clipped to the basis).
    #[arg(long, allow_hyphen_values = true)]
    pub n_range: Option<IntRange>,
    /// Samples of x over [0, 2πr).
    #[arg(long, default_value_t = 256)]
    pub x_points: usize,
    /// Samples of α over [−2πr, 2πr).
    #[arg(long, default_value_t = 256)]
    pub alpha_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, default_value = ".")]
    #[serde(skip, default = "current_dir")]
    pub output_dir: PathBuf,
}

impl Default for RunArgs {
    fn default() -> Self {
        Self {
            radius: 1.0,
            sigma: 0.1,
            sigma_sweep: None,
            a_re: 1.0,
            a_im: 0.0,
            nmax: ringphase::DEFAULT_N_MAX,
            panels: ringphase::DEFAULT_PANELS,
            time: 0.0,
            sign: SignArg::Positive,
            k: IntRange { lo: 1, hi: 1 },
            n_range: None,
            x_points: 256,
            alpha_points: 256,
            format: Format::Csv,
            output_dir: current_dir(),
        }
    }
}

impl RunArgs {
    pub fn config(&self) -> CliResult<CircleConfig> {
        config_from(self.radius, self.sigma, self.nmax, self.panels)
    }

    pub fn gaussian(&self) -> CliResult<GaussianParams> {
        if !self.a_re.is_finite() || !self.a_im.is_finite() {
            return Err(CliError::Usage("A must be finite".into()));
        }
        Ok(GaussianParams::new(self.a_re, self.a_im))
    }

    pub fn evolution(&self) -> CliResult<EvolutionParams> {
        if !self.time.is_finite() {
            return Err(CliError::Usage("--time must be finite".into()));
        }
        Ok(EvolutionParams::with_sign(self.time, self.sign.into()))
    }

    pub fn n_labels(&self, config: &CircleConfig) -> CliResult<RangeInclusive<i64>> {
        let n = config.n_max() as i64;
        match self.n_range {
            None => Ok(-n.min(4)..=n.min(4)),
            Some(r) if config.contains(r.lo) && config.contains(r.hi) => Ok(r.range()),
            Some(r) => Err(CliError::Usage(format!("--n-range {r} exceeds the basis ±{n}"))),
        }
    }

    /// `x_points` samples over `[0, 2πr)`.
    pub fn xs(&self) -> CliResult<Vec<f64>> {
        let count = positive(self.x_points, "--x-points")?;
        let period = 2.0 * PI * self.radius;
        Ok((0..count).map(|i| period * i as f64 / count as f64).collect())
    }

    /// `alpha_points` samples over `[−2πr, 2πr)`.
    pub fn alphas(&self) -> CliResult<Vec<f64>> {
        let count = positive(self.alpha_points, "--alpha-points")?;
        let span = 4.0 * PI * self.radius;
        Ok((0..count).map(|i| -0.5 * span + span * i as f64 / count as f64).collect())
    }

    pub fn sigmas(&self) -> Option<Vec<f64>> {
        self.sigma_sweep.map(|s| s.samples())
    }
}

fn current_dir() -> PathBuf {
    PathBuf::from(".")
}

fn positive(v: usize, flag: &str) -> CliResult<usize> {
    if v == 0 {
        return Err(CliError::Usage(format!("{flag} must be positive")));
    }
    Ok(v)
}

pub(crate) fn config_from(radius: f64, sigma: f64, nmax: usize, panels: usize) -> CliResult<CircleConfig> {
    CircleConfig::with_panels(radius, sigma, nmax, panels).map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a_im: f64,
    #[arg(long, default_value_t = ringphase::DEFAULT_N_MAX)]
    pub nmax: usize,
    #[arg(long, default_value_t = ringphase::DEFAULT_PANELS)]
    pub panels: usize,
    /// Print the report as JSON instead of a table.
    #[arg(long, value_enum, default_value_t = Format::Csv, hide_possible_values = true)]
    pub format: Format,
}

impl Default for VerifyArgs {
    fn default() -> Self {
        Self {
            radius: 1.0,
            sigma: 0.1,
            a_re: 1.0,
            a_im: 0.0,
            nmax: ringphase::DEFAULT_N_MAX,
            panels: ringphase::DEFAULT_PANELS,
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    pub manifest: PathBuf,
    #[arg(long, default_value = ".")]
    pub output_dir: PathBuf,
    /// Compare the regenerated files against those next to the manifest.
    #[arg(long)]
    pub check: bool,
}
