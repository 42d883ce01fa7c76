//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quermass_core::Variant;

#[derive(Debug, Parser)]
#[command(name = "quermass", version, about = "Quermassintegrals of hyperplane sections of star bodies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Offset profiles, argmax and central derivative for a set of poles.
    Sweep(SweepArgs),
    /// First-order perturbation experiment over a λ schedule.
    Perturb(PerturbArgs),
    /// Classify a sphere function by its equator integrals.
    Evenness(EvennessArgs),
    /// Compare curvature integrals with the Steiner-polynomial oracle on one section.
    Oracle(OracleArgs),
    /// The d = 3 perimeter operator against its raw linearization.
    Remark2d(Remark2dArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Body specification (JSON).
    #[arg(long)]
    pub body: PathBuf,
    /// Expected ambient dimension; must match the body.
    #[arg(long = "d")]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    /// Number of offsets in the symmetric t-grid (odd, at least 11).
    #[arg(long = "t-grid", default_value_t = quermass_core::sweep::DEFAULT_GRID_POINTS)]
    pub t_grid: usize,
    /// Number of quasi-uniform poles.
    #[arg(long, default_value_t = quermass_core::linearization::DEFAULT_POLE_COUNT)]
    pub poles: usize,
    /// Rotates or shifts the pole sequence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include every offset profile (CSV output becomes the long profile table).
    #[arg(long)]
    pub with_profiles: bool,
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    /// Perturbation ε as a function spec (JSON); defaults to ⟨ω, pole⟩.
    #[arg(long)]
    pub epsilon: Option<PathBuf>,
    #[arg(long = "d", default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    /// Strictly decreasing positive λ values.
    #[arg(long = "lambda-schedule", value_delimiter = ',', default_values_t = [1e-2, 5e-3, 2.5e-3])]
    pub lambda_schedule: Vec<f64>,
    /// Constant to test the measurement against (both are always reported).
    #[arg(long, value_parser = parse_variant, default_value = "rederived")]
    pub variant: Variant,
    /// Section normal; defaults to the last coordinate axis.
    #[arg(long, value_delimiter = ',')]
    pub pole: Option<Vec<f64>>,
    /// Finite-difference step as a fraction of each body's offset bound t0.
    #[arg(long = "h-fraction", default_value_t = 0.05)]
    pub h_fraction: f64,
    /// Equator quadrature order for the predicted integral.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvennessArgs {
    /// Function spec (JSON).
    #[arg(long)]
    pub function: PathBuf,
    /// Dimension used when the function file does not determine one.
    #[arg(long = "d")]
    pub d: Option<usize>,
    #[arg(long, default_value_t = quermass_core::linearization::DEFAULT_POLE_COUNT)]
    pub poles: usize,
    #[arg(long, default_value_t = quermass_core::linearization::DEFAULT_EVENNESS_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleMethod {
    Polar,
    Qmc,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub body: PathBuf,
    #[arg(long = "d")]
    pub d: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub pole: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    /// Single order to compare; all orders when omitted.
    #[arg(long)]
    pub l: Option<usize>,
    /// Parallel-volume estimator of the oracle.
    #[arg(long, value_enum, default_value_t = OracleMethod::Polar)]
    pub method: OracleMethod,
    /// Polar quadrature order of the oracle.
    #[arg(long)]
    pub order: Option<usize>,
    /// Sample count of the quasi-Monte Carlo estimator.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance of the agreement flag.
    #[arg(long, default_value_t = 1e-2)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct Remark2dArgs {
    /// Base radial function ρ⁰ (JSON function spec); defaults to 1.
    #[arg(long)]
    pub rho0: Option<PathBuf>,
    /// Perturbation ε (JSON function spec); defaults to ⟨ω, pole⟩.
    #[arg(long)]
    pub epsilon: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub pole: Option<Vec<f64>>,
    /// Number of trapezoid nodes on the equator.
    #[arg(long, default_value_t = 256)]
    pub order: usize,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: quermass_core::QuermassError| e.to_string())
}
