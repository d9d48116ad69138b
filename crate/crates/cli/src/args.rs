use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hexf", version, about = "Fourier analysis on the regular hexagon")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a kernel over the N x N cell grid.
    Kernel(KernelArgs),
    /// Fourier coefficients of a registry function.
    Expand(ExpandArgs),
    /// Errors of a summability method over a degree sweep.
    Summab(SummabArgs),
    /// Run an approximation experiment.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelType {
    Dirichlet,
    Theta,
    Poisson,
    Cesaro,
    Cesaro2,
    Jackson,
    Eta,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long = "type", value_enum)]
    pub kind: KernelType,
    /// Degree.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Poisson radius in [0, 1), or the Jackson power.
    #[arg(long)]
    pub r: Option<f64>,
    /// Cesàro order.
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Grid size N.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// Registry function: const, phi:j1,j2,j3, gauss:sigma, cone, poly:n.
    #[arg(long = "f")]
    pub function: String,
    #[arg(long)]
    pub n: usize,
    /// Drop coefficients with modulus at or below this value.
    #[arg(long, default_value_t = 1e-12)]
    pub prune: f64,
    /// Sampling grid; defaults to 2n + 1.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SummabArgs {
    #[arg(long = "f")]
    pub function: String,
    /// dirichlet, cesaro:delta, abel, abel:r, jackson:r[,rho], eta.
    #[arg(long)]
    pub method: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub ns: Vec<usize>,
    /// Norm exponent, a number >= 1 or `inf`.
    #[arg(long, default_value = "inf")]
    pub p: String,
    /// Sampling grid; defaults to max(4d + 1, 129) for input degree d.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Lebesgue,
    Bernstein,
    Jackson,
    Inverse,
    Moments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(value_enum)]
    pub experiment: Experiment,
    #[arg(long, value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    /// Difference or kernel order(s).
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<usize>>,
    /// Moment exponents.
    #[arg(long, value_delimiter = ',')]
    pub nu: Option<Vec<f64>>,
    /// Derivative multi-index `a1,a2,a3`; repeat for several.
    #[arg(long)]
    pub alpha: Vec<String>,
    /// Step sizes for the inverse experiment.
    #[arg(long, value_delimiter = ',')]
    pub hs: Option<Vec<f64>>,
    /// Registry function for the jackson and inverse experiments.
    #[arg(long = "f", default_value = "gauss:0.3")]
    pub function: String,
    #[arg(long, default_value = "inf")]
    pub p: String,
    /// Grid for moduli and errors.
    #[arg(long, default_value_t = 128)]
    pub grid: usize,
    /// Random polynomials per degree in the bernstein experiment.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: Output,
}
