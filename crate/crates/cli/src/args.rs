//! Flag definitions. Every knob is a flag (no environment variables); an
//! optional `--config` file supplies defaults in the same schema, with
//! explicit flags taking precedence.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "infogeo",
    version,
    about = "Fisher-Rao metrics of parametric probability families by independent numerical routes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute one Fisher metric and emit it as JSON or CSV
    Metric(MetricArgs),
    /// Per-axis means and variances of the family
    Moments(MomentsArgs),
    /// Run the verification suite for the selected family
    Verify(VerifyArgs),
    /// Sweep (dim, mass) and tabulate amplitude, metric, variance, scale
    Table(TableArgs),
    /// Emit density values over a 2D slice for plotting
    Grid(GridArgs),
}

#[derive(Args, Clone)]
pub struct FamilyFlags {
    /// Family kind: kg, gaussian, or laplace
    #[arg(long)]
    pub family: Option<String>,

    /// Number of random variables (and parameters)
    #[arg(long)]
    pub dim: Option<usize>,

    /// Mass parameter of the scalar-field family
    #[arg(long)]
    pub mass: Option<f64>,

    /// Location parameters, comma separated (default: origin)
    #[arg(long)]
    pub theta: Option<String>,

    /// Per-axis rates for the laplace family, comma separated
    #[arg(long)]
    pub rates: Option<String>,

    /// Multiply the scalar-field amplitude (diagnostic; breaks normalization)
    #[arg(long)]
    pub amplitude_scale: Option<f64>,

    /// JSON file with defaults in the RunConfig schema
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct NumericFlags {
    /// Metric method: analytic, quadrature, montecarlo, or fdscore
    #[arg(long)]
    pub method: Option<String>,

    /// Monte Carlo sample count
    #[arg(long)]
    pub samples: Option<u64>,

    /// Monte Carlo master seed
    #[arg(long)]
    pub seed: Option<u64>,

    /// Relative quadrature tolerance
    #[arg(long)]
    pub rel_tol: Option<f64>,

    /// Absolute quadrature tolerance
    #[arg(long)]
    pub abs_tol: Option<f64>,

    /// Adaptive subdivision budget
    #[arg(long)]
    pub max_subdiv: Option<usize>,

    /// Step for the finite-difference score route
    #[arg(long)]
    pub fd_step: Option<f64>,

    /// Worker threads (results are identical for any count)
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Args, Clone)]
pub struct OutputFlags {
    /// Output format: json or csv
    #[arg(long)]
    pub format: Option<String>,

    /// Output path (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MetricArgs {
    #[command(flatten)]
    pub family: FamilyFlags,
    #[command(flatten)]
    pub numeric: NumericFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub family: FamilyFlags,
    #[command(flatten)]
    pub numeric: NumericFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyFlags,
    #[command(flatten)]
    pub numeric: NumericFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args)]
pub struct TableArgs {
    /// Dimensions to sweep, comma separated, each within [3, 6]
    #[arg(long, default_value = "3,4,5,6")]
    pub dims: String,

    /// Masses to sweep, comma separated, each positive
    #[arg(long, default_value = "0.5,1,2")]
    pub masses: String,

    #[command(flatten)]
    pub numeric: NumericFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub family: FamilyFlags,

    /// The two plot axes, comma separated (default "0,1")
    #[arg(long, default_value = "0,1")]
    pub axes: String,

    /// Half-width of the grid around θ on each plot axis
    #[arg(long, default_value_t = 2.0)]
    pub half_width: f64,

    /// Grid points per axis
    #[arg(long, default_value_t = 41)]
    pub points: usize,

    #[command(flatten)]
    pub output: OutputFlags,
}
