//! `lqglab`: command-line front end of the laboratory.

mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::EXIT_USAGE;

#[derive(Parser)]
#[command(name = "lqglab", version, about = "Gaussian free field first-passage metrics and clique experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a field and write it as an LQGF file.
    Sample(SampleArgs),
    /// Answer distance, ball and diameter queries on a field file.
    Metric(MetricArgs),
    /// Run Monte Carlo star-polygon trials.
    Star(StarArgs),
    /// Run annulus scans over several base seeds.
    Scan(ScanArgs),
    /// Covering, Assouad and clique analysis of a finite metric.
    Analyze(AnalyzeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Zero boundary values on the unit square.
    Zero,
    /// Whole-plane proxy on the window [-1, 1]^2.
    Proxy,
}

#[derive(Args)]
pub struct SampleArgs {
    /// Vertices per side.
    #[arg(long)]
    pub n: usize,
    /// Highest retained mode index.
    #[arg(long)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Kind::Zero)]
    pub kind: Kind,
    /// Padding factor of the proxy box.
    #[arg(long, default_value_t = lqglab::gff::DEFAULT_PAD_FACTOR)]
    pub pad: usize,
    /// Constant added to every vertex after sampling.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub shift: f64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct MetricArgs {
    /// LQGF field file.
    pub field: PathBuf,
    #[arg(long, default_value_t = (8.0f64 / 3.0).sqrt())]
    pub gamma: f64,
    #[arg(long, default_value_t = 4.0)]
    pub d_gamma: f64,
    /// `dist:R1,C1:R2,C2`, `ball:R,C:RADIUS` (metric radius) or
    /// `diam:R,C:RADIUS` (Euclidean radius of the vertex disc).
    #[arg(long = "query", short = 'q', required = true)]
    pub queries: Vec<String>,
    /// Output CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Directory for one geodesic CSV per distance query.
    #[arg(long)]
    pub paths: Option<PathBuf>,
}

#[derive(Args)]
pub struct ConfigArgs {
    /// Key-value file whose keys are the StarConfig field names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `key=value` override applied after the file.
    #[arg(long = "set")]
    pub set: Vec<String>,
    /// Calibrate thresholds and amplitudes on this many zero-amplitude trials first.
    #[arg(long)]
    pub calibrate: Option<usize>,
    #[arg(long, env = "LQGLAB_WORKERS", default_value_t = 1)]
    pub workers: usize,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub common: ConfigArgs,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Also run the same seeds at zero amplitude and compare.
    #[arg(long)]
    pub baseline: bool,
    /// Write PGM heatmaps of the first trial's field and distance map.
    #[arg(long)]
    pub heatmap: bool,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub common: ConfigArgs,
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
    /// Explicit base seeds.
    #[arg(long, value_delimiter = ',', conflicts_with = "scans")]
    pub base_seeds: Vec<u64>,
    /// Number of scans, with base seeds `seed, seed + 1, ...`.
    #[arg(long)]
    pub scans: Option<usize>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["matrix", "points"])))]
pub struct AnalyzeArgs {
    /// Distance matrix CSV with an `id` column.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Coordinate CSV; Euclidean distances are used.
    #[arg(long)]
    pub points: Option<PathBuf>,
    /// Replace `d` by `d^beta` first.
    #[arg(long)]
    pub snowflake: Option<f64>,
    /// Scale pairs `R:r,R:r,...`; defaults follow the data's diameter.
    #[arg(long, value_delimiter = ',')]
    pub scales: Vec<String>,
    /// Number of sampled ball centres.
    #[arg(long, default_value_t = 16)]
    pub centers: usize,
    /// Search for an `(N, K)`-clique, given as `N:K`.
    #[arg(long)]
    pub clique: Option<String>,
    /// Refine the found clique to a `(3, sqrt K)`-clique.
    #[arg(long, requires = "clique")]
    pub refine: bool,
    #[arg(long)]
    pub out: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Sample(a) => commands::sample(a),
        Command::Metric(a) => commands::metric(a),
        Command::Star(a) => commands::star(a),
        Command::Scan(a) => commands::scan(a),
        Command::Analyze(a) => commands::analyze(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lqglab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
