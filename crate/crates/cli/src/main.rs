//! `ggsp` command-line tool.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage or
//! configuration error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Runtime(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) | CliError::Runtime(_) | CliError::Verification(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ggsp", version, about = "Graphon signal processing with group symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a graph G(n, w) and write it as JSON.
    Sample(SampleArgs),
    /// Eigenvalues (and optionally eigenvectors) of a graph or block graphon.
    Spectrum(SpectrumArgs),
    /// Graph Fourier coefficients of a signal.
    Gft(GftArgs),
    /// Sampling experiments.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Frame constructions.
    #[command(subcommand)]
    Frames(Frames),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Graphon model as inline JSON or a path to a JSON file.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Graph JSON written by `ggsp sample`.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    graph: Option<PathBuf>,
    /// Block graphon model (inline JSON or file); torus models need `--grid`.
    #[arg(long)]
    model: Option<String>,
    /// Grid size for discretizing a torus model.
    #[arg(long)]
    grid: Option<usize>,
    /// Keep only the k eigenpairs of largest magnitude.
    #[arg(long)]
    top: Option<usize>,
    /// `csv` (eigenvalues) or `json` (eigenvalues and eigenvectors).
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GftArgs {
    /// Graph JSON written by `ggsp sample`.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    graph: Option<PathBuf>,
    /// Block graphon model (inline JSON or file).
    #[arg(long)]
    model: Option<String>,
    /// Use the indicator of this latent block as the signal.
    #[arg(long, conflicts_with = "signal", required_unless_present = "signal")]
    block: Option<usize>,
    /// JSON array with one value per vertex (or block).
    #[arg(long)]
    signal: Option<PathBuf>,
    /// Transform against the k eigenvectors of largest magnitude only.
    #[arg(long)]
    top: Option<usize>,
    /// Also report eigenspace projection norms, grouping eigenvalues within this tolerance.
    #[arg(long)]
    cluster_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Second and third Fourier coefficients of a block indicator across samples.
    S3(S3Args),
    /// Sample spectrum of the circle graphon against its closed form.
    Ws(WsArgs),
}

#[derive(Args, Debug)]
pub struct S3Args {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON experiment configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WsArgs {
    #[arg(long, default_value_t = ggsp::gsp::DEFAULT_WS_N)]
    n: usize,
    #[arg(long, default_value_t = ggsp::gsp::DEFAULT_WS_D)]
    d: f64,
    #[arg(long, default_value_t = ggsp::gsp::DEFAULT_WS_P)]
    p: f64,
    #[arg(long, default_value_t = ggsp::gsp::DEFAULT_MASTER_SEED)]
    seed: u64,
    #[arg(long, default_value_t = ggsp::gsp::DEFAULT_WS_K_MAX)]
    k_max: usize,
    /// CSV comparison table; printed to standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Frames {
    /// Parseval frame of the Cayley graph of S4 built from its irreps.
    S4(FramesArgs),
}

#[derive(Args, Debug)]
pub struct FramesArgs {
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("GGSP_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Config(format!("GGSP_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Runtime(format!("cannot start thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Sample(a) => commands::sample(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Gft(a) => commands::gft(a),
        Command::Experiment(Experiment::S3(a)) => commands::experiment_s3(a),
        Command::Experiment(Experiment::Ws(a)) => commands::experiment_ws(a),
        Command::Frames(Frames::S4(a)) => commands::frames_s4(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
