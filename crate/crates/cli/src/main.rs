//! `pgspec`: band spectra, Dirichlet/Neumann bracketing and metric-graph
//! reports for periodic graphs.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgspec_core::report::Format;
use pgspec_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "pgspec", version, about = "Spectra of periodic discrete and metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Band edges of the periodic operator from a torus sweep.
    Bands(Common),
    /// Per-band Dirichlet/Neumann brackets, inclusion verdicts and the total-length bound.
    Bracket {
        #[command(flatten)]
        common: Common,
        /// Check a previously written band CSV instead of sweeping.
        #[arg(long, value_name = "PATH")]
        bands: Option<PathBuf>,
    },
    /// Bands, brackets, flat bands and unfolded spectrum of the equilateral metric graph.
    Metric {
        #[command(flatten)]
        common: Common,
        /// Upper end of the unfolded spectrum.
        #[arg(long, default_value_t = std::f64::consts::TAU)]
        zmax: f64,
    },
    /// Seeded property suite; exits 0 only if every check passes.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Randomized potentials per check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Floquet matrix at one quasimomentum.
    Matrix {
        #[command(flatten)]
        common: Common,
        /// Comma-separated quasimomentum components.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        theta: Vec<f64>,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Graph document (JSON).
    #[arg(long, value_name = "PATH", conflicts_with = "fixture")]
    graph: Option<PathBuf>,
    /// Bundled example graph: paper-example, z2-lattice, hex-bipartite.
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,
    /// Fundamental domain document; repeat for several domains.
    #[arg(long, value_name = "PATH")]
    domain: Vec<PathBuf>,
    /// Grid points per torus direction (even).
    #[arg(long, default_value_t = pgspec_core::spectra::DEFAULT_GRID)]
    grid: usize,
    /// Width below which a band counts as flat.
    #[arg(long, default_value_t = pgspec_core::spectra::DEFAULT_FLAT_TOL)]
    flat_tol: f64,
    /// Write one file per table here instead of printing.
    #[arg(long, value_name = "DIR")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also emit the full eigenvalue table of the sweep.
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] pgspec_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verdict(String),
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn kind(&self) -> ErrorKind {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Verdict(_) => ErrorKind::Verdict,
            CliError::Usage(_) | CliError::Read { .. } | CliError::Write { .. } => ErrorKind::Input,
        }
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 2,
        ErrorKind::Verdict => 3,
        ErrorKind::Numerical => 4,
    }
}

fn kind_name(kind: ErrorKind) -> &'static str {
    match kind {
        ErrorKind::Input => "input",
        ErrorKind::Verdict => "verdict",
        ErrorKind::Numerical => "numerical",
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = match &cli.command {
        Command::Bands(c) => c.threads,
        Command::Bracket { common, .. }
        | Command::Metric { common, .. }
        | Command::Verify { common, .. }
        | Command::Matrix { common, .. } => common.threads,
    };
    with_threads(threads, || commands::dispatch(cli.command))
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> Result<T, CliError> + Send,
) -> Result<T, CliError> {
    match threads {
        None => f(),
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> Result<T, CliError>) -> Result<T, CliError> {
    match threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        _ => f(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = e.kind();
            let code = exit_code(kind);
            let report = serde_json::json!({
                "error": { "kind": kind_name(kind), "exit_code": code, "message": e.to_string() }
            });
            eprintln!("{report}");
            ExitCode::from(code)
        }
    }
}
