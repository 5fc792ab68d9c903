//! `arsec`: secrecy metrics over alternate Rician shadowed links from the command line.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use ars_secrecy::secrecy::{Engine, MetricKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "arsec", version, about = "Secrecy metrics for alternate Rician shadowed fading")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate metrics at one point and print JSON.
    Compute {
        config: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Sweep the main-link mean SNR and print CSV.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Compare engines against quadrature and print CSV with PASS/FAIL.
    Validate {
        config: PathBuf,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Truncation error of the real-m SOP series for the preset table rows.
    Table1 {
        /// Only this row (1-6).
        #[arg(long)]
        row: Option<usize>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Data series of a figure preset (fig2 ... fig7).
    Figure {
        id: String,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GridOpts {
    /// First main-link SNR in dB.
    #[arg(long = "from", allow_negative_numbers = true)]
    pub from_db: Option<f64>,
    /// Last main-link SNR in dB.
    #[arg(long = "to", allow_negative_numbers = true)]
    pub to_db: Option<f64>,
    /// Grid step in dB.
    #[arg(long = "step")]
    pub step_db: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Engine(s) to run; repeat for several.
    #[arg(long = "engine", value_parser = parse_engine)]
    pub engines: Vec<Engine>,
    #[arg(long, value_enum, default_value_t = MetricArg::All)]
    pub metric: MetricArg,
    /// Add Monte-Carlo estimates.
    #[arg(long)]
    pub mc: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Monte-Carlo sample count.
    #[arg(long, default_value_t = 1_000_000)]
    pub n_samples: usize,
    /// Truncation order of the real-m SOP series.
    #[arg(long)]
    pub n_terms: Option<usize>,
    /// Relative tolerance for quadrature and Fox H evaluations.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricArg {
    Asc,
    Sop,
    Pnz,
    All,
}

impl MetricArg {
    pub fn kinds(self) -> Vec<MetricKind> {
        match self {
            MetricArg::Asc => vec![MetricKind::Asc],
            MetricArg::Sop => vec![MetricKind::Sop],
            MetricArg::Pnz => vec![MetricKind::Pnz],
            MetricArg::All => MetricKind::ALL.to_vec(),
        }
    }
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: ars_secrecy::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { config, opts } => run::compute(&config, &opts),
        Command::Sweep { config, grid, opts } => run::sweep(&config, &grid, &opts),
        Command::Validate { config, opts } => run::validate(&config, &opts),
        Command::Table1 { row, opts } => run::table1(row, &opts),
        Command::Figure { id, grid, opts } => run::figure(&id, &grid, &opts),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("arsec: {e}");
            e.exit_code()
        }
    }
}
