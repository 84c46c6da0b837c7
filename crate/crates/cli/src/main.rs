//! Command-line front end: parse parameter documents, dispatch to the
//! validator / transform / sampler / simulator / converter, and emit CSV or
//! JSON artifacts with embedded provenance.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wishart_core::WishartError;

/// Exit codes: 0 success, 1 invalid input document, 2 existence verdict
/// blocking a sample request, 3 numerical failure, 4 open-problem parameters
/// without --allow-open.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID_INPUT: u8 = 1;
pub const EXIT_VERDICT_BLOCKED: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_OPEN_PROBLEM: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wishart",
    version,
    about = "Non-central Wishart laws on the PSD cone: validate, evaluate, sample, simulate, verify, convert"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct IoArgs {
    /// Input parameter document (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Output artifact path; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SeedArg {
    /// RNG seed; 0 derives one from entropy and records it in the metadata.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct GridArg {
    /// Transform grid as COUNTxSCALE[,SCALE...], e.g. "10x0.5,2".
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the parameter triple names a probability law.
    Validate {
        #[command(flatten)]
        io: IoArgs,
        /// Accept parameters whose existence is an open question instead of exiting 4.
        #[arg(long)]
        allow_open: bool,
    },
    /// Evaluate the transform over a deterministic PSD grid.
    Laplace {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        grid: GridArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Draw samples; exact constructions where they exist, tagged otherwise.
    Sample {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        seed: SeedArg,
        /// Number of samples.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long)]
        allow_open: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Simulate a process path by the Euler scheme.
    Simulate {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        seed: SeedArg,
        /// Time horizon.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Euler steps over the whole horizon.
        #[arg(long)]
        steps: Option<usize>,
        /// Override the document's construction mode.
        #[arg(long, value_enum)]
        mode: Option<commands::ModeArg>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Full report: empirical vs analytic transform plus identity suites.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        grid: GridArg,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 20000)]
        n: usize,
        #[arg(long)]
        allow_open: bool,
    },
    /// Re-express a parameter document in another parameterization.
    Convert {
        #[command(flatten)]
        io: IoArgs,
        /// Target parameterization.
        #[arg(long, value_enum, default_value_t = commands::ConvertTarget::Gamma)]
        to: commands::ConvertTarget,
    },
    /// Characteristic exponents from closed form and the integrator.
    Riccati {
        #[command(flatten)]
        io: IoArgs,
        /// Time horizon.
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Integrator steps over the whole horizon.
        #[arg(long, default_value_t = 400)]
        steps: usize,
        /// Override the document's construction mode.
        #[arg(long, value_enum)]
        mode: Option<commands::ModeArg>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
}

/// Failure carrying its process exit code.
pub struct CliFailure {
    pub code: u8,
    pub message: String,
}

impl CliFailure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<WishartError> for CliFailure {
    fn from(e: WishartError) -> Self {
        let code = match &e {
            WishartError::SamplingRefused { .. } => EXIT_VERDICT_BLOCKED,
            WishartError::NumericalFailure(_) | WishartError::Singular { .. } => EXIT_NUMERICAL,
            _ => EXIT_INVALID_INPUT,
        };
        CliFailure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliFailure {
    fn from(e: std::io::Error) -> Self {
        CliFailure::new(EXIT_INVALID_INPUT, format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliFailure {
    fn from(e: serde_json::Error) -> Self {
        CliFailure::new(EXIT_INVALID_INPUT, format!("document error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate { io, allow_open } => commands::validate(&io, allow_open),
        Command::Laplace {
            io,
            seed,
            grid,
            format,
        } => commands::laplace(&io, seed.seed, grid.grid.as_deref(), format),
        Command::Sample {
            io,
            seed,
            n,
            allow_open,
            format,
        } => commands::sample(&io, seed.seed, n, allow_open, format),
        Command::Simulate {
            io,
            seed,
            t,
            steps,
            mode,
            format,
        } => commands::simulate(&io, seed.seed, t, steps, mode, format),
        Command::Verify {
            io,
            seed,
            grid,
            n,
            allow_open,
        } => commands::verify(&io, seed.seed, grid.grid.as_deref(), n, allow_open),
        Command::Convert { io, to } => commands::convert(&io, to),
        Command::Riccati {
            io,
            t,
            steps,
            mode,
            format,
        } => commands::riccati(&io, t, steps, mode, format),
    };
    match outcome {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
