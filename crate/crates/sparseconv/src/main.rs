use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sparseconv::commands::{self, Method, SharpArgs, Status, StrategyArg};
use sparseconv::suites::Suite;
use sparseconv::{CliError, CommandOutput};

/// Stability bounds for sparse convolutions.
#[derive(Debug, Parser)]
#[command(name = "sparseconv", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form lower bound, compression length n(m) and the universal bound.
    Bound {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        f: usize,
        /// Interval length; defaults to the compression length n(s + f - 1).
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Sharp constant alpha(s, f, n) by exhaustive or alternating minimization.
    Sharp {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: Method,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Phase grid resolution for the exhaustive method.
        #[arg(long, default_value_t = 12)]
        grid: usize,
    },
    /// Compress a point set or a sequence pair onto a short interval of Z.
    Compress {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "base-expand")]
        strategy: StrategyArg,
        /// Upper limit on the interval length for the search strategy.
        #[arg(long, default_value_t = 64)]
        n_max: usize,
    },
    /// Gaussian / modulated-Gaussian sweep as CSV.
    Gaussian {
        /// Comma-separated odd sparsities.
        #[arg(long)]
        s: String,
        /// Width grid lo:hi:step, inclusive.
        #[arg(long, default_value = "1:20:0.5")]
        sigma: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = sparseconv::suites::DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn dispatch(cmd: Command) -> Result<CommandOutput, CliError> {
    match cmd {
        Command::Bound { s, f, n, json } => commands::bound(s, f, n, json),
        Command::Sharp { s, f, n, method, restarts, seed, grid } => {
            commands::sharp(&SharpArgs { s, f, n, method, restarts, seed, grid })
        }
        Command::Compress { input, strategy, n_max } => {
            if !input.is_file() {
                return Err(CliError::Usage(format!("{} is not a readable file", input.display())));
            }
            commands::compress(&input, strategy, n_max)
        }
        Command::Gaussian { s, sigma, out } => commands::gaussian(&s, &sigma, out.as_deref()),
        Command::Verify { suite, seed } => commands::verify(suite, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = sparseconv::thread_pool().and_then(|pool| pool.install(|| dispatch(cli.command)));
    match result {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            let _ = std::io::stderr().write_all(out.stderr.as_bytes());
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("sparseconv: {e}");
            e.into()
        }
    }
}
