//! `squeeze`: command-line front end for the constraint-singularity
//! analysis of the squeezing mechanism.
//!
//! Exit codes: 0 success, 1 usage or internal error, 2 a condition failed
//! (no real roots, not a unit ideal, ...), 3 a Groebner resource ceiling
//! was hit.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "squeeze",
    version,
    about = "Singularity analysis of the squeezing mechanism"
)]
struct Cli {
    /// Abort Buchberger after this many S-pairs.
    #[arg(long, global = true, default_value_t = 200_000)]
    max_pairs: usize,
    /// Abort Buchberger once the working basis holds this many terms.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    max_terms: usize,
    #[command(subcommand)]
    command: Command,
}

/// Parameter file plus `--set` overrides.
#[derive(Debug, Args)]
struct ParamArgs {
    /// `key=value` parameter file; the benchmark values if omitted.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Override one parameter after the file is read, e.g. `a1=0.03`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

/// Where a polynomial system comes from.
#[derive(Debug, Args)]
struct SystemArgs {
    /// Built-in system: full, 4567, 367, m, k1, k2, l1, l2, l3, l4, symmetric.
    #[arg(long, conflicts_with = "input")]
    model: Option<String>,
    /// Generators file: an `order=... blocks=...` header then one
    /// polynomial per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Variables to differentiate by (comma separated). Defaults to the
    /// model's configuration variables, or the first block of the file.
    #[arg(long)]
    vars: Option<String>,
    #[command(flatten)]
    params: OptionalParams,
}

#[derive(Debug, Args)]
struct OptionalParams {
    /// Specialize a built-in model at these parameters.
    #[arg(long = "params")]
    file: Option<PathBuf>,
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced Groebner basis of a generators file.
    Gb {
        input: PathBuf,
        /// Order kind (lex or degrevlex), replacing the file's.
        #[arg(long)]
        order: Option<String>,
        /// Blocks as `x,y;z`, replacing the file's.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Ideal membership with the division trace.
    Member {
        #[arg(long)]
        basis: PathBuf,
        /// Polynomial to test.
        poly: String,
    },
    /// Generators of the elimination ideal onto the kept variables.
    Eliminate {
        #[arg(long)]
        basis: PathBuf,
        /// Comma-separated variables to keep; must be the last block.
        #[arg(long)]
        keep: String,
    },
    /// Maximal minors of the Jacobian.
    Minors(SystemArgs),
    /// The system together with its Jacobian minors.
    SingularIdeal(SystemArgs),
    /// Generators of a listed component and the containment check.
    Components {
        /// T1..T7, U1..U4 or I1..I3.
        label: String,
    },
    /// Singular configurations on a branch.
    Solve {
        /// t5, t3 or u1.
        #[arg(long)]
        branch: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Branch conditions over an (a1, a2) grid, as CSV.
    Sweep {
        #[arg(long)]
        branch: String,
        #[command(flatten)]
        params: ParamArgs,
        /// `start:stop:step` for a1.
        #[arg(long, default_value = "0.005:0.08:0.00025")]
        a1: String,
        /// `start:stop:step` for a2.
        #[arg(long, default_value = "0.005:0.08:0.00025")]
        a2: String,
    },
    /// Groebner certificate that the reduced system has no singularities.
    VerifyBenchmark {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exact certificate for the rational singular configuration.
    RationalExample,
    /// The two singularity tables at 4 decimals.
    Tables,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match commands::run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = f.stdout() {
                emit(out);
            }
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}
