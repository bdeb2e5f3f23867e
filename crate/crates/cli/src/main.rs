//! `normord`: normal ordering, Stirling matrices, Riordan matrices and flows
//! from the command line.
//!
//! Exit status: 0 success, 1 a check did not hold, 2 usage or input error,
//! 3 I/O error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normord::Convention;

use crate::render::Artifact;

/// Default directory for artifacts when `--output` is not given.
pub const OUTPUT_DIR_VAR: &str = "NORMORD_OUTPUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "normord", version, about = "Exact boson normal ordering and Riordan matrix calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of a word or linear combination of words.
    NormalOrder {
        #[arg(long)]
        word: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Generalized Stirling matrix S_w(n, k), rows 0..=n.
    Stirling {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Matrix of f -> g f(phi), rows and columns 0..=n.
    RiordanBuild {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Recovers (g, phi) from a matrix JSON file.
    RiordanRecover {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value = "EGF", value_parser = parse_convention)]
        convention: Convention,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Checks every column against g phi^k / d_k (exit 1 when it fails).
    ShefferCheck {
        /// Matrix JSON file.
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        matrix: Option<PathBuf>,
        /// Use the Stirling matrix of this word instead.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value = "EGF", value_parser = parse_convention)]
        convention: Convention,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Formal flow s_lambda(x) of the vector field v(x) d/dx.
    Flow {
        /// Polynomial field, e.g. "1 + x^2".
        #[arg(long)]
        field: String,
        /// Orders in x and in lambda.
        #[arg(long, num_args = 2, value_names = ["NX", "NL"], default_values_t = [8, 6])]
        orders: Vec<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// exp(lambda Omega)[f] as a grid in (x, lambda).
    GroupAction {
        /// Operator, e.g. "a+ a a+" or "(1 + (a+)^2) a".
        #[arg(long, required_unless_present_all = ["u1", "u2"], conflicts_with_all = ["u1", "u2"])]
        op: Option<String>,
        /// Omega = u1(x) d/dx u2(x): the polynomial u1.
        #[arg(long, requires = "u2")]
        u1: Option<String>,
        #[arg(long, requires = "u1")]
        u2: Option<String>,
        /// Polynomial the group acts on.
        #[arg(long, default_value = "x")]
        f: String,
        #[arg(long, num_args = 2, value_names = ["NX", "NL"], default_values_t = [8, 6])]
        orders: Vec<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normal-ordering coefficients versus the one-parameter group (exit 1 on mismatch).
    Correspond {
        #[arg(long)]
        op: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs the acceptance criteria (exit 1 if any fails).
    Verify {
        #[arg(long, default_value_t = normord::verify::DEFAULT_SEED)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long = "criterion", value_parser = clap::value_parser!(u8).range(1..=10))]
        criteria: Vec<u8>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Pair JSON file; replaces --g, --phi and --convention.
    #[arg(long, conflicts_with_all = ["g", "phi"], required_unless_present = "phi")]
    pub pair: Option<PathBuf>,
    /// Prefunction: comma-separated coefficients a_n, or a polynomial in x.
    #[arg(long, default_value = "1")]
    pub g: String,
    /// Substitution: comma-separated coefficients, or a polynomial in x.
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, default_value = "EGF", value_parser = parse_convention)]
    pub convention: Convention,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.to_ascii_uppercase().parse().map_err(|e: normord::Error| e.to_string())
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Io(String),
}

impl From<normord::Error> for Failure {
    fn from(e: normord::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn dispatch(cmd: Command) -> Result<(Artifact, OutputArgs, &'static str), Failure> {
    Ok(match cmd {
        Command::NormalOrder { word, out } => (commands::normal_order(&word)?, out, "normal-order"),
        Command::Stirling { word, n, out } => (commands::stirling(&word, n)?, out, "stirling"),
        Command::RiordanBuild { pair, n, out } => (commands::riordan_build(&pair, n)?, out, "riordan-build"),
        Command::RiordanRecover { matrix, convention, out } => {
            (commands::riordan_recover(&matrix, convention)?, out, "riordan-recover")
        }
        Command::ShefferCheck { matrix, word, n, convention, out } => {
            (commands::sheffer_check(matrix.as_deref(), word.as_deref(), n, convention)?, out, "sheffer-check")
        }
        Command::Flow { field, orders, out } => (commands::flow(&field, orders[0], orders[1])?, out, "flow"),
        Command::GroupAction { op, u1, u2, f, orders, out } => {
            let a = commands::group_action(op.as_deref(), u1.as_deref().zip(u2.as_deref()), &f, orders[0], orders[1])?;
            (a, out, "group-action")
        }
        Command::Correspond { op, n, out } => (commands::correspond(&op, n)?, out, "correspond"),
        Command::Verify { seed, criteria, out } => (commands::verify(seed, &criteria), out, "verify"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = dispatch(cli.command).and_then(|(artifact, out, name)| {
        render::emit(&artifact, &out, name, std::env::var_os(OUTPUT_DIR_VAR).map(PathBuf::from))?;
        Ok(artifact.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
