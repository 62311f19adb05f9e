//! `wordlen`: subword complexity, power avoidance and matrix-algebra length
//! bounds from the command line.
//!
//! Exit codes: 0 success, 1 counterexample or violated check, 2 usage or
//! input error, 3 budget or cap exceeded.

mod alg;
mod checks;
mod words;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wordlen_core::algebra::AlgebraError;
use wordlen_core::oracles::OracleError;
use wordlen_core::verify::VerifyError;

pub const BUDGET_ENV: &str = "WORDLEN_BUDGET";

#[derive(Parser)]
#[command(
    name = "wordlen",
    version,
    about = "Subword complexity, power avoidance and matrix-algebra length bounds"
)]
struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complexity profile f(n) and total complexity c(W).
    Complexity(WordArgs),
    /// Cheapest (q, p, t) decomposition; with --n, both sides of the
    /// low-complexity equivalence.
    Decompose {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        n: Option<usize>,
        /// Use the (n, m) form of the equivalence.
        #[arg(long, requires = "n")]
        m: Option<usize>,
    },
    /// Maximal factor exponent with its leftmost witness.
    Powers {
        #[command(flatten)]
        word: WordArgs,
        /// Report d- and d+-power avoidance for this exponent (`2`, `5/2`).
        #[arg(long)]
        d: Option<String>,
        /// Check the total-complexity bound at this k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Theorem sweeps; exits 1 if any counterexample turns up.
    Verify(VerifyArgs),
    /// Generating sets read from a matrix file.
    Alg {
        #[command(subcommand)]
        command: AlgCommand,
    },
    /// Length bounds for (d, m), or the dominance grid.
    Bounds(BoundsArgs),
    /// Cross-check every fast path against its brute-force oracle.
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
pub struct WordArgs {
    /// One letter per character, or comma-separated tokens.
    pub word: String,
    /// Alphabet in the same token format; inferred from the word if absent.
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Sweep {
    /// f(n) <= n iff a decomposition of cost <= n exists (exhaustive)
    Mh,
    /// the (n, m) form and its corollary (exhaustive)
    Mhgen,
    /// the total-complexity bound, rational and integer d (exhaustive)
    Tc,
    /// three-phase profile shape (sampled)
    Shape,
    /// invertible shifts in one-generated algebras (sampled)
    Shift,
    /// length bound and irreducible-word lemmas on random generating sets (sampled)
    Algebra,
}

#[derive(Args)]
pub struct VerifyArgs {
    pub sweep: Sweep,
    /// Alphabet size (largest size for sampled word sweeps).
    #[arg(long)]
    pub alphabet: Option<usize>,
    /// Maximum word length.
    #[arg(long)]
    pub maxlen: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples for sampled sweeps.
    #[arg(long)]
    pub count: Option<u64>,
    /// Enumeration budget; defaults to $WORDLEN_BUDGET or the built-in value.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Subcommand)]
enum AlgCommand {
    /// Dimensions of L_0, L_1, ... and the length l(S).
    Length {
        file: std::path::PathBuf,
        /// Give up if the span still grows past this length.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Least irreducible words with their complexity and power checks.
    Liw {
        file: std::path::PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
pub struct BoundsArgs {
    /// Algebra dimension d.
    #[arg(long)]
    pub dim: Option<u64>,
    /// Maximal minimal-polynomial degree m.
    #[arg(long)]
    pub m: Option<u64>,
    /// Matrix size; alone it means d = n^2, m = n.
    #[arg(long)]
    pub n: Option<u64>,
    /// Run the dominance sweep instead of a single table.
    #[arg(long, conflicts_with_all = ["dim", "m", "n"])]
    pub grid: bool,
    #[arg(long, default_value_t = 20, requires = "grid")]
    pub m_max: u64,
    #[arg(long, default_value_t = 400, requires = "grid")]
    pub d_max: u64,
    #[arg(long, default_value_t = 50, requires = "grid")]
    pub n_max: u64,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(
    wordlen_core::word::WordError,
    wordlen_core::structure::StructureError,
    wordlen_core::powers::PowersError,
    wordlen_core::linalg::LinalgError,
    wordlen_core::bounds::BoundsError,
    std::io::Error
);

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::SearchBudgetExceeded { .. } | AlgebraError::CapExceeded(_) => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } | OracleError::CapExceeded(_) => {
                Failure::Budget(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Algebra(a) => a.into(),
            VerifyError::Oracle(o) => o.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Result of a command: whether every check it ran passed.
pub type Outcome = Result<bool, Failure>;

/// Flag value, else `$WORDLEN_BUDGET`, else `default`.
pub fn resolve_budget(flag: Option<u64>, default: u64) -> Result<u64, Failure> {
    let budget = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{BUDGET_ENV} must be an integer, got {v:?}")))?,
            Err(_) => default,
        },
    };
    if budget == 0 {
        return Err(Failure::Usage("budget must be positive".into()));
    }
    Ok(budget)
}

pub fn print_json(value: &impl Serialize) {
    println!(
        "{}",
        serde_json::to_string(value).expect("report types serialize")
    );
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Complexity(w) => words::complexity(&w, json),
        Command::Decompose { word, n, m } => words::decompose(&word, n, m, json),
        Command::Powers { word, d, k } => words::powers(&word, d.as_deref(), k, json),
        Command::Verify(args) => checks::verify(&args, json),
        Command::Alg { command } => match command {
            AlgCommand::Length { file, cap } => alg::length(&file, cap, json),
            AlgCommand::Liw { file, budget } => alg::liw(&file, budget, json),
        },
        Command::Bounds(args) => checks::bounds(&args, json),
        Command::Oracle {
            seed,
            threads,
            budget,
        } => checks::oracle(seed, threads, budget, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => m,
                Failure::Budget(m) => m,
            };
            eprintln!("wordlen: {msg}");
            ExitCode::from(f.code())
        }
    }
}
