use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

/// Finite semi-Heyting algebras with a dually quasi-De Morgan negation:
/// identity checking, classification, enumeration and the example claims.
///
/// Exit status: 0 on success or when the checked property holds, 1 when a
/// counterexample or mismatch is found, 2 on invalid input.
#[derive(Debug, Parser)]
#[command(name = "shkit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an identity on every algebra in a file.
    Check {
        /// Algebra file, NDJSON corpus, or a builtin name.
        algebra: String,
        /// Catalog name (St, DM, L2, L'1, ...) or identity text such as "x' <= x*".
        identity: String,
    },
    /// Report variety memberships and levels.
    Classify {
        algebras: Vec<String>,
        /// Highest level tried.
        #[arg(long, default_value_t = shkit_core::classify::DEFAULT_MAX_LEVEL)]
        max_level: usize,
    },
    /// Print the level of each algebra.
    Level {
        algebra: String,
        #[arg(long, default_value_t = shkit_core::classify::DEFAULT_MAX_LEVEL)]
        max: usize,
        /// Use the alternate level identities.
        #[arg(long)]
        alt: bool,
    },
    /// Evaluate a term under an assignment such as x=b y=c.
    Eval {
        algebra: String,
        term: String,
        assignment: Vec<String>,
    },
    /// Enumerate algebras up to isomorphism as NDJSON.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Identity every result must satisfy (repeatable).
        #[arg(long)]
        satisfy: Vec<String>,
        /// Identity every result must fail (repeatable).
        #[arg(long)]
        falsify: Vec<String>,
        #[arg(long)]
        max_results: Option<usize>,
        /// Only the Heyting arrow on each lattice: one algebra per
        /// (lattice, negation) class.
        #[arg(long)]
        heyting_only: bool,
        /// Skip the classification attached to each record.
        #[arg(long)]
        no_classify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the claim suite over the shipped examples and the model space.
    VerifyPaper {
        /// Size bound for claims decided on (lattice, negation) pairs.
        #[arg(long, default_value_t = shkit_core::claims::DEFAULT_CLAIM_SIZE)]
        max_size: usize,
        /// Size bound for claims that need every arrow.
        #[arg(long, default_value_t = shkit_core::claims::DEFAULT_ARROW_SIZE)]
        arrow_size: usize,
    },
    /// Print a shipped algebra as JSON.
    Show { name: String },
    /// List the identity catalog.
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command, cli.global.json) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
