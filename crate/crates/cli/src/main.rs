//! `ualg`: command-line front end for the finite algebra workbench.
//!
//! Exit status: 0 for yes or success, 1 for no, 2 for errors, exceeded caps
//! and timeouts.

mod commands;
mod report;
mod verify;

use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{CliError, Report};

#[derive(Parser, Debug)]
#[command(name = "ualg", version, about = "Finite universal algebra workbench")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
}

/// Resource caps and output switches shared by every command.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Print full witness blocks.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Re-check every emitted witness before printing it.
    #[arg(long, global = true)]
    pub verify_witness: bool,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Maximum free-algebra size.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_free: u64,
    /// Maximum length of a free-algebra vector.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_vec: u64,
    /// Maximum number of memoised game positions.
    #[arg(long, global = true, default_value_t = 5_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_memo: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, env = "UALG_TIMEOUT", value_parser = positive_seconds)]
    pub timeout: Option<f64>,
}

fn positive_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number of seconds")),
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Congruence generated by pairs `x y x' y' ...`.
    Cg { algebra: String, elements: Vec<usize> },
    /// Subdirect irreducibility and the monolith.
    Si { algebra: String },
    /// Whether a set is a class of some congruence.
    Congclass {
        algebra: String,
        #[arg(required = true)]
        elements: Vec<usize>,
    },
    /// Subdirect decomposition into irreducible quotients.
    Decompose { algebra: String },
    /// Largest congruence saturating a set.
    Syncong { algebra: String, elements: Vec<usize> },
    /// Division preorder; yes when it is an order.
    Division { algebra: String },
    /// Free algebra on k generators with its basis equations.
    Free {
        #[arg(long)]
        k: usize,
        #[arg(required = true)]
        algebras: Vec<String>,
    },
    /// Normal form of a term in the free algebra.
    Normalize {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        term: String,
        #[arg(required = true)]
        algebras: Vec<String>,
    },
    /// Whether an equation holds in every listed algebra.
    Eq {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(required = true)]
        algebras: Vec<String>,
    },
    /// Membership of A in S, H, HS, SP or SP+ of the listed algebras.
    Member {
        operator: String,
        algebra: String,
        #[arg(required = true)]
        class: Vec<String>,
    },
    /// Membership of A in the variety generated by B.
    Hsp { algebra: String, generator: String },
    /// Back-and-forth equivalence for a number of rounds.
    Ef {
        a: String,
        b: String,
        #[arg(long)]
        rounds: usize,
        /// Print a Spoiler winning line when Spoiler wins.
        #[arg(long)]
        trace: bool,
    },
    /// Build one of the standard constructions.
    #[command(subcommand)]
    Construct(Construction),
    /// Homomorphism from an instance to a template.
    Csp { instance: String, template: String },
    /// Truth of a sentence in an algebra.
    FormulaEval {
        algebra: String,
        /// Sentence text, or `@path` to read it from a file.
        formula: String,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum Construction {
    /// Graph algebra of a digraph
    Graphalg { graph: String },
    /// Gadget algebra with a designated pair for reachability from u to v
    Gadget { graph: String, u: usize, v: usize },
    /// Flat extension of an algebra
    Flat {
        algebra: String,
        #[arg(long)]
        proj: bool,
        #[arg(long)]
        zero: bool,
    },
    /// McKenzie's semigroups of size n
    Mckenzie {
        n: usize,
        #[arg(value_parser = ["S", "T"])]
        variant: String,
    },
    /// Rees matrix semigroup over the 2-element group
    Rees {
        n: usize,
        #[arg(long, conflicts_with = "plain", required_unless_present = "plain")]
        twisted: bool,
        #[arg(long)]
        plain: bool,
    },
    /// Algebra encoding a relational template
    Csp2alg { structure: String },
    /// Relational structures encoding an algebra
    Alg2csp { algebra: String },
}

fn run_with_budget(command: Command, config: RunConfig) -> Result<Report, CliError> {
    let Some(seconds) = config.timeout else {
        return commands::dispatch(&command, &config);
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(commands::dispatch(&command, &config));
    });
    rx.recv_timeout(Duration::from_secs_f64(seconds))
        .unwrap_or(Err(CliError::Timeout(seconds)))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_with_budget(cli.command, cli.config) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(report.code)
        }
        Err(e) => {
            if e.is_cap() {
                println!("verdict: unknown(cap)");
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
