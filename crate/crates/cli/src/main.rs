//! Command-line driver: JSON instances in, certificates, membership
//! verdicts, DOT drawings and verification reports out.
//!
//! Exit codes: 0 success (and all verification checks passed); 1 a
//! verification check failed or the degree search was exhausted; 2 invalid
//! input (arguments, JSON, schema or word syntax); 3 an element lies in the
//! subgroup; 4 the subgroup has finite index; 5 the rank is too small for
//! the requested mode.

mod dot;
mod schema;

use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};

use altquot::separation::{self, SeparationError};
use altquot::Word;

use schema::{CertificateDocument, InstanceDocument, ReportDocument};

#[derive(Parser)]
#[command(
    name = "altquot",
    version,
    about = "Finite alternating and symmetric quotients of free groups that \
             separate elements from a finitely generated subgroup"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a separation certificate from an instance document
    Separate {
        /// Instance JSON path, or "-" for standard input
        #[arg(default_value = "-")]
        input: String,
    },
    /// Decide membership of a word in a finitely generated subgroup
    Member {
        /// Rank of the free group (1..=26)
        #[arg(long)]
        rank: usize,
        /// Subgroup generator word; repeat for several generators
        #[arg(long = "subgroup", value_name = "WORD")]
        subgroup: Vec<String>,
        /// The word to test
        word: String,
    },
    /// Print a pipeline stage as a Graphviz DOT digraph
    ExportDot {
        /// Which graph to export
        #[arg(long, value_enum)]
        stage: Stage,
        /// Instance JSON path, or "-" for standard input
        #[arg(default_value = "-")]
        input: String,
    },
    /// Check a certificate against an instance
    Verify {
        /// Instance JSON path
        #[arg(long)]
        instance: String,
        /// Certificate JSON path
        #[arg(long)]
        certificate: String,
        /// Emit the report as JSON instead of a table
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Stage {
    /// Core graph of the subgroup
    Core,
    /// Core graph grown by the traced elements
    Z,
    /// Completed covering for the instance's mode
    Cover,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<SeparationError> for Failure {
    fn from(error: SeparationError) -> Failure {
        let code = match error {
            SeparationError::EmptyElementList => 2,
            SeparationError::ElementInSubgroup { .. } => 3,
            SeparationError::FiniteIndexSubgroup => 4,
            SeparationError::RankTooSmall { .. } => 5,
            SeparationError::VerificationExhausted { .. } => 1,
        };
        Failure {
            code,
            message: error.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Separate { input } => {
            let instance = read_instance(&input)?;
            let certificate = separation::separate(&instance)?;
            let document = CertificateDocument::from_certificate(&certificate);
            print_json(&document)?;
            Ok(0)
        }
        Command::Member {
            rank,
            subgroup,
            word,
        } => {
            if !(1..=schema::MAX_RANK).contains(&rank) {
                return Err(Failure::invalid(format!(
                    "rank must be between 1 and {}, got {rank}",
                    schema::MAX_RANK
                )));
            }
            let parse = |text: &str| {
                Word::parse(text, rank)
                    .map_err(|e| Failure::invalid(format!("word {text:?}: {e}")))
            };
            let generators = subgroup
                .iter()
                .map(|t| parse(t))
                .collect::<Result<Vec<_>, _>>()?;
            let query = parse(&word)?;
            let verdict = altquot::is_member(rank, &generators, &query);
            println!("{verdict}");
            Ok(0)
        }
        Command::ExportDot { stage, input } => {
            let instance = read_instance(&input)?;
            let graph = match stage {
                Stage::Core => {
                    // The core exists whenever the instance parses; the
                    // pipeline's own preconditions only apply downstream.
                    altquot::core_graph(instance.rank, &instance.subgroup)
                }
                Stage::Z => separation::traced_graph(&instance)?,
                Stage::Cover => separation::completed_cover(&instance)?.0,
            };
            print!("{}", dot::to_dot(&graph));
            Ok(0)
        }
        Command::Verify {
            instance,
            certificate,
            json,
        } => {
            let instance = read_instance(&instance)?;
            let text = read_input(&certificate)?;
            let document: CertificateDocument =
                serde_json::from_str(&text).map_err(|e| Failure::invalid(e.to_string()))?;
            let certificate = document.to_certificate().map_err(Failure::invalid)?;
            let report = separation::verify_certificate(&instance, &certificate);
            if json {
                print_json(&ReportDocument::from_report(&report))?;
            } else {
                for check in &report.checks {
                    let mark = if check.passed { "ok  " } else { "FAIL" };
                    println!("{mark} {}", check.label);
                }
                println!(
                    "{}: {} of {} checks passed",
                    if report.passed() { "passed" } else { "failed" },
                    report.checks.iter().filter(|c| c.passed).count(),
                    report.checks.len()
                );
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::invalid(format!("reading standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::invalid(format!("reading {path}: {e}")))
    }
}

fn read_instance(path: &str) -> Result<altquot::ProblemInstance, Failure> {
    let text = read_input(path)?;
    let document: InstanceDocument =
        serde_json::from_str(&text).map_err(|e| Failure::invalid(e.to_string()))?;
    document.to_instance().map_err(Failure::invalid)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::invalid(format!("serialising output: {e}")))?;
    println!("{text}");
    Ok(())
}
