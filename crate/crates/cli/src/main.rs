use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use nilqa_core::{CartanKind, ClassicalFamily, Error, ExceptionalGroup};

mod commands;
mod data;

/// Nilpotent orbit toolkit: duality images, quasi-admissible degrees and
/// exceptional orbit tables.
#[derive(Debug, Parser)]
#[command(name = "nilqa", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    /// Override the degree enumeration bound and image degree cap.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    bound: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List orbits with specialness and admissible degrees.
    Orbits {
        #[arg(value_parser = parse_family)]
        family: ClassicalFamily,
        #[arg(value_parser = positive())]
        rank: u32,
    },
    /// Evaluate the duality map on one dual orbit, or tabulate all of them.
    Bv {
        #[arg(value_parser = parse_family)]
        family: ClassicalFamily,
        #[arg(value_parser = positive())]
        rank: u32,
        #[arg(value_parser = positive())]
        n: u32,
        /// Comma-separated parts; `a^k` repeats a part.
        partition: Option<String>,
    },
    /// Check that every image is quasi-admissible over a grid of ranks and degrees.
    Verify {
        #[arg(value_parser = parse_family)]
        family: ClassicalFamily,
        #[arg(value_parser = positive())]
        rank_max: u32,
        #[arg(value_parser = positive())]
        n_max: u32,
    },
    /// Never-admissible orbits against orbits missed by every image.
    N0 {
        #[arg(value_parser = parse_family)]
        family: ClassicalFamily,
        #[arg(value_parser = positive())]
        rank: u32,
    },
    /// Run `n0` for ranks 1..=rank_max and report the first divergence.
    Scan {
        #[arg(value_parser = parse_family)]
        family: ClassicalFamily,
        #[arg(value_parser = positive())]
        rank_max: u32,
    },
    /// Query the bundled E6/E7/E8 orbit tables.
    Exceptional {
        #[arg(value_parser = parse_group)]
        group: ExceptionalGroup,
        action: TableAction,
    },
    /// Graded dimensions of a weighted Dynkin diagram.
    Gdim {
        #[arg(value_parser = parse_kind)]
        group: CartanKind,
        #[arg(required = true, allow_negative_numbers = true)]
        labels: Vec<i64>,
    },
    /// Randomised property checks.
    Props {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableAction {
    Dump,
    Check,
    N0,
}

fn positive() -> clap::builder::RangedI64ValueParser<u32> {
    clap::value_parser!(u32).range(1..)
}

fn parse_family(s: &str) -> Result<ClassicalFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> Result<ExceptionalGroup, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<CartanKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command.
pub struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// A checked statement failed.
    pub failed: bool,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidDiagram(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs as usize);
    }
    let pool = match pool.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };

    match pool.install(|| commands::run(&cli)) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialise"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.failed { 3 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
