//! Command-line front end: problem files in, engine results out.

pub mod commands;
pub mod problem;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cover_forge::Error;

pub use problem::{parse_problem, ProblemFile};

#[derive(Debug, Parser)]
#[command(
    name = "cover-forge",
    version,
    about = "Exact Groebner bases and cover-homomorphism relations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Term order: degrevlex, lex or block:k. Overrides the ring line.
    #[arg(long, global = true, value_parser = parse_order_arg)]
    pub order: Option<cover_forge::TermOrder>,
    /// Include wall-clock timings in catalog output.
    #[arg(long, global = true)]
    pub timings: bool,
}

fn parse_order_arg(s: &str) -> Result<cover_forge::TermOrder, String> {
    problem::parse_order(s).ok_or_else(|| format!("unknown term order `{s}`"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Groebner basis of the generators.
    Gb { file: PathBuf },
    /// Normal forms of polynomials modulo the ideal.
    Nf {
        file: PathBuf,
        /// Polynomial to reduce; repeat for several.
        #[arg(long = "poly", required = true)]
        polys: Vec<String>,
    },
    /// Syzygies of the generators (minimal ones when homogeneous).
    Syz { file: PathBuf },
    /// Minimal free resolution and Betti numbers of a homogeneous ideal.
    Resolve {
        file: PathBuf,
        /// Stop after this many steps; defaults to one past the number of variables.
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Eliminate variables.
    Eliminate {
        file: PathBuf,
        /// Comma-separated variables to drop.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
    },
    /// Relations on the deformation parameters of a cover problem.
    Relations { file: PathBuf },
    /// Check one fiber of a cover problem.
    Fiber {
        file: PathBuf,
        /// Linear-section direction e (four rationals); degree-6 problem only.
        #[arg(long, value_delimiter = ',', requires = "c")]
        e: Option<Vec<String>>,
        /// Linear-section point c (four rationals); degree-6 problem only.
        #[arg(long, value_delimiter = ',', requires = "e")]
        c: Option<Vec<String>>,
        /// Values of the free parameters, as name=value pairs.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["e", "c"])]
        point: Option<Vec<String>>,
    },
    /// List or run the built-in regression catalog.
    Catalog {
        /// Entries to run; none lists them.
        names: Vec<String>,
        /// Run every entry.
        #[arg(long, conflicts_with = "names")]
        all: bool,
    },
    /// Run one catalog entry, optionally against a saved certificate.
    Verify {
        name: String,
        /// Certificate JSON from an earlier run; any difference is a regression.
        #[arg(long)]
        against: Option<PathBuf>,
    },
}

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const PARSE: u8 = 1;
    pub const PRECONDITION: u8 = 2;
    pub const REGRESSION: u8 = 3;
    pub const INTERNAL: u8 = 4;
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) => exit::PARSE,
        Error::Regression(_) => exit::REGRESSION,
        Error::Internal(_) => exit::INTERNAL,
        Error::RingMismatch(_)
        | Error::Shape(_)
        | Error::Degree(_)
        | Error::UnmappedVariable(_)
        | Error::Unsupported(_)
        | Error::Hypothesis(_)
        | Error::Precondition(_) => exit::PRECONDITION,
    }
}

/// Run a parsed command, writing results to `out`. Errors go to the caller.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Error> {
    commands::dispatch(&cli.command, &cli.common, out)
}
