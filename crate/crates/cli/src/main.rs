//! `subspec`: spectra of sub-Laplacians, kernels and the verification suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! error.

mod cmd;
mod parse;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "subspec", version, about = "Spectral calculus of sub-Laplacians on SE(2) and R^n x T^m")]
struct Cli {
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output file (tables go to standard output when omitted).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues of the modified Mathieu operator.
    #[command(subcommand)]
    Mathieu(cmd::mathieu::MathieuCmd),
    /// Sub-Laplacians on the motion group SE(2).
    #[command(subcommand)]
    Se2(cmd::se2::Se2Cmd),
    /// Sub-Laplacians on R^n x T^m.
    #[command(subcommand)]
    Abelian(cmd::abelian::AbelianCmd),
    /// Run the verification suite.
    Verify(cmd::verify::VerifyArgs),
}

/// What went wrong, by exit code.
#[derive(Debug)]
pub enum Failure {
    Verification,
    Usage(String),
    Domain(String),
}

impl From<subspec::Error> for Failure {
    fn from(e: subspec::Error) -> Self {
        use subspec::Error::*;
        match e {
            InvalidArgument(_) | Io(_) | Csv(_) | Json(_) => Self::Usage(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Usage(e.to_string())
    }
}

pub struct Ctx {
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SUBSPEC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("SUBSPEC_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let ctx = Ctx {
        format: cli.format,
        output: cli.output,
    };
    match cli.command {
        Command::Mathieu(c) => cmd::mathieu::run(c, &ctx),
        Command::Se2(c) => cmd::se2::run(c, &ctx),
        Command::Abelian(c) => cmd::abelian::run(c, &ctx),
        Command::Verify(a) => cmd::verify::run(a, &ctx),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
