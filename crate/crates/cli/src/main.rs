mod doc;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "xmodhom", version, about = "Homology of finite crossed modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    InclusionReduction,
    ClassicalAgreement,
    FiveTerm,
    WeakInvariance,
    H2Epi,
    H0ClosedForm,
    H1ClosedForm,
    CoefficientLes,
}

#[derive(clap::Args, Clone, Copy, Debug)]
pub struct BarFlags {
    /// Drop bar tuples containing the identity.
    #[arg(long)]
    normalized_bar: bool,
    /// Largest bicomplex entry, in generators.
    #[arg(long, default_value_t = xmod_homology::bar::DEFAULT_MAX_ENTRY)]
    max_entry: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Homology of a crossed module, integral or with module coefficients.
    Homology {
        file: PathBuf,
        #[arg(long)]
        xmod: String,
        #[arg(long)]
        max_degree: usize,
        /// A module action over the crossed module.
        #[arg(long)]
        coefficients: Option<String>,
        #[command(flatten)]
        bar: BarFlags,
    },
    /// Check a law on every applicable object of a document.
    Verify {
        #[arg(value_enum)]
        law: Law,
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Restrict to one object (crossed module, module action, morphism or sequence).
        #[arg(long)]
        only: Option<String>,
        #[command(flatten)]
        bar: BarFlags,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Validate { file, format } => run::validate(&file, format),
        Command::Homology { file, xmod, max_degree, coefficients, bar } => {
            run::homology(&file, &xmod, max_degree, coefficients.as_deref(), bar)
        }
        Command::Verify { law, file, max_degree, only, bar } => run::verify(law, &file, max_degree, only.as_deref(), bar),
    };
    // output is written once, after all work is done
    let run::Outcome { stdout, stderr, code } = outcome;
    if !stdout.is_empty() {
        print!("{stdout}");
    }
    if !stderr.is_empty() {
        eprint!("{stderr}");
    }
    ExitCode::from(code)
}
