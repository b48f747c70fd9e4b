//! Thin command-line driver over the library pipeline.
//!
//! Exit codes: 0 success, 1 input/usage problem, 2 violated mathematical
//! identity, 3 numerical-precision failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toroidal::analysis::{self, AnalysisFlags, Section};

#[derive(Parser)]
#[command(
    name = "toroidal",
    version,
    about = "L-functions, Hecke eigenvalue structure, and toroidal periods \
             of global function fields given by explicit curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
struct CommonArgs {
    /// Path to a JSON curve spec, e.g. {"p":2,"k":1,"model":"hyperelliptic",
    /// "f":[0,0,0,1],"h":[1]}
    spec: PathBuf,
    /// Working bound on place degrees (default: max(2g-2, 4))
    #[arg(long)]
    max_place_degree: Option<u32>,
    /// Numeric tolerance for residuals, windows, and vanishing tests
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Also search sign-twisted (delta = 1) quadratic characters
    #[arg(long)]
    include_sign_twists: bool,
    /// Degree bound for rational-base twist covers y^2 = d(x)
    #[arg(long, default_value_t = 4)]
    twist_search_degree: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Append the timing block (excluded from byte-determinism)
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline and emit the complete report
    Analyze(CommonArgs),
    /// Run the invariant suite; nonzero exit on any failed check
    Verify(CommonArgs),
    /// L-polynomials with zero multiplicities and functional-equation pairs
    Zeros(CommonArgs),
    /// Hecke eigenvalue table at the certified toroidal points
    HeckeTable(CommonArgs),
    /// Toroidal dimension count and residue classification
    Toroidal(CommonArgs),
    /// Quadratic twist search for a nonvanishing central value
    TwistSearch(CommonArgs),
}

fn flags_of(args: &CommonArgs) -> AnalysisFlags {
    AnalysisFlags {
        max_place_degree: args.max_place_degree,
        tolerance: args.tolerance,
        include_sign_twists: args.include_sign_twists,
        twist_search_degree: args.twist_search_degree,
        timing: args.timing,
    }
}

fn run(cli: &Cli) -> toroidal::Result<ExitCode> {
    let (args, section) = match &cli.command {
        Command::Analyze(a) => (a, Section::Full),
        Command::Verify(a) => (a, Section::Full),
        Command::Zeros(a) => (a, Section::Zeros),
        Command::HeckeTable(a) => (a, Section::Hecke),
        Command::Toroidal(a) => (a, Section::Toroidal),
        Command::TwistSearch(a) => (a, Section::Twists),
    };
    let text = std::fs::read_to_string(&args.spec)?;
    let spec = analysis::parse_spec(&text)?;
    let flags = flags_of(args);

    if matches!(cli.command, Command::Verify(_)) {
        let report = analysis::verify(&spec, &flags)?;
        match args.format {
            Format::Json => print!("{}", report.to_json()?),
            Format::Text => print!("{}", report.to_text()),
        }
        return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) });
    }

    let report = analysis::analyze(&spec, &flags)?;
    match args.format {
        Format::Json => print!("{}", analysis::to_json(&report, section)?),
        Format::Text => print!("{}", analysis::to_text(&report, section)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
