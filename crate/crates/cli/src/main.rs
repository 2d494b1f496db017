//! `powermat` — analyze whether the power sequence of a complex matrix with
//! unit column modulus sums converges to a nonzero matrix, comparing the
//! analytic characterization with a numeric iteration oracle.
//!
//! Exit codes: 0 analysis completed (whatever the verdicts), 2 input or
//! usage error, 3 numeric verdict inconclusive or overflowed while
//! `--strict` is set.

mod matfile;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, ValueEnum};
use powermat::{ComplexMatrix, FamilyKind, IterationConfig, MatrixFamily};
use serde::Serialize;
use sha2::{Digest, Sha256};

use matfile::{matrix_to_json, parse_matrix_file};
use report::{analyze, render_text, AnalysisReport};

#[derive(Parser, Debug)]
#[command(
    name = "powermat",
    version,
    about = "Decides convergence of matrix power sequences, analytically and numerically",
    group(ArgGroup::new("source").required(true).args(["input", "input_dir", "generate"]))
)]
struct Args {
    /// JSON matrix file to analyze ({"d": n, "entries": [[[re, im], ...], ...]})
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Analyze every .json file in a directory
    #[arg(long, value_name = "DIR")]
    input_dir: Option<PathBuf>,

    /// Generate the input matrix from a seeded family instead of a file
    #[arg(long, value_enum, value_name = "FAMILY")]
    generate: Option<FamilyArg>,

    /// Dimension for --generate
    #[arg(long, default_value_t = 2)]
    d: usize,

    /// Seed for --generate
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Convergence tolerance on successive iterates
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    /// Entry-modulus threshold below which an iterate counts as zero
    #[arg(long, default_value_t = 1e-12)]
    zero_tol: f64,

    /// Iteration budget before the numeric verdict is inconclusive
    #[arg(long, default_value_t = 100_000)]
    max_iter: u64,

    /// Window length for convergence streaks and oscillation periods
    #[arg(long, default_value_t = 8)]
    window: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Transpose the input first (for row-normalized matrices)
    #[arg(long)]
    transpose: bool,

    /// Exit with status 3 when the numeric verdict is inconclusive or overflows
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    PositiveStochastic,
    PhaseTwisted,
    ComplexOffDiagonal,
    ComplexDiagonal,
    NegativeEntry,
    Substochastic,
    AllNegative,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::PositiveStochastic => FamilyKind::PositiveStochastic,
            FamilyArg::PhaseTwisted => FamilyKind::PhaseTwisted2x2,
            FamilyArg::ComplexOffDiagonal => FamilyKind::ComplexOffDiagonal,
            FamilyArg::ComplexDiagonal => FamilyKind::ComplexDiagonal,
            FamilyArg::NegativeEntry => FamilyKind::NegativeEntry,
            FamilyArg::Substochastic => FamilyKind::Substochastic,
            FamilyArg::AllNegative => FamilyKind::AllNegative,
        }
    }
}

/// Report wrapper for batch mode, one JSON line per file.
#[derive(Serialize)]
struct FileReport<'a> {
    file: String,
    report: &'a AnalysisReport,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(2);
        }
    };
    match run(&args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<ExitCode, String> {
    let cfg = IterationConfig {
        conv_tol: args.tol,
        zero_tol: args.zero_tol,
        max_iter: args.max_iter,
        oscillation_window: args.window,
    };
    cfg.validate().map_err(|e| e.to_string())?;

    if let Some(dir) = &args.input_dir {
        return run_directory(dir, args, &cfg);
    }

    let (matrix, digest) = load_single(args)?;
    let matrix = if args.transpose { matrix.transpose() } else { matrix };
    let report = analyze(&matrix, digest, &cfg).map_err(|e| e.to_string())?;
    print_report(&report, args.format);
    Ok(exit_for(&report, args.strict))
}

fn load_single(args: &Args) -> Result<(ComplexMatrix, String), String> {
    if let Some(path) = &args.input {
        let bytes =
            fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let matrix = parse_matrix_file(&bytes)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        Ok((matrix, digest_of(&bytes)))
    } else {
        let family_arg = args.generate.expect("clap enforces one source");
        let family = MatrixFamily::new(family_arg.into(), args.d).map_err(|e| e.to_string())?;
        let matrix = family.generate(args.seed).map_err(|e| e.to_string())?;
        let digest = digest_of(matrix_to_json(&matrix).as_bytes());
        Ok((matrix, digest))
    }
}

fn run_directory(dir: &Path, args: &Args, cfg: &IterationConfig) -> Result<ExitCode, String> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("cannot read directory {}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(format!("no .json files in {}", dir.display()));
    }

    let mut any_input_error = false;
    let mut any_strict_trip = false;
    for path in &paths {
        let outcome = fs::read(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))
            .and_then(|bytes| {
                parse_matrix_file(&bytes)
                    .map(|m| (m, digest_of(&bytes)))
                    .map_err(|e| format!("{}: {e}", path.display()))
            });
        let (matrix, digest) = match outcome {
            Ok(v) => v,
            Err(msg) => {
                eprintln!("error: {msg}");
                any_input_error = true;
                continue;
            }
        };
        let matrix = if args.transpose { matrix.transpose() } else { matrix };
        let report = analyze(&matrix, digest, cfg).map_err(|e| e.to_string())?;
        any_strict_trip |= report.strict_trip();
        match args.format {
            Format::Json => {
                let line = FileReport { file: path.display().to_string(), report: &report };
                println!("{}", serde_json::to_string(&line).expect("report serializes"));
            }
            Format::Text => {
                println!("== {}", path.display());
                print!("{}", render_text(&report));
                println!();
            }
        }
    }
    if any_input_error {
        Ok(ExitCode::from(2))
    } else if args.strict && any_strict_trip {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn print_report(report: &AnalysisReport, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        Format::Text => print!("{}", render_text(report)),
    }
}

fn exit_for(report: &AnalysisReport, strict: bool) -> ExitCode {
    if strict && report.strict_trip() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn digest_of(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{:x}", hasher.finalize())
}
