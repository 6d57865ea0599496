use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use gauss_vassiliev::invariants::Evaluator;
use gauss_vassiliev::polyalg::homfly_series;
use gauss_vassiliev::verify::{run_suite, selftest, SuiteReport};
use gauss_vassiliev::{homfly, Catalog, LinkCode};

#[derive(Parser)]
#[command(name = "gaussform", version, about = "Degree-4 Vassiliev invariants from signed Gauss codes")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// configurations.txt, or a directory containing it
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// All invariants of the diagram in FILE
    Invariants { file: PathBuf },
    /// HOMFLY polynomial by skein recursion
    Homfly { file: PathBuf },
    /// HOMFLY series up to x^4 assembled from the invariants
    Series { file: PathBuf },
    /// Oracle checks on the curated set plus a random corpus
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        size: usize,
    },
    /// Quick deterministic checks
    Selftest,
}

enum Failure {
    Check(String),
    Input(String),
}

fn load_catalog(path: Option<&Path>) -> Result<Catalog, Failure> {
    let Some(p) = path else {
        return Ok(Catalog::builtin().clone());
    };
    let file = if p.is_dir() { p.join("configurations.txt") } else { p.to_path_buf() };
    Catalog::load(&file).map_err(|e| Failure::Input(e.to_string()))
}

fn read_code(file: &Path) -> Result<LinkCode, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    LinkCode::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn emit(format: Format, json: Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&json).expect("json")),
        Format::Text => print!("{}", if text.ends_with('\n') { text } else { text + "\n" }),
    }
}

fn suite(format: Format, r: SuiteReport) -> Result<(), Failure> {
    emit(format, r.to_json(), r.to_text());
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} checks failed", r.failures.len())))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cat = load_catalog(cli.catalog.as_deref())?;
    let ev = Evaluator::new(&cat);
    match cli.command {
        Command::Invariants { file } => {
            let r = ev.all(&read_code(&file)?).map_err(|e| Failure::Input(e.to_string()))?;
            emit(cli.format, r.to_json(), r.to_text());
        }
        Command::Homfly { file } => {
            let p = homfly(&read_code(&file)?);
            emit(cli.format, p.to_json(), p.to_string());
        }
        Command::Series { file } => {
            let r = ev.all(&read_code(&file)?).map_err(|e| Failure::Input(e.to_string()))?;
            let s = homfly_series(&r).map_err(|e| Failure::Check(e.to_string()))?;
            emit(cli.format, s.to_json(), s.to_string());
        }
        Command::Verify { seed, size } => suite(cli.format, run_suite(&cat, seed, size))?,
        Command::Selftest => suite(cli.format, selftest(&cat))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("gaussform: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("gaussform: {msg}");
            ExitCode::from(2)
        }
    }
}
