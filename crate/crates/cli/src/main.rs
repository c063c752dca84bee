mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dicke_core::DickeError;

use output::{Format, Table};

#[derive(Parser)]
#[command(
    name = "dicke",
    version,
    about = "Ground-state scans of the rotating-wave Dicke model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ground state on a uniform coupling grid.
    Scan(commands::ScanArgs),
    /// Ladder of critical couplings.
    Critical(commands::CriticalArgs),
    /// Rows p = 0..4 with closed forms next to the numeric values.
    Table1(commands::Table1Args),
    /// Pairwise entanglement over the (N, p) plane.
    TauSurface(commands::SurfaceArgs),
    /// Monogamy saturation in the single-excitation window.
    Ckw(commands::CkwArgs),
    /// Compare the block pipeline against a dense truncated model.
    OracleCheck(commands::OracleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
    Io(io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Invariant(m) => write!(f, "internal invariant violated: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<DickeError> for CliError {
    fn from(e: DickeError) -> Self {
        match e {
            DickeError::InvalidParams(_)
            | DickeError::BasisIndexOutOfRange { .. }
            | DickeError::Unsupported(_)
            | DickeError::OracleLimit(_)
            | DickeError::InvalidSelector(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// A finished table plus any self-check failures found while building it.
pub struct Report {
    pub table: Table,
    pub mismatches: Vec<String>,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Self {
            table,
            mismatches: Vec::new(),
        }
    }
}

fn emit(report: &Report, out: &OutputArgs) -> Result<(), CliError> {
    match &out.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            report.table.write(out.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            report.table.write(out.format, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, CliError> {
    let out = match &cli.command {
        Command::Scan(a) => &a.out,
        Command::Critical(a) => &a.out,
        Command::Table1(a) => &a.out,
        Command::TauSurface(a) => &a.out,
        Command::Ckw(a) => &a.out,
        Command::OracleCheck(a) => &a.out,
    }
    .clone();
    if let Some(n) = out.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Invariant(e.to_string()))?;
    }
    let report = match &cli.command {
        Command::Scan(a) => commands::scan(a)?,
        Command::Critical(a) => commands::critical(a)?,
        Command::Table1(a) => commands::table1(a)?,
        Command::TauSurface(a) => commands::tau_surface(a)?,
        Command::Ckw(a) => commands::ckw(a)?,
        Command::OracleCheck(a) => commands::oracle_check(a)?,
    };
    emit(&report, &out)?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(report) if report.mismatches.is_empty() => ExitCode::SUCCESS,
        Ok(report) => {
            for m in &report.mismatches {
                eprintln!("self-check failed: {m}");
            }
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
