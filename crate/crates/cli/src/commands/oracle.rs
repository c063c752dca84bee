use clap::Args;
use dicke_core::oracle::run_suite;

use super::{check_omega, require};
use crate::output::{Cell, Table};
use crate::{CliError, OutputArgs, Report};

const COLUMNS: &[&str] = &[
    "check",
    "n_atoms",
    "kappa",
    "p",
    "deviation",
    "tolerance",
    "passed",
];

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// At most 4 atoms.
    #[arg(long)]
    pub atoms: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Photon-number cutoff of the dense model.
    #[arg(long, default_value_t = 10)]
    pub cutoff: usize,
    /// Couplings sampled uniformly in [0, kappa_max].
    #[arg(long, default_value_t = 20)]
    pub kappa_samples: usize,
    /// Defaults to 3·omega/sqrt(N).
    #[arg(long)]
    pub kappa_max: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn oracle_check(args: &OracleArgs) -> Result<Report, CliError> {
    require(
        (1..=4).contains(&args.atoms),
        format!("oracle-check supports 1 to 4 atoms, got {}", args.atoms),
    )?;
    check_omega(args.omega)?;
    require(args.cutoff >= 1, "--cutoff must be at least 1")?;
    require(
        args.kappa_samples >= 1,
        "--kappa-samples must be at least 1",
    )?;
    let kappa_max = args
        .kappa_max
        .unwrap_or(3.0 * args.omega / (args.atoms as f64).sqrt());
    require(
        kappa_max.is_finite() && kappa_max >= 0.0,
        format!("--kappa-max must be >= 0, got {kappa_max}"),
    )?;
    let kappas: Vec<f64> = match args.kappa_samples {
        1 => vec![kappa_max],
        m => (0..m)
            .map(|i| kappa_max * i as f64 / (m - 1) as f64)
            .collect(),
    };
    let report = run_suite(args.atoms, args.omega, args.cutoff, &kappas)?;

    let mut table = Table::new(COLUMNS);
    let mut mismatches = Vec::new();
    for o in &report.outcomes {
        if !o.passed() {
            mismatches.push(format!(
                "{} at kappa={} p={:?}: deviation {:e} > {:e}",
                o.check, o.kappa, o.p, o.deviation, o.tolerance
            ));
        }
        table.push(vec![
            Cell::Text(o.check),
            o.n_atoms.into(),
            o.kappa.into(),
            o.p.map_or(Cell::Missing, Cell::Int),
            o.deviation.into(),
            o.tolerance.into(),
            Cell::Int(o.passed() as u64),
        ]);
    }
    for (kappa, e) in &report.errors {
        mismatches.push(format!("kappa={kappa}: {e}"));
        table.push(vec![
            Cell::Text("sample_error"),
            args.atoms.into(),
            (*kappa).into(),
            Cell::Missing,
            Cell::Missing,
            Cell::Missing,
            Cell::Int(0),
        ]);
    }
    Ok(Report { table, mismatches })
}
