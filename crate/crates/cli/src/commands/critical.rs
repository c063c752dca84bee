use clap::Args;
use dicke_core::phase::closed_form_kappa;
use dicke_core::PhaseDiagram;

use super::{check_omega, require};
use crate::output::{Cell, Table};
use crate::{CliError, OutputArgs, Report};

const COLUMNS: &[&str] = &[
    "j",
    "kappa_over_omega",
    "k_slope",
    "d_energy_jump",
    "closed_form",
    "closed_form_rel_err",
];

/// Largest relative disagreement with the closed forms before exit 3.
pub const SELF_CHECK_TOL: f64 = 1e-9;

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long)]
    pub atoms: usize,
    #[arg(long, default_value_t = 10)]
    pub max_j: u64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn critical(args: &CriticalArgs) -> Result<Report, CliError> {
    require(args.atoms >= 1, "--atoms must be at least 1")?;
    require(args.max_j >= 1, "--max-j must be at least 1")?;
    require(args.max_j <= 10_000_000, "--max-j must be at most 10000000")?;
    check_omega(args.omega)?;
    let diagram = PhaseDiagram::build(args.atoms, args.omega, args.max_j)?;
    let mut table = Table::new(COLUMNS);
    let mut mismatches = Vec::new();
    for &(j, ratio) in &diagram.criticals {
        let k_next = diagram.branches[j as usize].k_slope;
        let k_prev = diagram.branches[j as usize - 1].k_slope;
        let (closed, err) = if j <= 3 {
            let c = closed_form_kappa(args.atoms, j, 1.0)?;
            let err = (ratio - c).abs() / c;
            if err.is_nan() || err > SELF_CHECK_TOL {
                mismatches.push(format!(
                    "kappa_{j}/omega = {ratio} but closed form gives {c} (relative error {err:e})"
                ));
            }
            (Cell::Float(c), Cell::Float(err))
        } else {
            (Cell::Missing, Cell::Missing)
        };
        table.push(vec![
            j.into(),
            ratio.into(),
            k_next.into(),
            (k_next - k_prev).into(),
            closed,
            err,
        ]);
    }
    Ok(Report { table, mismatches })
}
