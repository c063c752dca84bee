use clap::Args;
use dicke_core::entangle::ckw_report_p1;

use super::require;
use crate::output::{Cell, Table};
use crate::{CliError, OutputArgs, Report};

const COLUMNS: &[&str] = &[
    "qubit",
    "tangle",
    "sum_sq_concurrence",
    "residual",
    "concurrence_field_atom",
    "concurrence_atom_atom",
];

pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Args, Debug)]
pub struct CkwArgs {
    #[arg(long)]
    pub atoms: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

pub fn ckw(args: &CkwArgs) -> Result<Report, CliError> {
    require(
        args.atoms >= 2,
        format!("ckw needs --atoms >= 2, got {}", args.atoms),
    )?;
    let r = ckw_report_p1(args.atoms)?;
    let mut table = Table::new(COLUMNS);
    let mut mismatches = Vec::new();
    for (name, q) in [("field", &r.field), ("atom", &r.atom)] {
        if q.residual().is_nan() || q.residual().abs() > RESIDUAL_TOL {
            mismatches.push(format!("{name} qubit residual {:e}", q.residual()));
        }
        table.push(vec![
            Cell::Text(name),
            q.tangle.into(),
            q.sum_sq_concurrence.into(),
            q.residual().into(),
            r.concurrence_field_atom.into(),
            r.concurrence_atom_atom.into(),
        ]);
    }
    Ok(Report { table, mismatches })
}
