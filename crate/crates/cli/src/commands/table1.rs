use clap::Args;
use dicke_core::entangle::closed_form_concurrence;
use dicke_core::phase::closed_form_slope;
use dicke_core::{EntanglementReport, PhaseDiagram};

use super::{check_omega, require};
use crate::output::{Cell, Table};
use crate::{CliError, OutputArgs, Report};

const COLUMNS: &[&str] = &[
    "p",
    "kappa_lo",
    "kappa_hi",
    "e0",
    "k_slope",
    "k_slope_closed_form",
    "concurrence",
    "concurrence_closed_form",
    "tau_a",
    "entropy_nats",
];

const SLOPE_TOL: f64 = 1e-10;
const CONCURRENCE_TOL: f64 = 1e-10;

#[derive(Args, Debug)]
pub struct Table1Args {
    #[arg(long)]
    pub atoms: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Window `[kappa_lo, kappa_hi]` of each row is in absolute coupling units;
/// the branch energy there is `e0 + kappa * k_slope`.
pub fn table1(args: &Table1Args) -> Result<Report, CliError> {
    require(
        args.atoms >= 2,
        format!("table1 needs --atoms >= 2, got {}", args.atoms),
    )?;
    check_omega(args.omega)?;
    let n = args.atoms;
    let diagram = PhaseDiagram::build(n, args.omega, 5)?;
    let mut table = Table::new(COLUMNS);
    let mut mismatches = Vec::new();
    for p in 0..=4u64 {
        let branch = diagram.branch(p).expect("built up to 5");
        let ent = EntanglementReport::from_branch(branch)?;
        let closed_k = closed_form_slope(n, p)?;
        if (branch.k_slope - closed_k).abs() > SLOPE_TOL * closed_k.abs().max(1.0) {
            mismatches.push(format!(
                "p={p}: slope {} vs closed form {closed_k}",
                branch.k_slope
            ));
        }
        let closed_c = closed_form_concurrence(n, p).ok();
        if let Some(c) = closed_c {
            if (ent.concurrence - c).abs() > CONCURRENCE_TOL {
                mismatches.push(format!(
                    "p={p}: concurrence {} vs closed form {c}",
                    ent.concurrence
                ));
            }
        }
        let lo = if p == 0 {
            0.0
        } else {
            diagram.critical(p).expect("p <= 5")
        };
        let hi = diagram.critical(p + 1).expect("p + 1 <= 5");
        let e0 = (p as f64 - 0.5 * n as f64) * args.omega;
        table.push(vec![
            p.into(),
            lo.into(),
            hi.into(),
            e0.into(),
            branch.k_slope.into(),
            closed_k.into(),
            ent.concurrence.into(),
            Cell::from(closed_c),
            ent.tau_a.into(),
            ent.entropy_nats.into(),
        ]);
    }
    Ok(Report { table, mismatches })
}
