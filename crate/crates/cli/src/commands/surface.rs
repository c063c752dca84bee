use clap::Args;
use dicke_core::{
    build_block, ground_eigenpair, photon_statistics, EntanglementReport, ModelParams,
};
use rayon::prelude::*;

use super::require;
use crate::output::Table;
use crate::{CliError, OutputArgs, Report};

const COLUMNS: &[&str] = &[
    "n_atoms",
    "p",
    "concurrence",
    "tau_a",
    "entropy_nats",
    "mean_photons",
    "photon_variance",
];
const COLUMNS_BITS: &[&str] = &[
    "n_atoms",
    "p",
    "concurrence",
    "tau_a",
    "entropy_bits",
    "mean_photons",
    "photon_variance",
];

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// Largest atom number; rows cover N = 2..=atoms.
    #[arg(long)]
    pub atoms: usize,
    #[arg(long)]
    pub p_max: u64,
    /// Refuse grids with more cells than this.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_cells: u64,
    /// Report the atom-field entropy in bits.
    #[arg(long)]
    pub bits: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Cells `(N, p)` for `p = 0..=p_max`, plus the diagonal `p = N` when it
/// lies beyond `p_max`.
fn cells(n_max: usize, p_max: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend((0..=p_max).map(|p| (n, p)));
        if n as u64 > p_max {
            out.push((n, n as u64));
        }
    }
    out
}

pub fn tau_surface(args: &SurfaceArgs) -> Result<Report, CliError> {
    require(
        args.atoms >= 2,
        format!("--atoms must be at least 2, got {}", args.atoms),
    )?;
    require(args.p_max >= 1, "--p-max must be at least 1")?;
    let count = (args.atoms as u64 - 1).saturating_mul(args.p_max.saturating_add(2));
    require(
        count <= args.max_cells,
        format!(
            "grid of about {count} cells exceeds --max-cells {}",
            args.max_cells
        ),
    )?;
    let rows = cells(args.atoms, args.p_max)
        .into_par_iter()
        .map(|(n, p)| {
            let params = ModelParams::new(n, 1.0, 0.0)?;
            let branch = ground_eigenpair(&build_block(&params, p)?)?;
            let ent = EntanglementReport::from_branch(&branch)?;
            let stats = photon_statistics(&branch);
            let entropy = if args.bits {
                ent.entropy_bits()
            } else {
                ent.entropy_nats
            };
            Ok(vec![
                n.into(),
                p.into(),
                ent.concurrence.into(),
                ent.tau_a.into(),
                entropy.into(),
                stats.mean.into(),
                stats.variance.into(),
            ])
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut table = Table::new(if args.bits { COLUMNS_BITS } else { COLUMNS });
    rows.into_iter().for_each(|r| table.push(r));
    Ok(table.into())
}
