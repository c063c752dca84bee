use clap::Args;
use dicke_core::phase::excitation_cap;
use dicke_core::{photon_statistics, EntanglementReport, GroundBranch, PhaseDiagram};
use rayon::prelude::*;

use super::{check_omega, require};
use crate::output::{Cell, Table};
use crate::{CliError, OutputArgs, Report};

/// Branches a scan may build before it is refused.
const MAX_SCAN_BRANCHES: u64 = 2_000_000;

const COLUMNS: &[&str] = &[
    "kappa",
    "p_star",
    "energy",
    "d_energy_d_kappa",
    "concurrence",
    "tau_a",
    "entropy_nats",
    "mean_photons",
    "photon_variance",
    "mandel_q",
];
const COLUMNS_BITS: &[&str] = &[
    "kappa",
    "p_star",
    "energy",
    "d_energy_d_kappa",
    "concurrence",
    "tau_a",
    "entropy_bits",
    "mean_photons",
    "photon_variance",
    "mandel_q",
];

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub atoms: usize,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0)]
    pub kappa_min: f64,
    #[arg(long)]
    pub kappa_max: f64,
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
    /// Report the atom-field entropy in bits.
    #[arg(long)]
    pub bits: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Per-branch quantities, independent of κ.
struct Summary {
    concurrence: f64,
    tau_a: f64,
    entropy: f64,
    mean: f64,
    variance: f64,
    mandel_q: Option<f64>,
}

fn summarize(branch: &GroundBranch, bits: bool) -> Result<Summary, CliError> {
    let ent = EntanglementReport::from_branch(branch)?;
    let stats = photon_statistics(branch);
    Ok(Summary {
        concurrence: ent.concurrence,
        tau_a: ent.tau_a,
        entropy: if bits {
            ent.entropy_bits()
        } else {
            ent.entropy_nats
        },
        mean: stats.mean,
        variance: stats.variance,
        mandel_q: stats.mandel_q_variance,
    })
}

pub fn grid(kappa_min: f64, kappa_max: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                kappa_max
            } else {
                kappa_min + (kappa_max - kappa_min) * i as f64 / last as f64
            }
        })
        .collect()
}

pub fn scan(args: &ScanArgs) -> Result<Report, CliError> {
    require(args.atoms >= 1, "--atoms must be at least 1")?;
    check_omega(args.omega)?;
    require(
        args.kappa_min.is_finite() && args.kappa_min >= 0.0,
        format!("--kappa-min must be >= 0, got {}", args.kappa_min),
    )?;
    require(
        args.kappa_max.is_finite() && args.kappa_max > args.kappa_min,
        format!(
            "--kappa-max must exceed --kappa-min ({} <= {})",
            args.kappa_max, args.kappa_min
        ),
    )?;
    require(
        args.steps >= 2,
        format!("--steps must be at least 2, got {}", args.steps),
    )?;
    let cap = excitation_cap(args.atoms, args.kappa_max, args.omega);
    require(
        cap <= MAX_SCAN_BRANCHES,
        format!("scan would need {cap} branches (limit {MAX_SCAN_BRANCHES}); lower --kappa-max"),
    )?;

    let diagram = PhaseDiagram::covering(args.atoms, args.omega, args.kappa_max)?;
    let kappas = grid(args.kappa_min, args.kappa_max, args.steps);
    let p_lo = diagram.ground_at(args.kappa_min)?.0;
    let p_hi = diagram.ground_at(args.kappa_max)?.0;
    let summaries = (p_lo..=p_hi)
        .into_par_iter()
        .map(|p| summarize(&diagram.branches[p as usize], args.bits))
        .collect::<Result<Vec<_>, _>>()?;

    let rows = kappas
        .par_iter()
        .map(|&kappa| {
            let (p, branch) = diagram.ground_at(kappa)?;
            let energy = diagram.energy(kappa, p).expect("branch exists");
            Ok((kappa, p, energy, branch.k_slope))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut table = Table::new(if args.bits { COLUMNS_BITS } else { COLUMNS });
    let mut prev: Option<(u64, f64)> = None;
    for (kappa, p, energy, slope) in rows {
        if let Some((p_prev, e_prev)) = prev {
            if p < p_prev {
                return Err(CliError::Invariant(format!(
                    "p_star decreased from {p_prev} to {p} at kappa={kappa}"
                )));
            }
            if energy > e_prev + 1e-12 * e_prev.abs().max(1.0) {
                return Err(CliError::Invariant(format!(
                    "energy increased from {e_prev} to {energy} at kappa={kappa}"
                )));
            }
        }
        prev = Some((p, energy));
        let s = &summaries[(p - p_lo) as usize];
        table.push(vec![
            kappa.into(),
            p.into(),
            energy.into(),
            slope.into(),
            s.concurrence.into(),
            s.tau_a.into(),
            s.entropy.into(),
            s.mean.into(),
            s.variance.into(),
            Cell::from(s.mandel_q),
        ]);
    }
    Ok(table.into())
}
