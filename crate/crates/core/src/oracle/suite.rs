//! Equivalence checks between the dense model and the block pipeline.

use nalgebra::DMatrix;

use super::{build_dense, von_neumann_entropy, Subsystems};
use crate::entangle::{atom_field_entropy, dicke_weights, two_atom_rdm};
use crate::error::{DickeError, Result};
use crate::fieldstats::photon_statistics;
use crate::phase::{branch_energy, ground_excitation};
use crate::subspace::{build_block, ModelParams};

pub const BLOCK_TOL: f64 = 1e-12;
pub const COMMUTATOR_TOL: f64 = 1e-12;
pub const GROUND_TOL: f64 = 1e-9;
/// Largest block compared against the symmetric projection.
pub const MAX_PROJECTED_BLOCK: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub n_atoms: usize,
    pub kappa: f64,
    /// Excitation number for per-block or per-ground checks.
    pub p: Option<u64>,
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
    /// Samples where a check could not run, e.g. an inadequate cutoff.
    pub errors: Vec<(f64, DickeError)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.outcomes.iter().all(CheckOutcome::passed)
    }
}

fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).abs().max()
}

/// `[H, P] = 0` and per-block agreement of the projected Hamiltonian with
/// `e0·I + κ·T(p)`.
pub fn structural_checks(params: &ModelParams, cutoff: usize) -> Result<Vec<CheckOutcome>> {
    let dense = build_dense(params, cutoff)?;
    let (comm, norm) = dense.commutator_norm();
    let mut out = vec![CheckOutcome {
        check: "commutator",
        n_atoms: params.n_atoms,
        kappa: params.kappa,
        p: None,
        deviation: comm,
        tolerance: COMMUTATOR_TOL * norm.max(1.0),
    }];
    for p in 0..=MAX_PROJECTED_BLOCK.min(cutoff) {
        let projected = dense.project_block(p)?;
        let block = build_block(params, p as u64)?;
        let rows = block.matrix(params.kappa);
        let expected = DMatrix::from_fn(block.dim, block.dim, |i, j| rows[i][j]);
        let scale = expected.abs().max().max(1.0);
        out.push(CheckOutcome {
            check: "block_extraction",
            n_atoms: params.n_atoms,
            kappa: params.kappa,
            p: Some(p as u64),
            deviation: max_abs_diff(&projected, &expected) / scale,
            tolerance: BLOCK_TOL,
        });
    }
    Ok(out)
}

/// Ground energy, pair RDM, field entropy and photon moments at one κ.
pub fn ground_checks(params: &ModelParams, cutoff: usize) -> Result<Vec<CheckOutcome>> {
    let dense = build_dense(params, cutoff)?;
    let ground = dense.dense_ground()?;
    let (p_star, branch) = ground_excitation(params)?;
    let n = params.n_atoms;
    let kappa = params.kappa;
    let outcome = |check, deviation| CheckOutcome {
        check,
        n_atoms: n,
        kappa,
        p: Some(p_star),
        deviation,
        tolerance: GROUND_TOL,
    };
    let mut out = Vec::new();

    let e_block = branch_energy(n, params.omega, kappa, p_star, branch.k_slope);
    out.push(outcome(
        "ground_energy",
        (ground.energy - e_block).abs() / e_block.abs().max(1.0),
    ));

    let (p_mean, p_var) = dense.excitation_moments(&ground.state);
    out.push(outcome(
        "excitation_number",
        (p_mean - p_star as f64).abs() + p_var,
    ));

    let weights = dicke_weights(&branch);
    if n >= 2 {
        let dense_pair = dense.dense_partial_trace(&ground.state, &Subsystems::atoms(&[0, 1]))?;
        let block_pair = two_atom_rdm(&weights, n)?;
        let block_pair = DMatrix::from_fn(4, 4, |i, j| block_pair.get(i, j));
        out.push(outcome(
            "two_atom_rdm",
            max_abs_diff(&dense_pair, &block_pair),
        ));
    }

    let rho_f = dense.dense_partial_trace(&ground.state, &Subsystems::field())?;
    out.push(outcome(
        "field_entropy",
        (von_neumann_entropy(&rho_f) - atom_field_entropy(&weights)).abs(),
    ));

    let probs: Vec<f64> = rho_f.diagonal().iter().copied().collect();
    let mean: f64 = probs.iter().enumerate().map(|(k, w)| k as f64 * w).sum();
    let var: f64 = probs
        .iter()
        .enumerate()
        .map(|(k, w)| (k as f64 - mean).powi(2) * w)
        .sum();
    let stats = photon_statistics(&branch);
    out.push(outcome("photon_mean", (mean - stats.mean).abs()));
    out.push(outcome("photon_variance", (var - stats.variance).abs()));
    Ok(out)
}

/// Structural checks once, then ground checks at every κ sample. Sample
/// failures (such as [`DickeError::CutoffTooSmall`]) are collected in
/// [`SuiteReport::errors`] rather than aborting the run.
pub fn run_suite(n_atoms: usize, omega: f64, cutoff: usize, kappas: &[f64]) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    let base = ModelParams::new(n_atoms, omega, kappas.iter().copied().fold(0.0, f64::max))?;
    report.outcomes.extend(structural_checks(&base, cutoff)?);
    for &kappa in kappas {
        let params = ModelParams::new(n_atoms, omega, kappa)?;
        match ground_checks(&params, cutoff) {
            Ok(o) => report.outcomes.extend(o),
            Err(e) => report.errors.push((kappa, e)),
        }
    }
    Ok(report)
}
