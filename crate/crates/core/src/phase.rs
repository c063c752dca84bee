//! Ground-state excitation number as a function of the coupling, and the
//! ladder of critical couplings where it jumps.
//!
//! Every branch energy is linear in κ, `E(p)(κ) = (p − N/2)ω + κ·K(p)`, so the
//! ground state is the lower envelope of a family of lines. Consecutive lines
//! `p = j−1` and `p = j` cross at `κ_j = ω / (K(j−1) − K(j))`.

use crate::eigen::{ground_eigenpair, GroundBranch};
use crate::error::{DickeError, Result};
use crate::subspace::{build_block, ModelParams};

/// Smallest slope gap accepted when intersecting two branches.
const MIN_SLOPE_GAP: f64 = 1e-14;

fn branch(n_atoms: usize, omega: f64, p: u64) -> Result<GroundBranch> {
    let params = ModelParams::new(n_atoms, omega, 0.0)?;
    ground_eigenpair(&build_block(&params, p)?)
}

pub fn branch_energy(n_atoms: usize, omega: f64, kappa: f64, p: u64, k_slope: f64) -> f64 {
    (p as f64 - 0.5 * n_atoms as f64) * omega + kappa * k_slope
}

/// Energy of the lowest state with exactly `p` excitations.
pub fn ground_energy(params: &ModelParams, p: u64) -> Result<f64> {
    let b = branch(params.n_atoms, params.omega, p)?;
    Ok(branch_energy(
        params.n_atoms,
        params.omega,
        params.kappa,
        p,
        b.k_slope,
    ))
}

/// `dE/dκ` inside branch `p`, which is just `K(p)`.
pub fn energy_derivative(params: &ModelParams, p: u64) -> Result<f64> {
    Ok(branch(params.n_atoms, params.omega, p)?.k_slope)
}

fn intersect(j: u64, k_prev: f64, k_next: f64, omega: f64) -> Result<f64> {
    let gap = k_prev - k_next;
    if gap.is_nan() || gap.abs() < MIN_SLOPE_GAP {
        return Err(DickeError::DegenerateBranches { j, gap });
    }
    Ok(omega / gap)
}

/// Critical coupling κ_j where the ground state moves from `j−1` to `j`
/// excitations.
pub fn critical_coupling(n_atoms: usize, j: u64, omega: f64) -> Result<f64> {
    if j == 0 {
        return Err(DickeError::InvalidParams(
            "critical couplings are indexed from j = 1".into(),
        ));
    }
    let prev = branch(n_atoms, omega, j - 1)?;
    let next = branch(n_atoms, omega, j)?;
    intersect(j, prev.k_slope, next.k_slope, omega)
}

/// Closed-form κ_1, κ_2, κ_3.
pub fn closed_form_kappa(n_atoms: usize, j: u64, omega: f64) -> Result<f64> {
    let n = n_atoms as f64;
    let inv = match j {
        1 => n.sqrt(),
        2 => (4.0 * n - 2.0).sqrt() - n.sqrt(),
        3 => {
            let inner = (4.0 * n - 5.0).powi(2) + 8.0 * n;
            (5.0 * (n - 1.0) + inner.sqrt()).sqrt() - (4.0 * n - 2.0).sqrt()
        }
        _ => {
            return Err(DickeError::Unsupported(format!(
                "closed-form critical coupling only for j in 1..=3, got {j}"
            )))
        }
    };
    Ok(omega / inv)
}

/// Closed-form ground slopes `K(p)` for `p = 0..=4`.
pub fn closed_form_slope(n_atoms: usize, p: u64) -> Result<f64> {
    let n = n_atoms as f64;
    let k = match p {
        0 => 0.0,
        1 => -n.sqrt(),
        2 => -(2.0 * (2.0 * n - 1.0)).sqrt(),
        3 => -(5.0 * (n - 1.0) + ((4.0 * n - 5.0).powi(2) + 8.0 * n).sqrt()).sqrt(),
        4 => -(10.0 * n - 15.0 + 3.0 * (17.0 - 12.0 * n + 4.0 * n * n).sqrt()).sqrt(),
        _ => {
            return Err(DickeError::Unsupported(format!(
                "closed-form ground energy only for p in 0..=4, got {p}"
            )))
        }
    };
    Ok(k)
}

pub fn closed_form_energy(params: &ModelParams, p: u64) -> Result<f64> {
    let k = closed_form_slope(params.n_atoms, p)?;
    Ok(branch_energy(
        params.n_atoms,
        params.omega,
        params.kappa,
        p,
        k,
    ))
}

/// Strong-coupling estimate `κ_p ≈ ω / (N(√(p+1) − √p))`.
pub fn asymptotic_kappa(n_atoms: usize, p: u64, omega: f64) -> f64 {
    let pf = p as f64;
    // √(p+1) − √p written without cancellation
    let diff = 1.0 / ((pf + 1.0).sqrt() + pf.sqrt());
    omega / (n_atoms as f64 * diff)
}

/// Upper bound on the ground excitation number searched at coupling κ.
pub fn excitation_cap(n_atoms: usize, kappa: f64, omega: f64) -> u64 {
    let x = n_atoms as f64 * kappa / (2.0 * omega);
    (x * x).ceil() as u64 + n_atoms as u64 + 8
}

/// Ground excitation number and its branch, by direct minimization over
/// `p = 0..=cap`. Ties resolve to the smaller `p`.
pub fn ground_excitation(params: &ModelParams) -> Result<(u64, GroundBranch)> {
    params.validate()?;
    let cap = excitation_cap(params.n_atoms, params.kappa, params.omega);
    let energy = |b: &GroundBranch| {
        branch_energy(params.n_atoms, params.omega, params.kappa, b.p, b.k_slope)
    };
    let mut best = branch(params.n_atoms, params.omega, 0)?;
    let mut best_e = energy(&best);
    for p in 1..=cap {
        let b = branch(params.n_atoms, params.omega, p)?;
        let e = energy(&b);
        if e < best_e {
            best = b;
            best_e = e;
        }
    }
    if best.p == cap {
        return Err(DickeError::CapExhausted {
            cap,
            kappa: params.kappa,
        });
    }
    let next = branch(params.n_atoms, params.omega, best.p + 1)?;
    if energy(&next) < best_e {
        return Err(DickeError::Invariant(format!(
            "branch p={} lies below the selected ground p={}",
            best.p + 1,
            best.p
        )));
    }
    Ok((best.p, best))
}

/// Branches `0..=p_max` and the critical couplings between them, for fixed
/// atoms and frequency. Immutable once built.
#[derive(Debug, Clone)]
pub struct PhaseDiagram {
    pub n_atoms: usize,
    pub omega: f64,
    /// `(j, κ_j / ω)` for `j = 1..=p_max`, strictly increasing.
    pub criticals: Vec<(u64, f64)>,
    pub branches: Vec<GroundBranch>,
}

impl PhaseDiagram {
    /// Fails with [`DickeError::Invariant`] if the ladder is not strictly
    /// increasing, since the window picture would then be wrong.
    pub fn build(n_atoms: usize, omega: f64, p_max: u64) -> Result<Self> {
        let branches = (0..=p_max)
            .map(|p| branch(n_atoms, omega, p))
            .collect::<Result<Vec<_>>>()?;
        let mut criticals = Vec::with_capacity(p_max as usize);
        for (j, pair) in (1u64..).zip(branches.windows(2)) {
            let k = intersect(j, pair[0].k_slope, pair[1].k_slope, 1.0)?;
            if let Some(&(_, prev)) = criticals.last() {
                if k.is_nan() || k <= prev {
                    return Err(DickeError::Invariant(format!(
                        "critical ladder not increasing for N={n_atoms}: kappa_{j}/omega={k} <= kappa_{}/omega={prev}",
                        j - 1
                    )));
                }
            }
            if !(k > 0.0 && k.is_finite()) {
                return Err(DickeError::Invariant(format!(
                    "kappa_{j}/omega={k} is not positive"
                )));
            }
            criticals.push((j, k));
        }
        Ok(Self {
            n_atoms,
            omega,
            criticals,
            branches,
        })
    }

    /// Diagram large enough to answer [`Self::ground_at`] for every coupling
    /// up to `kappa_max`.
    pub fn covering(n_atoms: usize, omega: f64, kappa_max: f64) -> Result<Self> {
        Self::build(n_atoms, omega, excitation_cap(n_atoms, kappa_max, omega))
    }

    pub fn p_max(&self) -> u64 {
        self.branches.len() as u64 - 1
    }

    pub fn critical(&self, j: u64) -> Option<f64> {
        self.criticals
            .get((j as usize).checked_sub(1)?)
            .map(|&(_, k)| k * self.omega)
    }

    pub fn branch(&self, p: u64) -> Option<&GroundBranch> {
        self.branches.get(p as usize)
    }

    pub fn energy(&self, kappa: f64, p: u64) -> Option<f64> {
        self.branch(p)
            .map(|b| branch_energy(self.n_atoms, self.omega, kappa, p, b.k_slope))
    }

    /// Ground excitation at κ: the number of critical couplings strictly
    /// below κ, so κ = κ_j itself stays in the lower window.
    pub fn ground_at(&self, kappa: f64) -> Result<(u64, &GroundBranch)> {
        let ratio = kappa / self.omega;
        let p = self.criticals.partition_point(|&(_, k)| k < ratio) as u64;
        if p >= self.p_max() {
            return Err(DickeError::CapExhausted {
                cap: self.p_max(),
                kappa,
            });
        }
        Ok((p, &self.branches[p as usize]))
    }
}
