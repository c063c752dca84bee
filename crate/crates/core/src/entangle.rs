//! Pairwise atomic concurrence, atom–field entropy and monogamy checks for a
//! ground branch.
//!
//! Tracing the field out of `Σ_s A_s |D_s⟩|p−s⟩` leaves the diagonal Dicke
//! mixture `Σ_s |A_s|² |D_s⟩⟨D_s|`, because the Fock states `|p−s⟩` are
//! mutually orthogonal. Everything atomic follows from those weights.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::eigen::{ground_eigenpair, GroundBranch};
use crate::error::{DickeError, Result};
use crate::subspace::{build_block, ModelParams};

const TRACE_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Two-qubit density matrix in the ordered basis `{gg, ge, eg, ee}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity(Matrix4<f64>);

impl TwoQubitDensity {
    /// Checks symmetry and unit trace. Positivity is checked by
    /// [`concurrence`], which needs the spectrum anyway.
    pub fn new(rho: Matrix4<f64>) -> Result<Self> {
        let asym = (rho - rho.transpose()).abs().max();
        if asym > SYMMETRY_TOL {
            return Err(DickeError::InvalidDensity(format!(
                "matrix is not symmetric (max deviation {asym:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(DickeError::InvalidDensity(format!("trace is {tr}")));
        }
        Ok(Self(rho))
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    /// Pure state `Σ c_i |i⟩` with real coefficients.
    pub fn from_pure(c: [f64; 4]) -> Result<Self> {
        Self::new(Matrix4::from_fn(|i, j| c[i] * c[j]))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// Whether the only nonzero off-diagonal entries couple ge ↔ eg.
    pub fn is_x_form(&self, tol: f64) -> bool {
        (0..4).all(|i| {
            (0..4)
                .all(|j| i == j || matches!((i, j), (1, 2) | (2, 1)) || self.0[(i, j)].abs() <= tol)
        })
    }
}

/// `σ^y ⊗ σ^y` in the computational basis; real because `i·i = −1`.
pub fn spin_flip() -> Matrix4<f64> {
    let mut s = Matrix4::zeros();
    s[(0, 3)] = -1.0;
    s[(3, 0)] = -1.0;
    s[(1, 2)] = 1.0;
    s[(2, 1)] = 1.0;
    s
}

/// Probability of each Dicke component, `|A_s|²`.
pub fn dicke_weights(branch: &GroundBranch) -> Vec<f64> {
    branch.amplitudes.iter().map(|a| a * a).collect()
}

/// Reduced state of any two atoms for the mixture `Σ_s w_s |D_s⟩⟨D_s|`.
pub fn two_atom_rdm(weights: &[f64], n_atoms: usize) -> Result<TwoQubitDensity> {
    if n_atoms < 2 {
        return Err(DickeError::InvalidParams(format!(
            "a pair of atoms needs N >= 2, got {n_atoms}"
        )));
    }
    if weights.len() > n_atoms + 1 {
        return Err(DickeError::InvalidParams(format!(
            "{} weights for {n_atoms} atoms",
            weights.len()
        )));
    }
    let n = n_atoms as f64;
    let pairs = n * (n - 1.0);
    let (mut gg, mut mixed, mut ee) = (0.0, 0.0, 0.0);
    for (s, &w) in weights.iter().enumerate() {
        let s = s as f64;
        gg += w * (n - s) * (n - s - 1.0);
        mixed += w * s * (n - s);
        ee += w * s * (s - 1.0);
    }
    let (gg, mixed, ee) = (gg / pairs, mixed / pairs, ee / pairs);
    let mut rho = Matrix4::zeros();
    rho[(0, 0)] = gg;
    rho[(1, 1)] = mixed;
    rho[(2, 2)] = mixed;
    rho[(1, 2)] = mixed;
    rho[(2, 1)] = mixed;
    rho[(3, 3)] = ee;
    TwoQubitDensity::new(rho)
}

/// Wootters concurrence.
///
/// The λ_i (square roots of the eigenvalues of `ρ ρ̃`) are the singular
/// values of `Ψᵀ (σ^y⊗σ^y) Ψ` where `ρ = Ψ Ψᵀ`; that matrix is symmetric, so
/// they are the absolute values of its eigenvalues. Working with `Ψ` avoids
/// taking square roots of round-off sized eigenvalues of `ρ ρ̃`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let eig = SymmetricEigen::new(rho.0);
    let min = eig.eigenvalues.min();
    if min < -PSD_TOL {
        return Err(DickeError::InvalidDensity(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    let mut psi = eig.eigenvectors;
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        let scale = ev.max(0.0).sqrt();
        psi.column_mut(k).scale_mut(scale);
    }
    let tau = psi.transpose() * spin_flip() * psi;
    let tau = 0.5 * (tau + tau.transpose());
    let mut lambdas: Vec<f64> = SymmetricEigen::new(tau)
        .eigenvalues
        .iter()
        .map(|v| v.abs())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok(c.clamp(0.0, 1.0))
}

/// Closed-form pair concurrence for `p = 0, 1, 2`.
pub fn closed_form_concurrence(n_atoms: usize, p: u64) -> Result<f64> {
    if n_atoms < 2 {
        return Err(DickeError::InvalidParams(format!(
            "a pair of atoms needs N >= 2, got {n_atoms}"
        )));
    }
    let n = n_atoms as f64;
    match p {
        0 => Ok(0.0),
        1 => Ok(1.0 / n),
        2 => Ok(
            (4.0 * n - 5.0 - 2.0 * (2.0 * n * n - 5.0 * n + 4.0).sqrt()) / (n * (2.0 * n - 1.0))
        ),
        _ => Err(DickeError::Unsupported(format!(
            "closed-form concurrence only for p in 0..=2, got {p}"
        ))),
    }
}

/// Total pairwise entanglement `C² N(N−1)/2`.
pub fn tau_atoms(concurrence: f64, n_atoms: usize) -> f64 {
    let n = n_atoms as f64;
    concurrence * concurrence * n * (n - 1.0) / 2.0
}

/// Von Neumann entropy (nats) of the atomic state, i.e. the Shannon entropy
/// of the Dicke weights. Equals the field entropy for the pure joint state.
pub fn atom_field_entropy(weights: &[f64]) -> f64 {
    weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| -w * w.ln())
        .sum::<f64>()
        .max(0.0)
}

/// Per-qubit monogamy balance `τ_j` vs `Σ_k C²_{jk}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMonogamy {
    pub tangle: f64,
    pub sum_sq_concurrence: f64,
}

impl QubitMonogamy {
    pub fn residual(&self) -> f64 {
        self.tangle - self.sum_sq_concurrence
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkwReport {
    pub n_atoms: usize,
    pub field: QubitMonogamy,
    pub atom: QubitMonogamy,
    pub concurrence_field_atom: f64,
    pub concurrence_atom_atom: f64,
}

/// Field ⊗ one-atom reduced state of the single-excitation ground state,
/// in the basis `{g0, g1, e0, e1}` (atom first, field photon number second).
///
/// With `|Ξ⟩ = A₀|G⟩|1⟩ + A₁|D₁⟩|0⟩`, atom `j` and the field share the pure
/// part `A₀|g,1⟩ + (A₁/√N)|e,0⟩`, and the remaining atoms' `|W⟩` component
/// contributes `A₁²(N−1)/N · |g,0⟩⟨g,0|`.
pub fn field_atom_rdm_p1(branch: &GroundBranch) -> Result<TwoQubitDensity> {
    if branch.p != 1 {
        return Err(DickeError::NotSingleExcitation(branch.p));
    }
    let n = branch.n_atoms as f64;
    let (a0, a1) = (branch.amplitudes[0], branch.amplitudes[1]);
    let mut phi = [0.0; 4];
    phi[1] = a0;
    phi[2] = a1 / n.sqrt();
    let mut rho = Matrix4::from_fn(|i, j| phi[i] * phi[j]);
    rho[(0, 0)] += a1 * a1 * (n - 1.0) / n;
    TwoQubitDensity::new(rho)
}

/// Monogamy check for a single-excitation branch, treating the field as
/// the qubit spanned by `|0⟩, |1⟩`.
pub fn ckw_report(branch: &GroundBranch) -> Result<CkwReport> {
    if branch.p != 1 {
        return Err(DickeError::NotSingleExcitation(branch.p));
    }
    let n_atoms = branch.n_atoms;
    let n = n_atoms as f64;
    let w = dicke_weights(branch);

    // field: ρ_F = diag(|A₀|², |A₁|²) over {|1⟩, |0⟩}
    let field_tangle = 4.0 * w[0] * w[1];
    let c_fa = concurrence(&field_atom_rdm_p1(branch)?)?;
    let c_aa = if n_atoms >= 2 {
        concurrence(&two_atom_rdm(&w, n_atoms)?)?
    } else {
        0.0
    };

    // one atom: excited with probability |A₁|²/N
    let pe = w[1] / n;
    let atom_tangle = 4.0 * (1.0 - pe) * pe;

    Ok(CkwReport {
        n_atoms,
        field: QubitMonogamy {
            tangle: field_tangle,
            sum_sq_concurrence: n * c_fa * c_fa,
        },
        atom: QubitMonogamy {
            tangle: atom_tangle,
            sum_sq_concurrence: (n - 1.0) * c_aa * c_aa + c_fa * c_fa,
        },
        concurrence_field_atom: c_fa,
        concurrence_atom_atom: c_aa,
    })
}

/// [`ckw_report`] on the single-excitation ground branch of `n_atoms` atoms.
pub fn ckw_report_p1(n_atoms: usize) -> Result<CkwReport> {
    if n_atoms < 2 {
        return Err(DickeError::InvalidParams(format!(
            "monogamy report needs N >= 2, got {n_atoms}"
        )));
    }
    let params = ModelParams::new(n_atoms, 1.0, 0.0)?;
    ckw_report(&ground_eigenpair(&build_block(&params, 1)?)?)
}

/// Entanglement summary of one ground branch.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub tau_a: f64,
    pub entropy_nats: f64,
    /// Present only for the single-excitation branch.
    pub ckw: Option<CkwReport>,
}

impl EntanglementReport {
    /// With a single atom there are no pairs, so concurrence and `τ_A` are 0.
    pub fn from_branch(branch: &GroundBranch) -> Result<Self> {
        let w = dicke_weights(branch);
        let n = branch.n_atoms;
        let concurrence = if n >= 2 {
            concurrence(&two_atom_rdm(&w, n)?)?
        } else {
            0.0
        };
        let ckw = if branch.p == 1 && n >= 2 {
            Some(ckw_report(branch)?)
        } else {
            None
        };
        Ok(Self {
            concurrence,
            tau_a: tau_atoms(concurrence, n),
            entropy_nats: atom_field_entropy(&w),
            ckw,
        })
    }

    pub fn entropy_bits(&self) -> f64 {
        self.entropy_nats / std::f64::consts::LN_2
    }
}
