//! Excitation-number blocks of the resonant Dicke Hamiltonian.
//!
//! The total excitation number `P = a†a + Σ σ⁺σ⁻` commutes with the
//! rotating-wave Hamiltonian, so the permutation-symmetric sector splits into
//! blocks labelled by `p`. Block `p` is spanned by `|D_s⟩ ⊗ |p − s⟩` for
//! `s = 0..=min(p, N)`, where `|D_s⟩` is the symmetric Dicke state with `s`
//! excited atoms. In that basis the block is
//!
//! ```text
//! H(p) = (p − N/2)·ω·I + κ·T(p)
//! ```
//!
//! with `T(p)` symmetric tridiagonal, zero diagonal and off-diagonal
//! `t_s = sqrt((s+1)(N−s)(p−s))`.

use crate::error::{DickeError, Result};

/// Largest supported atom count.
pub const MAX_ATOMS: usize = 1_000_000;
/// Largest supported excitation number.
pub const MAX_EXCITATIONS: u64 = 1_000_000_000_000;

/// Physical parameters of the resonant model, in units with ħ = 1.
///
/// A single `omega` stands for both the atomic and the field frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n_atoms: usize,
    pub omega: f64,
    pub kappa: f64,
}

impl ModelParams {
    pub fn new(n_atoms: usize, omega: f64, kappa: f64) -> Result<Self> {
        let params = Self {
            n_atoms,
            omega,
            kappa,
        };
        params.validate()?;
        Ok(params)
    }

    /// Same atoms and frequency, different coupling.
    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        Self::new(self.n_atoms, self.omega, kappa)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_atoms < 1 || self.n_atoms > MAX_ATOMS {
            return Err(DickeError::InvalidParams(format!(
                "atom count must lie in 1..={MAX_ATOMS}, got {}",
                self.n_atoms
            )));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(DickeError::InvalidParams(format!(
                "omega must be positive and finite, got {}",
                self.omega
            )));
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(DickeError::InvalidParams(format!(
                "kappa must be non-negative and finite, got {}",
                self.kappa
            )));
        }
        Ok(())
    }
}

/// Label of one basis vector inside a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub atoms_excited: usize,
    pub photons: u64,
}

/// The excitation-number-`p` block, stored as `e0·I + κ·T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBlock {
    pub p: u64,
    pub n_atoms: usize,
    pub dim: usize,
    /// Constant diagonal `(p − N/2)·ω`.
    pub e0: f64,
    /// Off-diagonal of `T`, dimensionless; multiply by κ.
    pub offdiag: Vec<f64>,
}

pub fn block_dim(n_atoms: usize, p: u64) -> usize {
    // p may exceed usize on 32-bit targets only beyond MAX_EXCITATIONS
    (p.min(n_atoms as u64) as usize) + 1
}

/// Builds block `p` for the given atoms and frequency. `params.kappa` is not
/// used: the coupling enters only through [`SubspaceBlock::matrix`].
pub fn build_block(params: &ModelParams, p: u64) -> Result<SubspaceBlock> {
    params.validate()?;
    if p > MAX_EXCITATIONS {
        return Err(DickeError::InvalidParams(format!(
            "excitation number must be at most {MAX_EXCITATIONS}, got {p}"
        )));
    }
    let n = params.n_atoms;
    let dim = block_dim(n, p);
    let nf = n as f64;
    let pf = p as f64;
    let offdiag = (0..dim - 1)
        .map(|s| {
            let s = s as f64;
            ((s + 1.0) * (nf - s) * (pf - s)).sqrt()
        })
        .collect();
    Ok(SubspaceBlock {
        p,
        n_atoms: n,
        dim,
        e0: (pf - 0.5 * nf) * params.omega,
        offdiag,
    })
}

/// Maps basis index `s` of block `p` to its atom/photon content.
pub fn excitation_number_of(s: usize, p: u64, n_atoms: usize) -> Result<BasisLabel> {
    let dim = block_dim(n_atoms, p);
    if s >= dim {
        return Err(DickeError::BasisIndexOutOfRange { index: s, p, dim });
    }
    Ok(BasisLabel {
        atoms_excited: s,
        photons: p - s as u64,
    })
}

impl SubspaceBlock {
    pub fn label(&self, s: usize) -> Result<BasisLabel> {
        excitation_number_of(s, self.p, self.n_atoms)
    }

    /// Dense copy of `T(p)`, row-major.
    pub fn coupling_matrix(&self) -> Vec<Vec<f64>> {
        let mut t = vec![vec![0.0; self.dim]; self.dim];
        for (s, &v) in self.offdiag.iter().enumerate() {
            t[s][s + 1] = v;
            t[s + 1][s] = v;
        }
        t
    }

    /// Dense copy of the full block `e0·I + κ·T(p)`.
    pub fn matrix(&self, kappa: f64) -> Vec<Vec<f64>> {
        let mut h = self.coupling_matrix();
        for (i, row) in h.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v *= kappa;
            }
            row[i] = self.e0;
        }
        h
    }
}
