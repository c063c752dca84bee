//! Brute-force dense model of `N` atoms and one truncated field mode.
//!
//! Used only to validate the block pipeline. Basis ordering is atom bitstring
//! major, Fock number minor: index `= bits·(n_c + 1) + n`, where atom 0 is the
//! most significant bit and a set bit means the atom is excited.

mod suite;

pub use suite::{run_suite, CheckOutcome, SuiteReport};

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{DickeError, Result};
use crate::subspace::ModelParams;

pub const MAX_ORACLE_ATOMS: usize = 6;
pub const MAX_ORACLE_CUTOFF: usize = 64;
/// Ground-state weight allowed on the two highest Fock levels.
pub const CUTOFF_WEIGHT_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct DenseModel {
    pub params: ModelParams,
    pub photon_cutoff: usize,
    pub hamiltonian: DMatrix<f64>,
    pub p_operator: DMatrix<f64>,
}

#[derive(Debug, Clone)]
pub struct DenseGround {
    pub energy: f64,
    pub state: DVector<f64>,
}

/// Which factors to keep in a partial trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystems {
    /// Kept atoms, in the order they appear in the reduced basis.
    pub atoms: Vec<usize>,
    pub field: bool,
}

impl Subsystems {
    pub fn atoms(atoms: &[usize]) -> Self {
        Self {
            atoms: atoms.to_vec(),
            field: false,
        }
    }

    pub fn field() -> Self {
        Self {
            atoms: Vec::new(),
            field: true,
        }
    }
}

pub fn build_dense(params: &ModelParams, photon_cutoff: usize) -> Result<DenseModel> {
    params.validate()?;
    let n = params.n_atoms;
    if n > MAX_ORACLE_ATOMS {
        return Err(DickeError::OracleLimit(format!(
            "at most {MAX_ORACLE_ATOMS} atoms, got {n}"
        )));
    }
    if photon_cutoff == 0 || photon_cutoff > MAX_ORACLE_CUTOFF {
        return Err(DickeError::OracleLimit(format!(
            "photon cutoff must lie in 1..={MAX_ORACLE_CUTOFF}, got {photon_cutoff}"
        )));
    }
    let levels = photon_cutoff + 1;
    let dim = (1usize << n) * levels;
    let omega = params.omega;
    let mut h = DMatrix::zeros(dim, dim);
    let mut pop = DMatrix::zeros(dim, dim);
    for bits in 0..1usize << n {
        let excited = bits.count_ones() as usize;
        for photons in 0..levels {
            let i = bits * levels + photons;
            h[(i, i)] = omega * (excited as f64 - 0.5 * n as f64) + omega * photons as f64;
            pop[(i, i)] = (excited + photons) as f64;
            if photons == photon_cutoff {
                continue;
            }
            // a† σ_j⁻ : de-excite atom j, add a photon
            let amp = params.kappa * ((photons + 1) as f64).sqrt();
            for j in 0..n {
                let mask = 1usize << (n - 1 - j);
                if bits & mask != 0 {
                    let k = (bits ^ mask) * levels + photons + 1;
                    h[(k, i)] += amp;
                    h[(i, k)] += amp;
                }
            }
        }
    }
    Ok(DenseModel {
        params: *params,
        photon_cutoff,
        hamiltonian: h,
        p_operator: pop,
    })
}

fn norm_inf(m: &DMatrix<f64>) -> f64 {
    m.row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl DenseModel {
    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    fn levels(&self) -> usize {
        self.photon_cutoff + 1
    }

    /// `(‖[H, P]‖∞, ‖H‖∞)`.
    pub fn commutator_norm(&self) -> (f64, f64) {
        let c = &self.hamiltonian * &self.p_operator - &self.p_operator * &self.hamiltonian;
        (norm_inf(&c), norm_inf(&self.hamiltonian))
    }

    /// Lowest eigenpair by a dense symmetric solve. The state is normalized
    /// and its largest-magnitude component is positive.
    pub fn dense_ground(&self) -> Result<DenseGround> {
        let eig = SymmetricEigen::new(self.hamiltonian.clone());
        let k = eig.eigenvalues.imin();
        let energy = eig.eigenvalues[k];
        let mut state = eig.eigenvectors.column(k).into_owned();
        let lead = state.iamax();
        if state[lead] < 0.0 {
            state.neg_mut();
        }
        state.normalize_mut();

        let levels = self.levels();
        let top = self.photon_cutoff - 1;
        let weight: f64 = state
            .iter()
            .enumerate()
            .filter(|(i, _)| i % levels >= top)
            .map(|(_, a)| a * a)
            .sum();
        if weight > CUTOFF_WEIGHT_TOL {
            return Err(DickeError::CutoffTooSmall {
                cutoff: self.photon_cutoff,
                weight,
            });
        }
        Ok(DenseGround { energy, state })
    }

    /// `(⟨P⟩, Var P)` in `state`.
    pub fn excitation_moments(&self, state: &DVector<f64>) -> (f64, f64) {
        let pv = &self.p_operator * state;
        let mean = state.dot(&pv);
        let second = pv.dot(&pv);
        (mean, (second - mean * mean).max(0.0))
    }

    /// Reduced density matrix of `state` over the selected factors.
    ///
    /// The reduced basis orders kept atoms as listed (first is most
    /// significant), followed by the field if kept.
    pub fn dense_partial_trace(
        &self,
        state: &DVector<f64>,
        keep: &Subsystems,
    ) -> Result<DMatrix<f64>> {
        let n = self.params.n_atoms;
        if state.len() != self.dim() {
            return Err(DickeError::InvalidSelector(format!(
                "state has length {}, model dimension is {}",
                state.len(),
                self.dim()
            )));
        }
        let mut seen = vec![false; n];
        for &a in &keep.atoms {
            if a >= n || seen[a] {
                return Err(DickeError::InvalidSelector(format!(
                    "atom index {a} is out of range or repeated"
                )));
            }
            seen[a] = true;
        }
        let traced: Vec<usize> = (0..n).filter(|a| !seen[*a]).collect();
        let levels = self.levels();
        let field_kept = if keep.field { levels } else { 1 };
        let field_traced = if keep.field { 1 } else { levels };
        let kept_dim = (1usize << keep.atoms.len()) * field_kept;
        let traced_dim = (1usize << traced.len()) * field_traced;

        let bit = |bits: usize, atom: usize| (bits >> (n - 1 - atom)) & 1;
        let mut m = DMatrix::zeros(kept_dim, traced_dim);
        for (idx, &amp) in state.iter().enumerate() {
            let bits = idx / levels;
            let photons = idx % levels;
            let mut kept = keep
                .atoms
                .iter()
                .fold(0, |acc, &a| (acc << 1) | bit(bits, a));
            let mut rest = traced.iter().fold(0, |acc, &a| (acc << 1) | bit(bits, a));
            if keep.field {
                kept = kept * levels + photons;
            } else {
                rest = rest * levels + photons;
            }
            m[(kept, rest)] = amp;
        }
        Ok(&m * m.transpose())
    }

    /// Unit vector `|D_s⟩ ⊗ |photons⟩` in the dense basis.
    pub fn dicke_vector(&self, s: usize, photons: usize) -> DVector<f64> {
        let n = self.params.n_atoms;
        let levels = self.levels();
        let mut v = DVector::zeros(self.dim());
        let count = (0..1usize << n)
            .filter(|b| b.count_ones() as usize == s)
            .count();
        let amp = (count as f64).sqrt().recip();
        for bits in (0..1usize << n).filter(|b| b.count_ones() as usize == s) {
            v[bits * levels + photons] = amp;
        }
        v
    }

    /// Matrix of the Hamiltonian in the symmetric basis `|D_s⟩|p − s⟩` of
    /// block `p`. Exact only while `p ≤ n_c`.
    pub fn project_block(&self, p: usize) -> Result<DMatrix<f64>> {
        if p > self.photon_cutoff {
            return Err(DickeError::OracleLimit(format!(
                "block p={p} is truncated by cutoff {}",
                self.photon_cutoff
            )));
        }
        let dim = p.min(self.params.n_atoms) + 1;
        let basis: Vec<DVector<f64>> = (0..dim).map(|s| self.dicke_vector(s, p - s)).collect();
        let hv: Vec<DVector<f64>> = basis.iter().map(|v| &self.hamiltonian * v).collect();
        Ok(DMatrix::from_fn(dim, dim, |i, j| basis[i].dot(&hv[j])))
    }
}

/// `−Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy(rho: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(rho.clone())
        .eigenvalues
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.ln())
        .sum()
}
