use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DickeError {
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("basis index {index} out of range for block p={p} (dim {dim})")]
    BasisIndexOutOfRange { index: usize, p: u64, dim: usize },

    #[error("eigensolver failed to converge: {0}")]
    NoConvergence(String),

    #[error("branches p={} and p={j} have indistinguishable slopes (gap {gap:e})", j - 1)]
    DegenerateBranches { j: u64, gap: f64 },

    #[error("no closed form available: {0}")]
    Unsupported(String),

    #[error("excitation cap p={cap} exhausted at kappa={kappa}")]
    CapExhausted { cap: u64, kappa: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("operation needs the single-excitation branch, got p={0}")]
    NotSingleExcitation(u64),

    #[error("dense oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("photon cutoff {cutoff} too small: ground-state weight {weight:e} on the top two Fock levels")]
    CutoffTooSmall { cutoff: usize, weight: f64 },

    #[error("invalid subsystem selector: {0}")]
    InvalidSelector(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, DickeError>;
