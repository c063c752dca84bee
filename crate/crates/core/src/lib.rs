//! Exact ground states of the resonant single-mode Dicke model.
//!
//! The excitation number is conserved, so the symmetric sector splits into
//! tridiagonal blocks. This crate solves those blocks ([`subspace`],
//! [`eigen`]), tracks which block holds the ground state as the coupling
//! grows ([`phase`]), and measures its entanglement ([`entangle`]) and photon
//! statistics ([`fieldstats`]). [`oracle`] is a dense brute-force model used to
//! cross-check all of it for a handful of atoms.

pub mod eigen;
pub mod entangle;
pub mod error;
pub mod fieldstats;
pub mod oracle;
pub mod phase;
pub mod subspace;

pub use eigen::{full_spectrum, ground_eigenpair, GroundBranch};
pub use entangle::{CkwReport, EntanglementReport, TwoQubitDensity};
pub use error::{DickeError, Result};
pub use fieldstats::{photon_statistics, PhotonStats};
pub use phase::{critical_coupling, ground_excitation, PhaseDiagram};
pub use subspace::{build_block, ModelParams, SubspaceBlock};
