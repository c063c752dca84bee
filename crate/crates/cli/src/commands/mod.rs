mod ckw;
mod critical;
mod oracle;
mod scan;
mod surface;
mod table1;

pub use ckw::{ckw, CkwArgs};
pub use critical::{critical, CriticalArgs};
pub use oracle::{oracle_check, OracleArgs};
pub use scan::{scan, ScanArgs};
pub use surface::{tau_surface, SurfaceArgs};
pub use table1::{table1, Table1Args};

use crate::CliError;

fn require(ok: bool, msg: impl Into<String>) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Usage(msg.into()))
    }
}

fn check_omega(omega: f64) -> Result<(), CliError> {
    require(
        omega.is_finite() && omega > 0.0,
        format!("--omega must be positive and finite, got {omega}"),
    )
}
