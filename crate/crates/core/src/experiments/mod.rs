//! Reproduction recipes and batch experiments behind the `spherepts` CLI.
//! Every function here is deterministic given its arguments.

mod config;
mod ensemble;
mod figdata;
pub mod output;
mod scaling;
mod table1;

pub use config::{Calibration, Config};
pub use ensemble::{ensemble, EnsembleParams, EnsembleReport, EnsembleRow, EnsembleSummary, ShiftSum};
pub use figdata::{fig1, fig2, lambert_window, Fig1Data, Fig2Data, Patch};
pub use scaling::{scaling, ScalingParams, ScalingPoint, ScalingReport, ScalingTarget};
pub use table1::{table1, Table1Row, TABLE1_N};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_solutions_with, project_to_sphere, EnumerationLimits};
use crate::points::UnitPointSet;

/// Projected arithmetic set, or `NonRepresentable` when it is empty.
pub fn arithmetic_points(n: u64, dim: usize, limits: &EnumerationLimits) -> Result<UnitPointSet> {
    let s = enumerate_solutions_with(n, dim, limits)?;
    if s.is_empty() {
        return Err(Error::NonRepresentable { n, dim });
    }
    project_to_sphere(&s)
}
