//! Integer points on spheres `x_1² + … + x_t² = n` and the local statistics
//! of their projections to the unit sphere, compared with random and rigid
//! configurations.

pub mod baselines;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod numtheory;
pub mod points;
pub mod sphere_stats;

pub use error::{Error, Result};
pub use points::{Provenance, UnitPointSet};
