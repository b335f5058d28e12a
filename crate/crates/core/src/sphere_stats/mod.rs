//! Geometric statistics of configurations on the unit sphere. Distances are
//! Euclidean chords `|P − Q|` throughout.

pub mod cap;
pub mod covering;
pub mod discrepancy;
pub mod energy;
pub mod index;
mod report;
pub mod ripley;
pub mod spacing;

pub use cap::cap_fraction;
pub use covering::{
    covering_radius, covering_radius_with_budget, pole_annulus_gap, pole_annulus_gap_for,
    CoveringEstimate,
};
pub use discrepancy::cap_discrepancy;
pub use energy::energy;
pub use report::{compute_report, StatsOptions, StatsReport};
pub use ripley::{ripley, RipleyProfile};
pub use spacing::{
    ks_distance, ks_exponential, min_spacing, nn_distances, nn_distances_brute, spacing_measure,
    spacing_measure_with, Histogram, HistogramSpec, SpacingMeasure,
};
