//! Star-polygon clique construction: bumps, events, located points and
//! the scan over nested annuli.

mod config;
mod events;
mod layout;
mod polygon;
mod runner;
mod stats;
mod trial;

pub use config::{fmt_f64, StarConfig};
pub use events::{
    evaluate_events, farthest_from, locate_star_points, separated_infimum, EventFlags, EventMeasures,
    StarPoints,
};
pub use layout::{min_grid_n, StarLayout, HALF_SIDE, MAX_SEARCH_N};
pub use polygon::{boundary_gap, zeta_of_epsilon, StarPolygon};
pub use runner::{
    annulus_scan, annulus_scan_with, calibrate, calibrate_with, monte_carlo, monte_carlo_with, scan_center,
    scan_many, with_workers, Calibration, FrequencyTable, MonteCarlo, ScanReport, AMPLITUDE_MARGIN, RATIO_BIN,
    RATIO_BINS,
};
pub use stats::{difference_interval, percentile, wilson_interval, Z90, Z95};
pub use trial::{
    modified_field, run_trial, sample_canonical, star_trial, star_trial_with, trial_maps, trial_metric, trial_seed,
    TrialResult,
};

/// `build_star` under its conventional name.
pub fn build_star(config: &StarConfig) -> StarPolygon {
    StarPolygon::new(config.n_arms, config.z0, config.r)
}
