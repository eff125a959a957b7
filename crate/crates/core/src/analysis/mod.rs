//! Geometry of explicit finite metric spaces.

mod clique;
mod covering;
mod distortion;
mod metric;
mod snowflake;

pub use clique::{
    best_exact, clique_ratio, find_clique, ramsey_refine, refine_iterated, CliqueReport,
    EXACT_SEARCH_MAX,
};
pub use covering::{
    assouad_estimate, auto_scales, clique_from_cover, covering_number, doubling_constant, greedy_cover,
    open_ball, spread_centers, AssouadEstimate, ScaleRow,
};
pub use distortion::{
    empirical_modulus, qs_distortion_profile, DistortionBin, DistortionProfile, BINS_PER_DECADE,
    DECADES,
};
pub use metric::{FiniteMetric, FULL_TRIANGLE_CHECK_MAX, TRIANGLE_TOL};
pub use snowflake::snowflake;
