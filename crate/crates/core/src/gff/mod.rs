//! Discrete Gaussian free fields, circle averages and bump functions.

mod bump;
mod circle;
mod field;
mod params;
mod sample;

pub use bump::{add_function, make_bump, profile, smoothstep, BumpField, LatticeFunction};
pub use circle::{bilinear, circle_average, node_count};
pub use field::{FieldGrid, FieldKind, Modification};
pub use params::{make_params, LqgParams};
pub use sample::{
    dirichlet_norm, sample_whole_plane_proxy, sample_zero_boundary, series_coefficients,
    truncated_covariance, truncated_variance, DEFAULT_PAD_FACTOR, PROXY_WINDOW_SIDE,
};
