//! Numerical laboratory for first-passage metrics built on Gaussian free
//! fields, and for the finite-metric geometry of approximately equidistant
//! point sets.
//!
//! * [`gff`] samples fields and bump functions.
//! * [`lfpp`] turns a field into an exact lattice first-passage metric.
//! * [`analysis`] studies explicit finite metric spaces: cliques, covering
//!   numbers, doubling constants, Assouad exponents, snowflakes and
//!   quasisymmetric distortion.
//! * [`star`] runs the star-polygon clique construction and its Monte Carlo
//!   harness.
//! * [`io`] holds file formats.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod gff;
pub mod io;
pub mod lfpp;
pub mod region;
pub mod star;

pub use error::{LabError, Result};
pub use geometry::{GridGeometry, Point};
