//! 16-bit binary PGM (`P5`, maxval 65535) rasters, min-max scaled over the
//! finite values; non-finite values map to white. The top image row is the
//! lattice row farthest from the origin.

use std::io::Write;

use crate::error::{LabError, Result};

pub fn write_pgm16(mut w: impl Write, n: usize, values: &[f64]) -> Result<()> {
    if values.len() != n * n || n == 0 {
        return Err(LabError::Shape(format!("{} values for a {n}x{n} raster", values.len())));
    }
    let finite = values.iter().copied().filter(|v| v.is_finite());
    let lo = finite.clone().fold(f64::INFINITY, f64::min);
    let hi = finite.fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let mut buf = format!("P5\n{n} {n}\n65535\n").into_bytes();
    buf.reserve(2 * n * n);
    for row in (0..n).rev() {
        for &v in &values[row * n..(row + 1) * n] {
            let level = if !v.is_finite() {
                u16::MAX
            } else if span > 0.0 {
                ((v - lo) / span * 65535.0).round() as u16
            } else {
                0
            };
            buf.extend_from_slice(&level.to_be_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}
