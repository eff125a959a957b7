use std::f64::consts::PI;

use super::field::FieldGrid;
use crate::error::{LabError, Result};
use crate::geometry::{GridGeometry, Point};

/// Number of quadrature nodes used for a circle of radius `r`.
pub fn node_count(r: f64, spacing: f64) -> usize {
    ((8.0 * PI * r / spacing).ceil() as usize).max(64)
}

/// Bilinear interpolation of vertex values at `p`, which must lie in the
/// closed lattice square.
pub fn bilinear(geometry: &GridGeometry, values: &[f64], p: Point) -> f64 {
    let n = geometry.n;
    let d = (p - geometry.origin) / geometry.spacing;
    let fx = d.re.clamp(0.0, (n - 1) as f64);
    let fy = d.im.clamp(0.0, (n - 1) as f64);
    let c0 = (fx.floor() as usize).min(n - 2);
    let r0 = (fy.floor() as usize).min(n - 2);
    let tx = fx - c0 as f64;
    let ty = fy - r0 as f64;
    let v00 = values[geometry.index(r0, c0)];
    let v01 = values[geometry.index(r0, c0 + 1)];
    let v10 = values[geometry.index(r0 + 1, c0)];
    let v11 = values[geometry.index(r0 + 1, c0 + 1)];
    let lower = v00 + tx * (v01 - v00);
    let upper = v10 + tx * (v11 - v10);
    lower + ty * (upper - lower)
}

/// Mean of the bilinearly interpolated field over `max(64, ceil(8 pi r / h))`
/// equispaced points of the circle `|p - z| = r`.
pub fn circle_average(field: &FieldGrid, z: Point, r: f64) -> Result<f64> {
    let g = &field.geometry;
    if !(r.is_finite() && r > 0.0) {
        return Err(LabError::param(format!("circle radius must be positive, got {r}")));
    }
    let lo = Point::new(z.re - r, z.im - r);
    let hi = Point::new(z.re + r, z.im + r);
    if !g.contains(lo) || !g.contains(hi) {
        return Err(LabError::geometry(format!(
            "circle of radius {r} about ({}, {}) leaves the lattice square",
            z.re, z.im
        )));
    }
    let m = node_count(r, g.spacing);
    let node = |k: usize| {
        let theta = 2.0 * PI * k as f64 / m as f64;
        bilinear(g, &field.values, z + Point::from_polar(r, theta))
    };
    // accumulate deviations from the first node so constants come out exact
    let anchor = node(0);
    let deviation: f64 = (1..m).map(|k| node(k) - anchor).sum();
    Ok(anchor + deviation / m as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gff::sample::sample_zero_boundary;

    fn unit_grid(n: usize) -> GridGeometry {
        GridGeometry::new(n, 1.0 / (n - 1) as f64, Point::new(0.0, 0.0)).unwrap()
    }

    #[test]
    fn constant_field() {
        let f = FieldGrid::constant(unit_grid(33), 3.5);
        assert_eq!(circle_average(&f, Point::new(0.5, 0.5), 0.3).unwrap(), 3.5);
        let g = FieldGrid::constant(unit_grid(33), 0.1);
        let avg = circle_average(&g, Point::new(0.5, 0.5), 0.3).unwrap();
        assert_eq!(avg, 0.1);
    }

    #[test]
    fn linear_fields_are_reproduced() {
        // bilinear interpolation is exact on affine functions, whose circle
        // average is the value at the centre
        let geom = unit_grid(41);
        let values: Vec<f64> = (0..geom.len())
            .map(|i| {
                let p = geom.point(i);
                2.0 * p.re - 3.0 * p.im + 1.0
            })
            .collect();
        let f = FieldGrid::new(geom, values, super::super::FieldKind::ZeroBoundary, 0, 0).unwrap();
        let z = Point::new(0.4, 0.55);
        let avg = circle_average(&f, z, 0.35).unwrap();
        assert!((avg - (2.0 * 0.4 - 3.0 * 0.55 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn linearity() {
        let a = sample_zero_boundary(48, 20, 1).unwrap();
        let b = sample_zero_boundary(48, 20, 2).unwrap();
        let mut sum = a.clone();
        for (s, v) in sum.values.iter_mut().zip(&b.values) {
            *s += v;
        }
        let z = Point::new(0.45, 0.5);
        let lhs = circle_average(&sum, z, 0.3).unwrap();
        let rhs = circle_average(&a, z, 0.3).unwrap() + circle_average(&b, z, 0.3).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn circle_must_stay_inside() {
        let f = FieldGrid::constant(unit_grid(17), 0.0);
        assert!(matches!(
            circle_average(&f, Point::new(0.5, 0.5), 0.6),
            Err(LabError::Geometry(_))
        ));
        assert!(circle_average(&f, Point::new(0.5, 0.5), 0.5).is_ok());
    }

    #[test]
    fn node_count_floor() {
        assert_eq!(node_count(0.01, 0.1), 64);
        assert_eq!(node_count(1.0, 0.01), (800.0 * PI).ceil() as usize);
    }
}
