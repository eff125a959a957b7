//! Square lattices embedded in the complex plane.
//!
//! Vertices are stored row-major starting from the lower-left corner
//! (`origin`): row `i` sits at height `origin.im + i * spacing`, column `j`
//! at abscissa `origin.re + j * spacing`.

use num_complex::Complex64;

use crate::error::{LabError, Result};

/// A point of the plane.
pub type Point = Complex64;

/// Geometry of an `n x n` vertex lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridGeometry {
    pub n: usize,
    pub spacing: f64,
    pub origin: Point,
}

impl GridGeometry {
    pub fn new(n: usize, spacing: f64, origin: Point) -> Result<Self> {
        if n < 2 {
            return Err(LabError::param(format!("lattice side must be >= 2, got {n}")));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(LabError::param(format!("spacing must be positive, got {spacing}")));
        }
        if !(origin.re.is_finite() && origin.im.is_finite()) {
            return Err(LabError::param("origin must be finite"));
        }
        Ok(Self { n, spacing, origin })
    }

    /// Lattice with `n` vertices per side covering the square of side
    /// `side` centred at `center`.
    pub fn centered(n: usize, side: f64, center: Point) -> Result<Self> {
        if n < 2 {
            return Err(LabError::param(format!("lattice side must be >= 2, got {n}")));
        }
        let half = side / 2.0;
        Self::new(n, side / (n - 1) as f64, center - Point::new(half, half))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.n + col
    }

    #[inline]
    pub fn row_col(&self, idx: usize) -> (usize, usize) {
        (idx / self.n, idx % self.n)
    }

    /// Euclidean side length of the covered square.
    pub fn side(&self) -> f64 {
        (self.n - 1) as f64 * self.spacing
    }

    pub fn center(&self) -> Point {
        let half = self.side() / 2.0;
        self.origin + Point::new(half, half)
    }

    #[inline]
    pub fn point(&self, idx: usize) -> Point {
        let (row, col) = self.row_col(idx);
        self.origin + Point::new(col as f64 * self.spacing, row as f64 * self.spacing)
    }

    /// Whether `p` lies in the closed square covered by the lattice.
    pub fn contains(&self, p: Point) -> bool {
        let tol = 1e-9 * self.spacing;
        let hi = self.side();
        let d = p - self.origin;
        d.re >= -tol && d.im >= -tol && d.re <= hi + tol && d.im <= hi + tol
    }

    /// Vertex nearest to `p`, or `None` if `p` is outside the lattice square.
    pub fn nearest(&self, p: Point) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let d = (p - self.origin) / self.spacing;
        let col = (d.re.round().max(0.0) as usize).min(self.n - 1);
        let row = (d.im.round().max(0.0) as usize).min(self.n - 1);
        Some(self.index(row, col))
    }

    /// Vertices on the outermost ring of the lattice.
    pub fn is_boundary(&self, idx: usize) -> bool {
        let (row, col) = self.row_col(idx);
        row == 0 || col == 0 || row == self.n - 1 || col == self.n - 1
    }

    /// Vertices whose distance to `z` lies in `[rho - sqrt(2) spacing, rho]`.
    /// No lattice step is longer than the thickness, so every path from
    /// outside the closed disc into it passes through the ring.
    pub fn ring(&self, z: Point, rho: f64) -> Vec<usize> {
        let lo = rho - std::f64::consts::SQRT_2 * self.spacing;
        self.select(|p| {
            let d = (p - z).norm();
            d >= lo && d <= rho
        })
    }

    /// Vertices of the closed Euclidean disc `|p - z| <= rho`.
    pub fn closed_disc(&self, z: Point, rho: f64) -> Vec<usize> {
        self.select(|p| (p - z).norm() <= rho)
    }

    /// All vertices whose position satisfies `pred`, in index order.
    pub fn select(&self, mut pred: impl FnMut(Point) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(self.point(i))).collect()
    }

    pub fn same_as(&self, other: &GridGeometry) -> bool {
        self.n == other.n && self.spacing == other.spacing && self.origin == other.origin
    }
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Orthogonal projection of `p` onto the segment `[a, b]`.
pub fn project_onto_segment(p: Point, a: Point, b: Point) -> Point {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return a;
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    a + ab * t
}
