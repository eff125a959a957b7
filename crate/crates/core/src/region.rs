//! Planar regions described by signed distance functions.
//!
//! Composite regions (differences, intersections) use the usual CSG
//! combination `max(sd_a, -sd_b)`, which is exact inside the region and a
//! lower bound on the true distance outside it. Bump profiles only need
//! the zero set and continuity, both of which survive the combination.

use crate::geometry::{point_segment_distance, Point};

/// A simple closed polygon given by its vertices in boundary order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Closed-set membership: boundary points count as inside.
    pub fn contains(&self, p: Point) -> bool {
        self.on_boundary(p) || self.winding_number(p) != 0
    }

    /// Open interior.
    pub fn contains_strict(&self, p: Point) -> bool {
        !self.on_boundary(p) && self.winding_number(p) != 0
    }

    fn on_boundary(&self, p: Point) -> bool {
        self.edges().any(|(a, b)| {
            let cross = (b - a).conj() * (p - a);
            cross.im == 0.0
                && p.re >= a.re.min(b.re)
                && p.re <= a.re.max(b.re)
                && p.im >= a.im.min(b.im)
                && p.im <= a.im.max(b.im)
        })
    }

    fn winding_number(&self, p: Point) -> i32 {
        let mut wn = 0;
        for (a, b) in self.edges() {
            let side = ((b - a).conj() * (p - a)).im;
            if a.im <= p.im {
                if b.im > p.im && side > 0.0 {
                    wn += 1;
                }
            } else if b.im <= p.im && side < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    /// Euclidean distance from `p` to the polygon boundary.
    pub fn boundary_distance(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Negative inside, positive outside, zero on the boundary.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let d = self.boundary_distance(p);
        if self.winding_number(p) != 0 {
            -d
        } else {
            d
        }
    }

    /// Homothety about `center` with ratio `factor`.
    pub fn scaled_about(&self, center: Point, factor: f64) -> Polygon {
        Polygon::new(self.vertices.iter().map(|&v| center + (v - center) * factor).collect())
    }
}

/// A planar region.
#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Disk { center: Point, radius: f64 },
    Polygon(Polygon),
    Complement(Box<Region>),
    Intersection(Vec<Region>),
}

impl Region {
    pub fn disk(center: Point, radius: f64) -> Self {
        Region::Disk { center, radius }
    }

    /// `self \ other`.
    pub fn minus(self, other: Region) -> Self {
        Region::Intersection(vec![self, Region::Complement(Box::new(other))])
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        match self {
            Region::Disk { center, radius } => (p - center).norm() - radius,
            Region::Polygon(poly) => poly.signed_distance(p),
            Region::Complement(inner) => -inner.signed_distance(p),
            Region::Intersection(parts) => parts
                .iter()
                .map(|r| r.signed_distance(p))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// Closed-set membership.
    pub fn contains(&self, p: Point) -> bool {
        self.signed_distance(p) <= 0.0
    }

    /// Width of the gap between `self` and the complement of `outer`, when it
    /// can be computed in closed form (two discs).
    pub fn analytic_gap(&self, outer: &Region) -> Option<f64> {
        match (self, outer) {
            (
                Region::Disk { center: c1, radius: r1 },
                Region::Disk { center: c2, radius: r2 },
            ) => Some(r2 - r1 - (c2 - c1).norm()),
            _ => None,
        }
    }
}
