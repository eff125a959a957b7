use std::f64::consts::PI;

use crate::geometry::{point_segment_distance, project_onto_segment, Point};
use crate::region::Polygon;

/// The star `2N`-gon with outer vertices `z0 + 7r e^{2 pi i k / N}` and inner
/// vertices `z0 + r e^{pi i (2k + 1) / N}`, listed `z'_1, w_1, z'_2, ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPolygon {
    pub n_arms: usize,
    pub z0: Point,
    pub r: f64,
    polygon: Polygon,
}

impl StarPolygon {
    pub fn new(n_arms: usize, z0: Point, r: f64) -> Self {
        let mut vertices = Vec::with_capacity(2 * n_arms);
        for k in 1..=n_arms {
            vertices.push(outer_vertex(n_arms, z0, r, k));
            vertices.push(inner_vertex(n_arms, z0, r, k));
        }
        Self { n_arms, z0, r, polygon: Polygon::new(vertices) }
    }

    /// `K_N` itself.
    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    /// `K_N^beta = z0 + (1 - beta)(K_N - z0)`.
    pub fn shrink(&self, beta: f64) -> Polygon {
        self.polygon.scaled_about(self.z0, 1.0 - beta)
    }

    pub fn outer_vertices(&self) -> Vec<Point> {
        (1..=self.n_arms).map(|k| outer_vertex(self.n_arms, self.z0, self.r, k)).collect()
    }

    pub fn inner_vertices(&self) -> Vec<Point> {
        (1..=self.n_arms).map(|k| inner_vertex(self.n_arms, self.z0, self.r, k)).collect()
    }

    /// Arm tips `z_k = z0 + 6r e^{2 pi i k / N}`, `k = 1..N`.
    pub fn tips(&self) -> Vec<Point> {
        (1..=self.n_arms).map(|k| self.z0 + polar(6.0 * self.r, 2.0 * PI * k as f64 / self.n_arms as f64)).collect()
    }

    /// Closed membership in `K_N^beta`.
    pub fn contains(&self, p: Point, beta: f64) -> bool {
        self.shrink(beta).contains(p)
    }
}

fn polar(radius: f64, angle: f64) -> Point {
    Point::from_polar(radius, angle)
}

fn outer_vertex(n: usize, z0: Point, r: f64, k: usize) -> Point {
    z0 + polar(7.0 * r, 2.0 * PI * k as f64 / n as f64)
}

fn inner_vertex(n: usize, z0: Point, r: f64, k: usize) -> Point {
    z0 + polar(r, PI * (2 * k + 1) as f64 / n as f64)
}

/// Exact distance between the boundaries of two disjoint nested polygons:
/// the minimum over vertex-to-edge distances in both directions.
pub fn boundary_gap(inner: &Polygon, outer: &Polygon) -> f64 {
    let one = |a: &Polygon, b: &Polygon| {
        a.vertices()
            .iter()
            .map(|&v| b.boundary_distance(v))
            .fold(f64::INFINITY, f64::min)
    };
    one(inner, outer).min(one(outer, inner))
}

/// Uniform points per edge in the sampled containment check.
const EDGE_SAMPLES: usize = 64;

/// Largest `zeta` such that the `2 zeta`-neighbourhood of `K^{eps/2}` lies in
/// `K^{eps/4}`, by bisection to `1e-6 r` against a sampled boundary of
/// `K^{eps/2}`. The sample contains the vertices of `K^{eps/2}` and the
/// projections of the vertices of `K^{eps/4}` onto its edges, which are the
/// minimisers of the boundary gap, so the sampled check is exact.
pub fn zeta_of_epsilon(star: &StarPolygon, epsilon: f64) -> f64 {
    let inner = star.shrink(epsilon / 2.0);
    let outer = star.shrink(epsilon / 4.0);
    let mut samples: Vec<Point> = inner.vertices().to_vec();
    for (a, b) in inner.edges() {
        for &v in outer.vertices() {
            samples.push(project_onto_segment(v, a, b));
        }
        for s in 1..EDGE_SAMPLES {
            samples.push(a + (b - a) * (s as f64 / EDGE_SAMPLES as f64));
        }
    }
    let fits = |zeta: f64| {
        samples.iter().all(|&p| {
            outer.contains(p)
                && outer.edges().all(|(a, b)| point_segment_distance(p, a, b) >= 2.0 * zeta)
        })
    };
    let mut lo = 0.0;
    let mut hi = star.r;
    while fits(hi) {
        hi *= 2.0;
    }
    while hi - lo > 1e-6 * star.r {
        let mid = 0.5 * (lo + hi);
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_formula() {
        let s = StarPolygon::new(5, Point::new(0.0, 0.0), 1.0);
        let z1 = s.tips()[0];
        assert!((z1.re - 1.854).abs() < 1e-3 && (z1.im - 5.706).abs() < 1e-3);
        let v = s.polygon().vertices();
        assert_eq!(v.len(), 10);
        // alternating order: z'_1, w_1, z'_2
        assert!((v[0].norm() - 7.0).abs() < 1e-12);
        assert!((v[1].norm() - 1.0).abs() < 1e-12);
        assert!((v[1].arg() - 3.0 * PI / 5.0).abs() < 1e-12);
        assert!((v[2].arg() - 4.0 * PI / 5.0).abs() < 1e-12);
    }

    #[test]
    fn shrink_zero_is_identity() {
        let s = StarPolygon::new(6, Point::new(0.3, -1.0), 0.5);
        assert_eq!(s.shrink(0.0), *s.polygon());
    }

    #[test]
    fn shrinks_are_nested_and_contain_center() {
        let s = StarPolygon::new(5, Point::new(1.0, 2.0), 2.0);
        for beta in [0.01, 0.1, 0.5, 0.9, 0.99] {
            assert!(s.shrink(beta).contains_strict(s.z0));
        }
        let big = s.shrink(0.02);
        for &v in s.shrink(0.05).vertices() {
            assert!(big.contains_strict(v));
        }
    }

    #[test]
    fn tips_inside_double_shrink() {
        for n in [2, 3, 5, 8] {
            let s = StarPolygon::new(n, Point::new(0.0, 0.0), 1.0);
            let k = s.shrink(2.0 * 0.07);
            for t in s.tips() {
                assert!(k.contains_strict(t), "N={n}");
            }
        }
    }

    #[test]
    fn zeta_matches_exact_gap() {
        for n in [2, 3, 5, 7] {
            for eps in [0.01, 0.03, 0.05, 0.07] {
                let s = StarPolygon::new(n, Point::new(0.0, 0.0), 1.0);
                let zeta = zeta_of_epsilon(&s, eps);
                let exact = boundary_gap(&s.shrink(eps / 2.0), &s.shrink(eps / 4.0)) / 2.0;
                assert!(zeta > 0.0);
                assert!(zeta <= exact && exact - zeta <= 1e-6, "N={n} eps={eps}: {zeta} vs {exact}");
            }
        }
    }

    #[test]
    fn zeta_grows_with_epsilon() {
        let s = StarPolygon::new(5, Point::new(0.0, 0.0), 1.0);
        for eps in [0.005, 0.01, 0.02, 0.03] {
            assert!(zeta_of_epsilon(&s, 2.0 * eps) > zeta_of_epsilon(&s, eps));
        }
    }

    #[test]
    fn zeta_scales_with_r() {
        let a = StarPolygon::new(5, Point::new(0.0, 0.0), 1.0);
        let b = StarPolygon::new(5, Point::new(3.0, 1.0), 0.25);
        let (za, zb) = (zeta_of_epsilon(&a, 0.05), zeta_of_epsilon(&b, 0.05));
        assert!((za * 0.25 - zb).abs() < 2e-6 * 0.25);
    }
}
