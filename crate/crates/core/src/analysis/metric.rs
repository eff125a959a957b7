use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LabError, Result};

/// Tolerance on the triangle inequality, relative to the sides involved.
pub const TRIANGLE_TOL: f64 = 1e-9;

/// Above this many points the triangle inequality is checked on a fixed
/// pseudo-random sample of triples instead of all of them.
pub const FULL_TRIANGLE_CHECK_MAX: usize = 600;

const SAMPLED_TRIPLES: usize = 2_000_000;

/// An explicit finite metric space.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetric {
    ids: Vec<String>,
    coords: Option<Vec<Vec<f64>>>,
    dist: Vec<f64>,
}

impl FiniteMetric {
    /// Validates and wraps a row-major `n x n` distance matrix.
    pub fn new(ids: Vec<String>, dist: Vec<f64>) -> Result<Self> {
        let fm = Self::unchecked(ids, None, dist)?;
        fm.check_entries()?;
        fm.check_triangle()?;
        Ok(fm)
    }

    /// Matrix with ids `"0"`, `"1"`, ...
    pub fn from_matrix(dist: Vec<f64>) -> Result<Self> {
        let n = (dist.len() as f64).sqrt().round() as usize;
        Self::new((0..n).map(|i| i.to_string()).collect(), dist)
    }

    /// Euclidean metric on distinct points of `R^d`. Euclidean distances
    /// satisfy the triangle inequality, so only distinctness is checked.
    pub fn from_points(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if let Some(p) = points.iter().find(|p| p.len() != points[0].len()) {
            return Err(LabError::Shape(format!("point of dimension {} among dimension {}", p.len(), points[0].len())));
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        let fm = Self::unchecked((0..n).map(|i| i.to_string()).collect(), Some(points), dist)?;
        fm.check_entries()?;
        Ok(fm)
    }

    /// `count` equally spaced points `0, spacing, 2 spacing, ...` on a line.
    pub fn line_grid(count: usize, spacing: f64) -> Result<Self> {
        Self::from_points((0..count).map(|i| vec![i as f64 * spacing]).collect())
    }

    /// The `side x side` square lattice with unit spacing.
    pub fn square_grid(side: usize) -> Result<Self> {
        Self::from_points(
            (0..side * side)
                .map(|i| vec![(i % side) as f64, (i / side) as f64])
                .collect(),
        )
    }

    /// `count` points at mutual distance `d`.
    pub fn uniform(count: usize, d: f64) -> Result<Self> {
        let mut dist = vec![d; count * count];
        for i in 0..count {
            dist[i * count + i] = 0.0;
        }
        let fm = Self::unchecked((0..count).map(|i| i.to_string()).collect(), None, dist)?;
        fm.check_entries()?;
        Ok(fm)
    }

    pub(crate) fn unchecked(ids: Vec<String>, coords: Option<Vec<Vec<f64>>>, dist: Vec<f64>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(LabError::Degenerate("empty metric space".into()));
        }
        if dist.len() != n * n {
            return Err(LabError::Shape(format!("{} entries for {n} points", dist.len())));
        }
        Ok(Self { ids, coords, dist })
    }

    fn check_entries(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if self.d(i, i) != 0.0 {
                return Err(LabError::Degenerate(format!("d({i},{i}) = {} is not zero", self.d(i, i))));
            }
            for j in (i + 1)..n {
                let (a, b) = (self.d(i, j), self.d(j, i));
                if a != b {
                    return Err(LabError::Degenerate(format!("d({i},{j}) = {a} but d({j},{i}) = {b}")));
                }
                if !(a.is_finite() && a > 0.0) {
                    return Err(LabError::Degenerate(format!(
                        "points {i} and {j} are at distance {a}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn triangle_ok(&self, i: usize, j: usize, k: usize) -> bool {
        let (a, b) = (self.d(i, j), self.d(j, k));
        self.d(i, k) <= a + b + TRIANGLE_TOL * (1.0 + a + b)
    }

    fn check_triangle(&self) -> Result<()> {
        let n = self.len();
        let fail = |i, j, k| {
            Err(LabError::Degenerate(format!("triangle inequality fails for ({i}, {j}, {k})")))
        };
        if n <= FULL_TRIANGLE_CHECK_MAX {
            for i in 0..n {
                for j in 0..n {
                    for k in (i + 1)..n {
                        if !self.triangle_ok(i, j, k) {
                            return fail(i, j, k);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7121);
            for _ in 0..SAMPLED_TRIPLES {
                let (i, j, k) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
                if !self.triangle_ok(i, j, k) {
                    return fail(i, j, k);
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn coords(&self) -> Option<&[Vec<f64>]> {
        self.coords.as_deref()
    }

    pub fn matrix(&self) -> &[f64] {
        &self.dist
    }

    /// Row `i` of the distance matrix.
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    /// Restriction to `indices`, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.len()) {
            return Err(LabError::param(format!("index {bad} out of range")));
        }
        let k = indices.len();
        let mut dist = vec![0.0; k * k];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist[a * k + b] = self.d(i, j);
            }
        }
        let ids = indices.iter().map(|&i| self.ids[i].clone()).collect();
        let coords = self.coords.as_ref().map(|c| indices.iter().map(|&i| c[i].clone()).collect());
        let fm = Self::unchecked(ids, coords, dist)?;
        fm.check_entries()?;
        Ok(fm)
    }

    pub fn max_distance(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, or infinity below two points.
    pub fn min_distance(&self) -> f64 {
        self.dist.iter().copied().filter(|&d| d > 0.0).fold(f64::INFINITY, f64::min)
    }

    /// Same points with every distance replaced by `f(d)`; the caller
    /// guarantees `f` preserves the metric axioms.
    pub(crate) fn map_distances(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            ids: self.ids.clone(),
            coords: self.coords.clone(),
            dist: self.dist.iter().map(|&d| if d == 0.0 { 0.0 } else { f(d) }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_matrices() {
        let ids = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(FiniteMetric::new(ids(2), vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(FiniteMetric::new(ids(2), vec![0.0, 0.0, 0.0, 0.0]).is_err());
        assert!(FiniteMetric::new(ids(2), vec![1.0, 1.0, 1.0, 0.0]).is_err());
        // 0-1: 1, 1-2: 1, 0-2: 3 violates the triangle inequality
        let bad = vec![0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0];
        assert!(FiniteMetric::new(ids(3), bad).is_err());
        assert!(FiniteMetric::new(ids(3), vec![0.0; 4]).is_err());
    }

    #[test]
    fn euclidean_points() {
        let fm = FiniteMetric::from_points(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(fm.d(0, 1), 5.0);
        assert!(FiniteMetric::from_points(vec![vec![1.0], vec![1.0]]).is_err());
        assert_eq!(FiniteMetric::square_grid(3).unwrap().len(), 9);
    }

    #[test]
    fn restriction_keeps_order() {
        let fm = FiniteMetric::line_grid(5, 1.0).unwrap();
        let sub = fm.restrict(&[4, 0, 2]).unwrap();
        assert_eq!(sub.d(0, 1), 4.0);
        assert_eq!(sub.d(1, 2), 2.0);
        assert_eq!(sub.ids(), &["4", "0", "2"]);
        assert!(fm.restrict(&[1, 1]).is_err());
    }
}
