use std::f64::consts::SQRT_2;

use crate::error::{LabError, Result};
use crate::geometry::{GridGeometry, Point};
use crate::gff::{FieldGrid, LqgParams};
use crate::region::Region;

/// Admissible-vertex set for internal metrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mask {
    n: usize,
    bits: Vec<bool>,
}

impl Mask {
    pub fn full(geometry: &GridGeometry) -> Self {
        Self { n: geometry.n, bits: vec![true; geometry.len()] }
    }

    pub fn from_fn(geometry: &GridGeometry, mut f: impl FnMut(usize) -> bool) -> Self {
        Self { n: geometry.n, bits: (0..geometry.len()).map(&mut f).collect() }
    }

    /// Vertices whose position lies in the closed region.
    pub fn from_region(geometry: &GridGeometry, region: &Region) -> Self {
        Self::from_fn(geometry, |i| region.contains(geometry.point(i)))
    }

    /// Vertices whose position satisfies `pred`.
    pub fn from_points(geometry: &GridGeometry, mut pred: impl FnMut(Point) -> bool) -> Self {
        Self::from_fn(geometry, |i| pred(geometry.point(i)))
    }

    pub fn from_vertices(geometry: &GridGeometry, vertices: &[usize]) -> Self {
        let mut bits = vec![false; geometry.len()];
        for &v in vertices {
            bits[v] = true;
        }
        Self { n: geometry.n, bits }
    }

    #[inline]
    pub fn get(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&i| self.bits[i]).collect()
    }

    pub fn and(&self, other: &Mask) -> Mask {
        Mask {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect(),
        }
    }

    pub fn or(&self, other: &Mask) -> Mask {
        Mask {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect(),
        }
    }
}

/// Vertex-weighted 8-connected lattice realising the first-passage metric of
/// a field: `w(v) = exp(xi h(v)) * spacing`, and the edge `{u, v}` costs
/// `(w(u) + w(v)) / 2` times 1 (axis) or sqrt(2) (diagonal).
#[derive(Clone, Debug)]
pub struct WeightedGrid {
    pub geometry: GridGeometry,
    pub weights: Vec<f64>,
    pub params: LqgParams,
    pub mask: Option<Mask>,
}

/// Neighbour offsets `(drow, dcol, length factor)`.
pub(crate) const NEIGHBOURS: [(isize, isize, f64); 8] = [
    (-1, -1, SQRT_2),
    (-1, 0, 1.0),
    (-1, 1, SQRT_2),
    (0, -1, 1.0),
    (0, 1, 1.0),
    (1, -1, SQRT_2),
    (1, 0, 1.0),
    (1, 1, SQRT_2),
];

pub fn build_metric(field: &FieldGrid, params: &LqgParams) -> Result<WeightedGrid> {
    let spacing = field.geometry.spacing;
    let mut weights = Vec::with_capacity(field.values.len());
    for (i, &h) in field.values.iter().enumerate() {
        let w = (params.xi * h).exp() * spacing;
        if !(w.is_finite() && w > 0.0) {
            return Err(LabError::Data(format!(
                "vertex {i}: field value {h} gives weight {w}"
            )));
        }
        weights.push(w);
    }
    Ok(WeightedGrid { geometry: field.geometry, weights, params: *params, mask: None })
}

impl WeightedGrid {
    pub fn with_mask(mut self, mask: Mask) -> Self {
        self.mask = Some(mask);
        self
    }

    #[inline]
    pub fn edge_weight(&self, u: usize, v: usize, length: f64) -> f64 {
        (self.weights[u] + self.weights[v]) * 0.5 * length
    }

    /// Weight of the edge between two 8-neighbours, or `None` if they are
    /// not adjacent.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<f64> {
        let (ru, cu) = self.geometry.row_col(u);
        let (rv, cv) = self.geometry.row_col(v);
        let dr = ru.abs_diff(rv);
        let dc = cu.abs_diff(cv);
        match (dr, dc) {
            (0, 1) | (1, 0) => Some(self.edge_weight(u, v, 1.0)),
            (1, 1) => Some(self.edge_weight(u, v, SQRT_2)),
            _ => None,
        }
    }

    #[inline]
    pub fn admissible(&self, v: usize, mask: Option<&Mask>) -> bool {
        self.mask.as_ref().is_none_or(|m| m.get(v)) && mask.is_none_or(|m| m.get(v))
    }

    /// Calls `f(neighbour, edge weight)` for each lattice neighbour of `v`.
    #[inline]
    pub fn for_each_neighbour(&self, v: usize, mut f: impl FnMut(usize, f64)) {
        let n = self.geometry.n as isize;
        let row = (v / self.geometry.n) as isize;
        let col = (v % self.geometry.n) as isize;
        for &(dr, dc, len) in &NEIGHBOURS {
            let r = row + dr;
            let c = col + dc;
            if r < 0 || c < 0 || r >= n || c >= n {
                continue;
            }
            let u = (r * n + c) as usize;
            f(u, self.edge_weight(v, u, len));
        }
    }

    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(0.0, f64::max)
    }
}
