//! Dijkstra sweeps over a [`WeightedGrid`] with reusable scratch memory.
//!
//! Vertices are settled in increasing `(distance, vertex index)` order and a
//! predecessor is replaced on an exact distance tie only by a smaller vertex
//! index, so every sweep (and every geodesic read from it) is a pure
//! function of its inputs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::grid::{Mask, WeightedGrid};

const NO_PRED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Entry {
    dist: f64,
    vertex: u32,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// What to do after a vertex is settled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

/// A Dijkstra engine bound to one grid and one admissibility mask.
pub struct Explorer<'g> {
    grid: &'g WeightedGrid,
    mask: Option<&'g Mask>,
    dist: Vec<f64>,
    pred: Vec<u32>,
    settled: Vec<bool>,
    touched: Vec<u32>,
    heap: BinaryHeap<Entry>,
}

impl<'g> Explorer<'g> {
    pub fn new(grid: &'g WeightedGrid, mask: Option<&'g Mask>) -> Self {
        let len = grid.geometry.len();
        Self {
            grid,
            mask,
            dist: vec![f64::INFINITY; len],
            pred: vec![NO_PRED; len],
            settled: vec![false; len],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    pub fn grid(&self) -> &'g WeightedGrid {
        self.grid
    }

    pub fn mask(&self) -> Option<&'g Mask> {
        self.mask
    }

    #[inline]
    pub fn admissible(&self, v: usize) -> bool {
        self.grid.admissible(v, self.mask)
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            let v = v as usize;
            self.dist[v] = f64::INFINITY;
            self.pred[v] = NO_PRED;
            self.settled[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    /// Runs a multi-source sweep, calling `visit(v, d)` as each admissible
    /// vertex is settled. Inadmissible sources are ignored. Returns `true`
    /// if the sweep was stopped by `visit`.
    pub fn run(&mut self, sources: &[usize], mut visit: impl FnMut(usize, f64) -> Control) -> bool {
        self.reset();
        for &s in sources {
            if !self.admissible(s) || self.dist[s] == 0.0 {
                continue;
            }
            self.dist[s] = 0.0;
            self.touched.push(s as u32);
            self.heap.push(Entry { dist: 0.0, vertex: s as u32 });
        }
        let grid = self.grid;
        while let Some(Entry { dist: d, vertex }) = self.heap.pop() {
            let u = vertex as usize;
            if self.settled[u] || d > self.dist[u] {
                continue;
            }
            self.settled[u] = true;
            if visit(u, d) == Control::Stop {
                return true;
            }
            grid.for_each_neighbour(u, |v, w| {
                if self.settled[v] || !grid.admissible(v, self.mask) {
                    return;
                }
                let nd = d + w;
                let old = self.dist[v];
                if nd < old {
                    if old == f64::INFINITY {
                        self.touched.push(v as u32);
                    }
                    self.dist[v] = nd;
                    self.pred[v] = u as u32;
                    self.heap.push(Entry { dist: nd, vertex: v as u32 });
                } else if nd == old && (u as u32) < self.pred[v] {
                    self.pred[v] = u as u32;
                }
            });
        }
        false
    }

    /// Distance from the last sweep's sources, `INFINITY` if unreached.
    /// Only settled vertices carry final values.
    #[inline]
    pub fn dist(&self, v: usize) -> f64 {
        if self.settled[v] {
            self.dist[v]
        } else {
            f64::INFINITY
        }
    }

    #[inline]
    pub fn is_settled(&self, v: usize) -> bool {
        self.settled[v]
    }

    pub fn pred(&self, v: usize) -> Option<usize> {
        match self.pred[v] {
            NO_PRED => None,
            p => Some(p as usize),
        }
    }

    /// Vertex path from a source of the last sweep to the settled vertex `v`.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        if !self.settled[v] {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }

    /// Settles everything reachable and returns the distance vector.
    pub fn full_sweep(&mut self, sources: &[usize]) -> Vec<f64> {
        self.run(sources, |_, _| Control::Continue);
        (0..self.dist.len()).map(|v| self.dist(v)).collect()
    }
}
