use super::explore::{Control, Explorer};
use super::grid::{Mask, WeightedGrid};
use crate::error::{LabError, Result};

/// Distance reported for pairs with no admissible connecting path.
pub const DISCONNECTED: f64 = f64::INFINITY;

/// A lattice path with its first-passage length.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPath {
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl GridPath {
    /// Sum of edge weights along the path, or `None` if two consecutive
    /// vertices are not 8-neighbours.
    pub fn recompute_length(&self, grid: &WeightedGrid) -> Option<f64> {
        let mut total = 0.0;
        for pair in self.vertices.windows(2) {
            total += grid.edge_between(pair[0], pair[1])?;
        }
        Some(total)
    }

    pub fn max_edge_weight(&self, grid: &WeightedGrid) -> f64 {
        self.vertices
            .windows(2)
            .filter_map(|p| grid.edge_between(p[0], p[1]))
            .fold(0.0, f64::max)
    }
}

fn check_vertices(grid: &WeightedGrid, vs: &[usize], mask: Option<&Mask>, what: &str) -> Result<()> {
    if vs.is_empty() {
        return Err(LabError::param(format!("{what} vertex set is empty")));
    }
    for &v in vs {
        if v >= grid.geometry.len() {
            return Err(LabError::param(format!("{what} vertex {v} is off the lattice")));
        }
        if !grid.admissible(v, mask) {
            return Err(LabError::param(format!("{what} vertex {v} is not admissible")));
        }
    }
    Ok(())
}

/// Shortest admissible-path length between two vertices. The sweep always
/// starts at the lower index so that `d(a, b)` and `d(b, a)` are summed in
/// the same order and agree bit for bit.
pub fn distance(grid: &WeightedGrid, a: usize, b: usize, mask: Option<&Mask>) -> Result<f64> {
    set_distance(grid, &[a.min(b)], &[a.max(b)], mask)
}

/// `min_{a in A, b in B} d(a, b)` from one multi-source sweep.
pub fn set_distance(
    grid: &WeightedGrid,
    sources: &[usize],
    targets: &[usize],
    mask: Option<&Mask>,
) -> Result<f64> {
    check_vertices(grid, sources, mask, "source")?;
    check_vertices(grid, targets, mask, "target")?;
    let mut is_target = vec![false; grid.geometry.len()];
    for &t in targets {
        is_target[t] = true;
    }
    let mut found = DISCONNECTED;
    Explorer::new(grid, mask).run(sources, |v, d| {
        if is_target[v] {
            found = d;
            Control::Stop
        } else {
            Control::Continue
        }
    });
    Ok(found)
}

/// Geodesic from `a` to `b`; `None` when they are disconnected.
pub fn geodesic(grid: &WeightedGrid, a: usize, b: usize, mask: Option<&Mask>) -> Result<Option<GridPath>> {
    check_vertices(grid, &[a, b], mask, "endpoint")?;
    let mut ex = Explorer::new(grid, mask);
    let mut length = DISCONNECTED;
    ex.run(&[a], |v, d| {
        if v == b {
            length = d;
            Control::Stop
        } else {
            Control::Continue
        }
    });
    Ok(ex.path_to(b).map(|vertices| GridPath { vertices, length }))
}

/// `{ v admissible : d(c, v) < radius }`, in index order.
pub fn metric_ball(grid: &WeightedGrid, center: usize, radius: f64, mask: Option<&Mask>) -> Result<Vec<usize>> {
    check_vertices(grid, &[center], mask, "centre")?;
    if !(radius >= 0.0) {
        return Err(LabError::param(format!("ball radius must be >= 0, got {radius}")));
    }
    let mut ball = Vec::new();
    Explorer::new(grid, mask).run(&[center], |v, d| {
        if d < radius {
            ball.push(v);
            Control::Continue
        } else {
            Control::Stop
        }
    });
    ball.sort_unstable();
    Ok(ball)
}

/// Distances from `source` to each vertex of `targets`, stopping once all of
/// them are settled. Unreached targets get [`DISCONNECTED`].
pub fn distances_to(ex: &mut Explorer<'_>, source: usize, targets: &[usize], is_target: &[bool]) -> Vec<f64> {
    let mut remaining = targets.len();
    ex.run(&[source], |v, _| {
        if is_target[v] {
            remaining -= 1;
            if remaining == 0 {
                return Control::Stop;
            }
        }
        Control::Continue
    });
    targets.iter().map(|&t| ex.dist(t)).collect()
}

/// Pairwise distance matrix of `points` (row-major, `k x k`).
pub fn distance_matrix(grid: &WeightedGrid, points: &[usize], mask: Option<&Mask>) -> Result<Vec<f64>> {
    check_vertices(grid, points, mask, "matrix")?;
    let k = points.len();
    let mut is_target = vec![false; grid.geometry.len()];
    points.iter().for_each(|&p| is_target[p] = true);
    let mut unique = points.to_vec();
    unique.sort_unstable();
    unique.dedup();
    let mut ex = Explorer::new(grid, mask);
    let mut out = vec![0.0; k * k];
    for i in 0..k {
        let row = distances_to(&mut ex, points[i], &unique, &is_target);
        for j in 0..k {
            let pos = unique.binary_search(&points[j]).expect("present");
            out[i * k + j] = row[pos];
        }
    }
    // symmetrise exactly: the two sweeps may round differently
    for i in 0..k {
        for j in (i + 1)..k {
            let d = out[i * k + j].min(out[j * k + i]);
            out[i * k + j] = d;
            out[j * k + i] = d;
        }
    }
    Ok(out)
}

/// Exact diameter `max_{s, s' in S} d(s, s')` of a vertex set.
///
/// Uses eccentricity bounds: a sweep from `v` with eccentricity `e(v)` over
/// `S` gives `max(d(v,w), e(v) - d(v,w)) <= e(w) <= e(v) + d(v,w)` for every
/// `w` in `S`; sweeps continue until the largest lower bound meets every
/// remaining upper bound. Returns [`DISCONNECTED`] if `S` is not connected.
pub fn diameter(grid: &WeightedGrid, set: &[usize], mask: Option<&Mask>) -> Result<f64> {
    check_vertices(grid, set, mask, "diameter")?;
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    let k = members.len();
    if k == 1 {
        return Ok(0.0);
    }
    let mut is_target = vec![false; grid.geometry.len()];
    members.iter().for_each(|&p| is_target[p] = true);

    let mut lower = vec![0.0f64; k];
    let mut upper = vec![f64::INFINITY; k];
    let mut active = vec![true; k];
    let mut best = 0.0f64;
    let mut ex = Explorer::new(grid, mask);
    let mut pick_high = true;
    loop {
        // alternate between the largest upper bound and the smallest lower bound
        let candidate = (0..k).filter(|&i| active[i]).reduce(|a, b| {
            let better = if pick_high {
                upper[b] > upper[a] || (upper[b] == upper[a] && lower[b] > lower[a])
            } else {
                lower[b] < lower[a] || (lower[b] == lower[a] && upper[b] > upper[a])
            };
            if better { b } else { a }
        });
        let Some(c) = candidate else { break };
        pick_high = !pick_high;
        let d = distances_to(&mut ex, members[c], &members, &is_target);
        let ecc = d.iter().copied().fold(0.0, f64::max);
        if ecc == f64::INFINITY {
            return Ok(DISCONNECTED);
        }
        active[c] = false;
        lower[c] = ecc;
        upper[c] = ecc;
        best = best.max(ecc);
        for i in 0..k {
            if !active[i] {
                continue;
            }
            lower[i] = lower[i].max(d[i]).max(ecc - d[i]);
            upper[i] = upper[i].min(ecc + d[i]);
            best = best.max(lower[i]);
        }
        for i in 0..k {
            if active[i] && (upper[i] <= best || lower[i] == upper[i]) {
                active[i] = false;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfpp::test_support::{random_grid, zero_grid};

    #[test]
    fn distance_is_bitwise_symmetric() {
        let wg = random_grid(24, 5);
        for (a, b) in [(0, 575), (17, 300), (400, 3)] {
            assert_eq!(distance(&wg, a, b, None).unwrap().to_bits(), distance(&wg, b, a, None).unwrap().to_bits());
        }
    }

    #[test]
    fn identity_and_lattice_arithmetic() {
        let wg = zero_grid(6, 1.0);
        let a = wg.geometry.index(0, 0);
        let b = wg.geometry.index(4, 3);
        assert_eq!(distance(&wg, a, a, None).unwrap(), 0.0);
        let d = distance(&wg, a, b, None).unwrap();
        assert!((d - (3.0 * std::f64::consts::SQRT_2 + 1.0)).abs() < 1e-12);
        assert!((d - 5.242641).abs() < 1e-6);
    }

    #[test]
    fn geodesic_on_axis_is_straight() {
        let wg = zero_grid(9, 0.5);
        let g = wg.geometry;
        let path = geodesic(&wg, g.index(2, 1), g.index(2, 7), None).unwrap().unwrap();
        let expected: Vec<usize> = (1..=7).map(|c| g.index(2, c)).collect();
        assert_eq!(path.vertices, expected);
        assert_eq!(path.recompute_length(&wg).unwrap(), path.length);
        let single = geodesic(&wg, 5, 5, None).unwrap().unwrap();
        assert_eq!(single.vertices, vec![5]);
        assert_eq!(single.length, 0.0);
    }

    #[test]
    fn ball_on_zero_field() {
        let wg = zero_grid(7, 1.0);
        let c = wg.geometry.index(3, 3);
        assert!(metric_ball(&wg, c, 0.0, None).unwrap().is_empty());
        let ball = metric_ball(&wg, c, 1.1, None).unwrap();
        let g = wg.geometry;
        let mut expected = vec![g.index(2, 3), g.index(3, 2), c, g.index(3, 4), g.index(4, 3)];
        expected.sort_unstable();
        assert_eq!(ball, expected);
        assert_eq!(metric_ball(&wg, c, 100.0, None).unwrap().len(), 49);
    }

    #[test]
    fn disconnected_mask() {
        let wg = zero_grid(5, 1.0);
        let g = wg.geometry;
        let mask = Mask::from_fn(&g, |i| g.row_col(i).1 != 2);
        let d = distance(&wg, g.index(0, 0), g.index(0, 4), Some(&mask)).unwrap();
        assert_eq!(d, DISCONNECTED);
        assert!(geodesic(&wg, g.index(0, 0), g.index(0, 4), Some(&mask)).unwrap().is_none());
        assert_eq!(diameter(&wg, &[g.index(0, 0), g.index(0, 4)], Some(&mask)).unwrap(), DISCONNECTED);
        assert!(distance(&wg, g.index(0, 2), g.index(0, 4), Some(&mask)).is_err());
    }

    #[test]
    fn set_distance_reductions() {
        let wg = zero_grid(8, 1.0);
        assert_eq!(set_distance(&wg, &[1, 2, 3], &[3, 40], None).unwrap(), 0.0);
        assert_eq!(
            set_distance(&wg, &[9], &[50], None).unwrap(),
            distance(&wg, 9, 50, None).unwrap()
        );
    }

    #[test]
    fn diameter_singleton_and_pairs() {
        let wg = random_grid(12, 3);
        assert_eq!(diameter(&wg, &[17], None).unwrap(), 0.0);
        let set: Vec<usize> = (0..wg.geometry.len()).step_by(7).collect();
        let diam = diameter(&wg, &set, None).unwrap();
        let mut brute = 0.0f64;
        for &a in &set {
            for &b in &set {
                brute = brute.max(distance(&wg, a, b, None).unwrap());
            }
        }
        assert!((diam - brute).abs() <= 1e-12 * brute);
    }

    #[test]
    fn matrix_is_symmetric() {
        let wg = random_grid(10, 4);
        let pts = [3, 44, 71, 99, 12];
        let m = distance_matrix(&wg, &pts, None).unwrap();
        for i in 0..5 {
            assert_eq!(m[i * 5 + i], 0.0);
            for j in 0..5 {
                assert_eq!(m[i * 5 + j], m[j * 5 + i]);
            }
        }
    }
}
