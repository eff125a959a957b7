//! Approximately equidistant point sets.

use super::metric::FiniteMetric;
use crate::error::{LabError, Result};

/// Point sets up to this size are searched exhaustively.
pub const EXACT_SEARCH_MAX: usize = 14;

/// Points greedily seeded by the heuristic search on large spaces.
const HEURISTIC_SEEDS: usize = 64;

/// A candidate `(n, K)`-clique.
#[derive(Clone, Debug, PartialEq)]
pub struct CliqueReport {
    pub indices: Vec<usize>,
    pub n: usize,
    /// `max / min` pairwise distance: the smallest `K` this set achieves.
    pub ratio: f64,
    pub k_target: f64,
    /// Whether the search that produced it was exhaustive.
    pub exact: bool,
}

impl CliqueReport {
    pub fn is_success(&self) -> bool {
        self.ratio <= self.k_target
    }
}

fn extremes(fm: &FiniteMetric, subset: &[usize]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            let d = fm.d(i, j);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    (lo, hi)
}

/// `max_{i<j} d / min_{i<j} d` over `subset`.
pub fn clique_ratio(fm: &FiniteMetric, subset: &[usize]) -> Result<f64> {
    if subset.len() < 2 {
        return Err(LabError::param("a clique needs at least two points"));
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= fm.len()) {
        return Err(LabError::param(format!("index {bad} out of range")));
    }
    let (lo, hi) = extremes(fm, subset);
    if lo <= 0.0 {
        return Err(LabError::Degenerate("subset repeats a point".into()));
    }
    Ok(hi / lo)
}

/// Searches for `n` points with `clique_ratio <= k`.
///
/// Spaces of at most [`EXACT_SEARCH_MAX`] points are searched exhaustively
/// by branch and bound and the subset with the smallest ratio is reported
/// if it meets `k`. Larger spaces use greedy growth from a set of seeds
/// followed by single-point swaps; any returned report is verified but a
/// `None` there does not prove absence.
pub fn find_clique(fm: &FiniteMetric, n: usize, k: f64) -> Result<Option<CliqueReport>> {
    if n < 2 {
        return Err(LabError::param(format!("clique size must be >= 2, got {n}")));
    }
    if !(k > 1.0) {
        return Err(LabError::param(format!("K must exceed 1, got {k}")));
    }
    if n > fm.len() {
        return Err(LabError::param(format!("clique size {n} exceeds {} points", fm.len())));
    }
    let exact = fm.len() <= EXACT_SEARCH_MAX;
    let best = if exact { best_exact(fm, n) } else { best_heuristic(fm, n) };
    Ok(best.and_then(|(indices, ratio)| {
        (ratio <= k).then(|| CliqueReport { n: indices.len(), indices, ratio, k_target: k, exact })
    }))
}

/// Smallest-ratio subset of size `n` by exhaustive branch and bound.
pub fn best_exact(fm: &FiniteMetric, n: usize) -> Option<(Vec<usize>, f64)> {
    struct Search<'a> {
        fm: &'a FiniteMetric,
        n: usize,
        chosen: Vec<usize>,
        best: Option<(Vec<usize>, f64)>,
    }

    impl Search<'_> {
        fn bound(&self) -> f64 {
            self.best.as_ref().map_or(f64::INFINITY, |b| b.1)
        }

        fn go(&mut self, next: usize, lo: f64, hi: f64) {
            if self.chosen.len() == self.n {
                let ratio = hi / lo;
                if ratio < self.bound() {
                    self.best = Some((self.chosen.clone(), ratio));
                }
                return;
            }
            let need = self.n - self.chosen.len();
            for c in next..self.fm.len() {
                if self.fm.len() - c < need {
                    break;
                }
                let mut l = lo;
                let mut h = hi;
                for &p in &self.chosen {
                    let d = self.fm.d(p, c);
                    l = l.min(d);
                    h = h.max(d);
                }
                // adding points never lowers the ratio
                if self.chosen.len() >= 1 && h / l >= self.bound() {
                    continue;
                }
                self.chosen.push(c);
                self.go(c + 1, l, h);
                self.chosen.pop();
            }
        }
    }

    let mut s = Search { fm, n, chosen: Vec::with_capacity(n), best: None };
    s.go(0, f64::INFINITY, 0.0);
    s.best
}

fn best_heuristic(fm: &FiniteMetric, n: usize) -> Option<(Vec<usize>, f64)> {
    let len = fm.len();
    let stride = (len / HEURISTIC_SEEDS).max(1);
    let mut best: Option<(Vec<usize>, f64)> = None;
    for seed in (0..len).step_by(stride) {
        let mut chosen = vec![seed];
        let mut in_set = vec![false; len];
        in_set[seed] = true;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        while chosen.len() < n {
            let mut pick: Option<(usize, f64, f64)> = None;
            for c in 0..len {
                if in_set[c] {
                    continue;
                }
                let (mut l, mut h) = (lo, hi);
                for &p in &chosen {
                    let d = fm.d(p, c);
                    l = l.min(d);
                    h = h.max(d);
                }
                if pick.is_none_or(|(_, pl, ph)| h / l < ph / pl) {
                    pick = Some((c, l, h));
                }
            }
            let (c, l, h) = pick.expect("n <= len");
            chosen.push(c);
            in_set[c] = true;
            lo = l;
            hi = h;
        }
        let mut ratio = hi / lo;
        improve_by_swaps(fm, &mut chosen, &mut in_set, &mut ratio);
        if best.as_ref().is_none_or(|b| ratio < b.1) {
            let mut sorted = chosen.clone();
            sorted.sort_unstable();
            best = Some((sorted, ratio));
        }
    }
    best
}

fn improve_by_swaps(fm: &FiniteMetric, chosen: &mut [usize], in_set: &mut [bool], ratio: &mut f64) {
    const MAX_ROUNDS: usize = 50;
    for _ in 0..MAX_ROUNDS {
        let mut improved = false;
        for slot in 0..chosen.len() {
            let old = chosen[slot];
            for c in 0..fm.len() {
                if in_set[c] {
                    continue;
                }
                chosen[slot] = c;
                let (lo, hi) = extremes(fm, chosen);
                if hi / lo < *ratio {
                    *ratio = hi / lo;
                    in_set[old] = false;
                    in_set[c] = true;
                    improved = true;
                    break;
                }
                chosen[slot] = old;
            }
        }
        if !improved {
            break;
        }
    }
}

/// Colour classes of a clique split at `sqrt(k) * min distance`: returns a
/// monochromatic triangle, which is a `(3, sqrt(k))`-clique.
///
/// Any two-colouring of the pairs of six points has a monochromatic
/// triangle, so cliques of at least six points always succeed.
pub fn ramsey_refine(fm: &FiniteMetric, clique: &[usize], k: f64) -> Result<CliqueReport> {
    const RAMSEY_3: usize = 6;
    if clique.len() < RAMSEY_3 {
        return Err(LabError::param(format!(
            "need at least {RAMSEY_3} points to guarantee a monochromatic triangle, got {}",
            clique.len()
        )));
    }
    let ratio = clique_ratio(fm, clique)?;
    if ratio > k {
        return Err(LabError::param(format!("input has ratio {ratio} > K = {k}")));
    }
    let (lo, _) = extremes(fm, clique);
    let split = k.sqrt() * lo;
    let short = |i: usize, j: usize| fm.d(clique[i], clique[j]) <= split;
    let m = clique.len();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let colour = short(a, b);
                if short(a, c) == colour && short(b, c) == colour {
                    let indices = vec![clique[a], clique[b], clique[c]];
                    let ratio = clique_ratio(fm, &indices)?;
                    return Ok(CliqueReport { indices, n: 3, ratio, k_target: k.sqrt(), exact: true });
                }
            }
        }
    }
    unreachable!("every two-colouring of K6 has a monochromatic triangle")
}

/// Repeated square-root refinement: each round two-colours the current set
/// at `sqrt(K) * min distance` and keeps a monochromatic subset found by the
/// greedy Erdos-Szekeres sweep, giving `(m_t, K^(1/2^t))`-cliques with
/// shrinking `m_t`. Stops before the set would drop below three points.
pub fn refine_iterated(fm: &FiniteMetric, clique: &[usize], k: f64, rounds: usize) -> Result<Vec<CliqueReport>> {
    let ratio = clique_ratio(fm, clique)?;
    if ratio > k {
        return Err(LabError::param(format!("input has ratio {ratio} > K = {k}")));
    }
    let mut current = clique.to_vec();
    let mut bound = k;
    let mut out = Vec::new();
    for _ in 0..rounds {
        let (lo, _) = extremes(fm, &current);
        let split = bound.sqrt() * lo;
        let short = |i: usize, j: usize| fm.d(i, j) <= split;
        // greedy sequence v_0, v_1, ... each followed only by points of one colour
        let mut pool = current.clone();
        let mut seq: Vec<(usize, bool)> = Vec::new();
        while let Some((&v, rest)) = pool.split_first() {
            let (same, other): (Vec<usize>, Vec<usize>) = rest.iter().partition(|&&u| short(v, u));
            let colour = same.len() >= other.len();
            seq.push((v, colour));
            pool = if colour { same } else { other };
        }
        let reds: Vec<usize> = seq.iter().filter(|s| s.1).map(|s| s.0).collect();
        let blues: Vec<usize> = seq.iter().filter(|s| !s.1).map(|s| s.0).collect();
        let next = if reds.len() >= blues.len() { reds } else { blues };
        if next.len() < 3 {
            break;
        }
        bound = bound.sqrt();
        let ratio = clique_ratio(fm, &next)?;
        out.push(CliqueReport { n: next.len(), indices: next.clone(), ratio, k_target: bound, exact: false });
        current = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> FiniteMetric {
        FiniteMetric::from_points(points.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn ratio_examples() {
        let eq = FiniteMetric::from_points(vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, 3f64.sqrt() / 2.0],
        ])
        .unwrap();
        assert!((clique_ratio(&eq, &[0, 1, 2]).unwrap() - 1.0).abs() < 1e-15);
        let sq = FiniteMetric::from_points(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(clique_ratio(&sq, &[0, 1, 2, 3]).unwrap(), 2f64.sqrt());
        assert_eq!(clique_ratio(&line(&[0.0, 1.0, 3.0]), &[0, 1, 2]).unwrap(), 3.0);
        assert!(clique_ratio(&sq, &[1]).is_err());
        assert!(matches!(clique_ratio(&sq, &[1, 1]), Err(LabError::Degenerate(_))));
    }

    #[test]
    fn standard_basis_clique() {
        let n = 9;
        let pts = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let fm = FiniteMetric::from_points(pts).unwrap();
        let rep = find_clique(&fm, n, 1.0001).unwrap().unwrap();
        assert_eq!(rep.ratio, 1.0);
        assert!(rep.exact);
    }

    #[test]
    fn line_has_no_tight_triple() {
        let fm = line(&[0.0, 1.0, 3.0]);
        assert!(find_clique(&fm, 3, 2.0).unwrap().is_none());
        assert_eq!(find_clique(&fm, 3, 3.0).unwrap().unwrap().ratio, 3.0);
        assert!(find_clique(&fm, 4, 2.0).is_err());
        assert!(find_clique(&fm, 2, 1.0).is_err());
    }

    #[test]
    fn heuristic_finds_planted_clique() {
        // 30 points on a line plus 6 far-apart points of a regular simplex-like spread
        let mut pts: Vec<Vec<f64>> = (0..30).map(|i| vec![i as f64 * 0.01, 0.0]).collect();
        for a in 0..6 {
            let t = a as f64 * std::f64::consts::PI / 3.0;
            pts.push(vec![100.0 + 10.0 * t.cos(), 10.0 * t.sin()]);
        }
        let fm = FiniteMetric::from_points(pts).unwrap();
        let rep = find_clique(&fm, 6, 2.0).unwrap().unwrap();
        assert!(!rep.exact);
        assert!(rep.ratio <= 2.0);
        assert_eq!(clique_ratio(&fm, &rep.indices).unwrap(), rep.ratio);
    }

    #[test]
    fn ramsey_examples() {
        let fm = FiniteMetric::uniform(6, 2.0).unwrap();
        let rep = ramsey_refine(&fm, &[0, 1, 2, 3, 4, 5], 4.0).unwrap();
        assert_eq!(rep.ratio, 1.0);
        assert_eq!(rep.k_target, 2.0);
        assert!(ramsey_refine(&fm, &[0, 1, 2, 3, 4], 4.0).is_err());
    }

    #[test]
    fn iterated_refinement_on_line() {
        let fm = line(&(1..=64).map(|i| i as f64 + 1000.0 * (i as f64)).collect::<Vec<_>>());
        let all: Vec<usize> = (0..64).collect();
        let k = clique_ratio(&fm, &all).unwrap();
        let reports = refine_iterated(&fm, &all, k, 3).unwrap();
        assert!(!reports.is_empty());
        let mut bound = k;
        for r in &reports {
            bound = bound.sqrt();
            assert_eq!(r.k_target, bound);
            assert!(r.ratio <= bound);
        }
    }
}
