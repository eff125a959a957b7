//! Covering numbers, doubling constants and Assouad exponents.
//!
//! Covers are built greedily: the first ball is centred at the ball's own
//! centre, then points of `B(x, R)` are scanned in index order and every
//! point not yet covered becomes a new centre. The result is an upper bound
//! on the minimum cover size `N_r(B(x, R))`, and its centres are pairwise at
//! distance `>= r`.

use super::clique::CliqueReport;
use super::metric::FiniteMetric;
use crate::error::{LabError, Result};

/// Points of the open ball `B(center, radius)`, in index order.
pub fn open_ball(fm: &FiniteMetric, center: usize, radius: f64) -> Vec<usize> {
    fm.row(center)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < radius)
        .map(|(i, _)| i)
        .collect()
}

/// Centres of the greedy cover of `B(center, big_r)` by open `small_r`-balls.
pub fn greedy_cover(fm: &FiniteMetric, center: usize, big_r: f64, small_r: f64) -> Result<Vec<usize>> {
    if center >= fm.len() {
        return Err(LabError::param(format!("centre {center} out of range")));
    }
    if !(small_r > 0.0 && small_r < big_r) {
        return Err(LabError::param(format!("need 0 < r < R, got r = {small_r}, R = {big_r}")));
    }
    let ball = open_ball(fm, center, big_r);
    let mut covered = vec![false; ball.len()];
    let mut centres = Vec::new();
    let mut take = |c: usize, covered: &mut [bool]| {
        centres.push(c);
        let row = fm.row(c);
        for (slot, &p) in ball.iter().enumerate() {
            if row[p] < small_r {
                covered[slot] = true;
            }
        }
    };
    take(center, &mut covered);
    for slot in 0..ball.len() {
        if !covered[slot] {
            take(ball[slot], &mut covered);
        }
    }
    Ok(centres)
}

/// Greedy upper bound on `N_r(B(center, R))`.
pub fn covering_number(fm: &FiniteMetric, center: usize, big_r: f64, small_r: f64) -> Result<usize> {
    greedy_cover(fm, center, big_r, small_r).map(|c| c.len())
}

/// `max` over the sampled centres and radii of the greedy count of
/// `R/2`-balls needed to cover `B(x, R)`.
pub fn doubling_constant(fm: &FiniteMetric, centers: &[usize], radii: &[f64]) -> Result<usize> {
    if centers.is_empty() || radii.is_empty() {
        return Err(LabError::param("doubling constant needs at least one centre and one radius"));
    }
    let mut worst = 1;
    for &x in centers {
        for &r in radii {
            worst = worst.max(covering_number(fm, x, r, r / 2.0)?);
        }
    }
    Ok(worst)
}

/// If the greedy cover of `B(center, R)` by `R/2`-balls uses at least `n`
/// balls, its first `n` centres lie in `B(center, R)` outside each other's
/// `R/2`-balls, so their pairwise distances lie in `[R/2, 2R)`: an
/// `(n, 4)`-clique. Returns it, verified, or `None` if the cover is smaller.
pub fn clique_from_cover(fm: &FiniteMetric, center: usize, big_r: f64, n: usize) -> Result<Option<CliqueReport>> {
    if n < 2 {
        return Err(LabError::param("clique size must be >= 2"));
    }
    let centres = greedy_cover(fm, center, big_r, big_r / 2.0)?;
    if centres.len() < n {
        return Ok(None);
    }
    let indices = centres[..n].to_vec();
    let ratio = super::clique::clique_ratio(fm, &indices)?;
    Ok(Some(CliqueReport { indices, n, ratio, k_target: 4.0, exact: false }))
}

/// One scale pair of an Assouad fit.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleRow {
    pub big_r: f64,
    pub small_r: f64,
    /// Max over sampled centres of the greedy covering count.
    pub count: usize,
}

impl ScaleRow {
    pub fn log_ratio(&self) -> f64 {
        (self.big_r / self.small_r).ln()
    }

    pub fn log_count(&self) -> f64 {
        (self.count as f64).ln()
    }
}

/// Least-squares fit of `log N_r(B(x, R)) ~ log C + alpha log(R / r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssouadEstimate {
    pub rows: Vec<ScaleRow>,
    pub alpha: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log-count units.
    pub residual: f64,
}

impl AssouadEstimate {
    /// Refits from the stored counts.
    pub fn from_rows(rows: Vec<ScaleRow>) -> Result<Self> {
        if rows.len() < 3 {
            return Err(LabError::Degenerate(format!("need >= 3 scale pairs, got {}", rows.len())));
        }
        let xs: Vec<f64> = rows.iter().map(ScaleRow::log_ratio).collect();
        let ys: Vec<f64> = rows.iter().map(ScaleRow::log_count).collect();
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo < std::f64::consts::LN_10 * (1.0 - 1e-12) {
            return Err(LabError::Degenerate(format!(
                "scale ratios span only {:.3} decades",
                (hi - lo) / std::f64::consts::LN_10
            )));
        }
        let m = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let alpha = sxy / sxx;
        let intercept = my - alpha * mx;
        let residual = (xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - intercept - alpha * x).powi(2))
            .sum::<f64>()
            / m)
            .sqrt();
        Ok(Self { rows, alpha, intercept, residual })
    }
}

/// Fits the Assouad exponent over the given `(R, r)` pairs, taking for each
/// pair the largest greedy count over `centers`.
pub fn assouad_estimate(fm: &FiniteMetric, scales: &[(f64, f64)], centers: &[usize]) -> Result<AssouadEstimate> {
    if centers.is_empty() {
        return Err(LabError::param("no sample centres"));
    }
    if scales.len() < 3 {
        return Err(LabError::Degenerate(format!("need >= 3 scale pairs, got {}", scales.len())));
    }
    let mut rows = Vec::with_capacity(scales.len());
    for &(big_r, small_r) in scales {
        let mut count = 1;
        for &x in centers {
            count = count.max(covering_number(fm, x, big_r, small_r)?);
        }
        rows.push(ScaleRow { big_r, small_r, count });
    }
    AssouadEstimate::from_rows(rows)
}

/// Default scale pairs: `R` is half the diameter and `r = R / 2^{j/4}` for
/// `j >= 2`, stopping before `r` drops below 1.5 times the smallest distance,
/// where balls would only hold single points.
pub fn auto_scales(fm: &FiniteMetric) -> Vec<(f64, f64)> {
    let big_r = fm.max_distance() / 2.0;
    let floor = 1.5 * fm.min_distance();
    (2..)
        .map(|j| (big_r, big_r / 2f64.powf(j as f64 / 4.0)))
        .take_while(|s| s.1 >= floor)
        .collect()
}

/// Up to `max` centres spread evenly through the index range.
pub fn spread_centers(len: usize, max: usize) -> Vec<usize> {
    let step = len.div_ceil(max.max(1)).max(1);
    (0..len).step_by(step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_scales_stay_above_the_lattice_step() {
        let fm = FiniteMetric::line_grid(100, 1.0).unwrap();
        let scales = auto_scales(&fm);
        assert!(scales.iter().all(|&(big, small)| big == 49.5 && small >= 1.5 && small < big));
        assert!(scales.last().unwrap().1 / 2f64.powf(0.25) < 1.5);
        assert!(auto_scales(&FiniteMetric::uniform(3, 1.0).unwrap()).is_empty());
    }

    #[test]
    fn trivial_covers() {
        let fm = FiniteMetric::line_grid(10, 1.0).unwrap();
        assert_eq!(covering_number(&fm, 3, 0.5, 0.25).unwrap(), 1);
        assert_eq!(covering_number(&fm, 3, 2.0, 1.9).unwrap(), 1);
        assert!(covering_number(&fm, 3, 1.0, 1.0).is_err());
        assert!(covering_number(&fm, 3, 1.0, 0.0).is_err());
    }

    #[test]
    fn line_interval_arithmetic() {
        // B(50, 50) = {1..99}; open 5-balls cover at most 9 lattice points,
        // so at least 11 are needed, and the greedy scan uses 19
        let fm = FiniteMetric::line_grid(101, 1.0).unwrap();
        let c = covering_number(&fm, 50, 50.0, 5.0).unwrap();
        assert!((10..=20).contains(&c), "{c}");
        assert_eq!(c, 19);
    }

    #[test]
    fn uniform_clique_doubling() {
        let fm = FiniteMetric::uniform(12, 1.0).unwrap();
        assert_eq!(doubling_constant(&fm, &[0, 5], &[1.05]).unwrap(), 12);
        let single = FiniteMetric::uniform(1, 1.0).unwrap();
        assert_eq!(doubling_constant(&single, &[0], &[1.0, 3.0]).unwrap(), 1);
        assert!(doubling_constant(&fm, &[], &[1.0]).is_err());
    }

    #[test]
    fn cover_centres_form_four_clique() {
        let fm = FiniteMetric::square_grid(12).unwrap();
        let rep = clique_from_cover(&fm, 66, 5.0, 6).unwrap().unwrap();
        assert!(rep.ratio <= 4.0);
        for (a, &i) in rep.indices.iter().enumerate() {
            for &j in &rep.indices[a + 1..] {
                let d = fm.d(i, j);
                assert!((2.5..10.0).contains(&d));
            }
        }
    }

    #[test]
    fn fit_needs_a_decade() {
        let fm = FiniteMetric::line_grid(64, 1.0).unwrap();
        let narrow = [(16.0, 8.0), (16.0, 4.0), (16.0, 2.5)];
        assert!(matches!(assouad_estimate(&fm, &narrow, &[32]), Err(LabError::Degenerate(_))));
        assert!(assouad_estimate(&fm, &narrow[..2], &[32]).is_err());
    }

    #[test]
    fn refit_reproduces() {
        let fm = FiniteMetric::line_grid(256, 1.0).unwrap();
        let scales: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0, 32.0].iter().map(|k| (64.0, 64.0 / k)).collect();
        let est = assouad_estimate(&fm, &scales, &spread_centers(256, 16)).unwrap();
        let again = AssouadEstimate::from_rows(est.rows.clone()).unwrap();
        assert_eq!(est, again);
        assert!(est.rows.iter().all(|r| r.count >= 1));
    }
}
