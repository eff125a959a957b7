//! Empirical quasisymmetry moduli.
//!
//! For a correspondence `f: X -> Y` and triples `(x, y, z)` of distinct
//! points, any admissible modulus `Psi` satisfies
//! `d_Y(fx, fy) / d_Y(fx, fz) <= Psi(d_X(x, y) / d_X(x, z))`. Sampling
//! triples and recording the largest left-hand side per bin of the
//! argument gives a lower envelope that `Psi` must dominate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::metric::FiniteMetric;
use crate::error::{LabError, Result};

/// Ratio bins: geometric, `BINS_PER_DECADE` per decade over
/// `[10^-DECADES, 10^DECADES)`; ratios outside go to the end bins.
pub const BINS_PER_DECADE: usize = 8;
pub const DECADES: i32 = 4;

/// Triples per independently seeded chunk.
const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct DistortionBin {
    pub lo: f64,
    pub hi: f64,
    pub triples: usize,
    /// Largest sampled `d_X` ratio in the bin.
    pub max_x_ratio: f64,
    /// Largest sampled `d_Y` ratio in the bin.
    pub max_y_ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistortionProfile {
    pub bins: Vec<DistortionBin>,
    /// Running maximum of `max_y_ratio` over nonempty bins in increasing
    /// order of ratio; `None` for empty bins.
    pub envelope: Vec<Option<f64>>,
}

fn bin_count() -> usize {
    2 * DECADES as usize * BINS_PER_DECADE
}

fn bin_edge(i: usize) -> f64 {
    10f64.powf(-(DECADES as f64) + i as f64 / BINS_PER_DECADE as f64)
}

fn bin_of(ratio: f64) -> usize {
    let pos = (ratio.log10() + DECADES as f64) * BINS_PER_DECADE as f64;
    (pos.floor().max(0.0) as usize).min(bin_count() - 1)
}

fn check_bijection(fm_x: &FiniteMetric, fm_y: &FiniteMetric, corr: &[usize]) -> Result<()> {
    if corr.len() != fm_x.len() || fm_x.len() != fm_y.len() {
        return Err(LabError::param(format!(
            "correspondence of length {} between spaces of size {} and {}",
            corr.len(),
            fm_x.len(),
            fm_y.len()
        )));
    }
    let mut seen = vec![false; fm_y.len()];
    for &c in corr {
        if c >= seen.len() || seen[c] {
            return Err(LabError::param("correspondence is not a bijection"));
        }
        seen[c] = true;
    }
    Ok(())
}

#[derive(Clone)]
struct Tally {
    triples: Vec<usize>,
    max_x: Vec<f64>,
    max_y: Vec<f64>,
}

impl Tally {
    fn new() -> Self {
        let b = bin_count();
        Self { triples: vec![0; b], max_x: vec![0.0; b], max_y: vec![0.0; b] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..self.triples.len() {
            self.triples[i] += other.triples[i];
            self.max_x[i] = self.max_x[i].max(other.max_x[i]);
            self.max_y[i] = self.max_y[i].max(other.max_y[i]);
        }
        self
    }
}

/// Samples `triple_samples` uniform triples of distinct points and bins
/// them by `d_X` ratio. Chunk `c` of the sample range draws from ChaCha8
/// stream `c`, so the profile does not depend on the thread count.
pub fn qs_distortion_profile(
    fm_x: &FiniteMetric,
    fm_y: &FiniteMetric,
    correspondence: &[usize],
    triple_samples: usize,
    seed: u64,
) -> Result<DistortionProfile> {
    check_bijection(fm_x, fm_y, correspondence)?;
    let n = fm_x.len();
    if n < 3 {
        return Err(LabError::Degenerate("need at least three points".into()));
    }
    let chunks = triple_samples.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let mut t = Tally::new();
            let count = CHUNK.min(triple_samples - c * CHUNK);
            for _ in 0..count {
                let x = rng.random_range(0..n);
                let y = loop {
                    let y = rng.random_range(0..n);
                    if y != x {
                        break y;
                    }
                };
                let z = loop {
                    let z = rng.random_range(0..n);
                    if z != x && z != y {
                        break z;
                    }
                };
                let rx = fm_x.d(x, y) / fm_x.d(x, z);
                let (fx, fy, fz) = (correspondence[x], correspondence[y], correspondence[z]);
                let ry = fm_y.d(fx, fy) / fm_y.d(fx, fz);
                let b = bin_of(rx);
                t.triples[b] += 1;
                t.max_x[b] = t.max_x[b].max(rx);
                t.max_y[b] = t.max_y[b].max(ry);
            }
            t
        })
        .reduce(Tally::new, Tally::merge);

    let bins: Vec<DistortionBin> = (0..bin_count())
        .map(|i| DistortionBin {
            lo: if i == 0 { 0.0 } else { bin_edge(i) },
            hi: if i + 1 == bin_count() { f64::INFINITY } else { bin_edge(i + 1) },
            triples: tally.triples[i],
            max_x_ratio: tally.max_x[i],
            max_y_ratio: tally.max_y[i],
        })
        .collect();
    let mut running = 0.0f64;
    let envelope = bins
        .iter()
        .map(|b| {
            (b.triples > 0).then(|| {
                running = running.max(b.max_y_ratio);
                running
            })
        })
        .collect();
    Ok(DistortionProfile { bins, envelope })
}

/// `max d_Y(fx_i, fx_j) / d_Y(fx_i, fx_k)` over ordered triples of distinct
/// points of `subset` with `d_X(x_i, x_j) / d_X(x_i, x_k) <= k`: the smallest
/// value a modulus may take at `k` on this subset.
pub fn empirical_modulus(
    fm_x: &FiniteMetric,
    fm_y: &FiniteMetric,
    correspondence: &[usize],
    subset: &[usize],
    k: f64,
) -> Result<f64> {
    check_bijection(fm_x, fm_y, correspondence)?;
    let mut worst = 0.0f64;
    for &i in subset {
        for &j in subset {
            for &l in subset {
                if i == j || i == l || j == l {
                    continue;
                }
                if fm_x.d(i, j) / fm_x.d(i, l) <= k {
                    let (fi, fj, fl) = (correspondence[i], correspondence[j], correspondence[l]);
                    worst = worst.max(fm_y.d(fi, fj) / fm_y.d(fi, fl));
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_points(count: usize, seed: u64) -> FiniteMetric {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        FiniteMetric::from_points((0..count).map(|_| vec![rng.random::<f64>(), rng.random::<f64>()]).collect())
            .unwrap()
    }

    #[test]
    fn identity_is_diagonal() {
        let fm = plane_points(40, 1);
        let id: Vec<usize> = (0..40).collect();
        let p = qs_distortion_profile(&fm, &fm, &id, 20_000, 3).unwrap();
        assert_eq!(p.bins.iter().map(|b| b.triples).sum::<usize>(), 20_000);
        for b in &p.bins {
            assert_eq!(b.max_x_ratio, b.max_y_ratio);
        }
    }

    #[test]
    fn scaled_target_matches_identity() {
        let fm = plane_points(30, 2);
        let scaled = fm.map_distances(|d| 4.0 * d);
        let id: Vec<usize> = (0..30).collect();
        let a = qs_distortion_profile(&fm, &fm, &id, 10_000, 5).unwrap();
        let b = qs_distortion_profile(&fm, &scaled, &id, 10_000, 5).unwrap();
        assert_eq!(a, b);
        let odd = fm.map_distances(|d| 3.0 * d);
        let c = qs_distortion_profile(&fm, &odd, &id, 10_000, 5).unwrap();
        for (x, y) in a.bins.iter().zip(&c.bins) {
            assert!((x.max_y_ratio - y.max_y_ratio).abs() <= 1e-14 * x.max_y_ratio.max(1.0));
        }
    }

    #[test]
    fn clique_onto_line() {
        let n = 8;
        let x = FiniteMetric::uniform(n, 1.0).unwrap();
        let y = FiniteMetric::line_grid(n, 1.0).unwrap();
        let id: Vec<usize> = (0..n).collect();
        let p = qs_distortion_profile(&x, &y, &id, 50_000, 11).unwrap();
        let b = &p.bins[bin_of(1.0)];
        assert!(b.max_y_ratio >= (n - 1) as f64);
    }

    #[test]
    fn envelope_is_monotone() {
        let x = plane_points(25, 4);
        let y = plane_points(25, 5);
        let id: Vec<usize> = (0..25).collect();
        let p = qs_distortion_profile(&x, &y, &id, 30_000, 1).unwrap();
        let vals: Vec<f64> = p.envelope.iter().flatten().copied().collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_non_bijection() {
        let x = plane_points(5, 1);
        assert!(qs_distortion_profile(&x, &x, &[0, 1, 2, 3, 3], 10, 0).is_err());
        assert!(qs_distortion_profile(&x, &x, &[0, 1, 2, 3], 10, 0).is_err());
        assert!(qs_distortion_profile(&x, &x, &[0, 1, 2, 3, 9], 10, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let x = plane_points(25, 4);
        let id: Vec<usize> = (0..25).collect();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = qs_distortion_profile(&x, &x, &id, 30_000, 9).unwrap();
        let b = pool.install(|| qs_distortion_profile(&x, &x, &id, 30_000, 9).unwrap());
        assert_eq!(a, b);
    }
}
