use rayon::prelude::*;

use super::config::StarConfig;
use super::layout::StarLayout;
use super::stats::percentile;
use super::trial::{star_trial_with, trial_seed, TrialResult};
use crate::error::{LabError, Result};
use crate::geometry::Point;

/// Clique-ratio histogram: bins of width `RATIO_BIN` from 1, the last bin
/// open-ended.
pub const RATIO_BIN: f64 = 0.05;
pub const RATIO_BINS: usize = 41;

/// Aggregate of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyTable {
    pub trials: usize,
    pub a1: usize,
    pub e_eta: usize,
    pub f: usize,
    pub g: usize,
    pub located: usize,
    pub success: usize,
    pub ratio_histogram: Vec<usize>,
}

impl FrequencyTable {
    pub fn from_results(results: &[TrialResult]) -> Self {
        let count = |f: &dyn Fn(&TrialResult) -> bool| results.iter().filter(|r| f(r)).count();
        let mut ratio_histogram = vec![0; RATIO_BINS];
        for r in results.iter().filter(|r| r.located()) {
            let bin = ((r.clique_ratio - 1.0) / RATIO_BIN).floor().max(0.0) as usize;
            ratio_histogram[bin.min(RATIO_BINS - 1)] += 1;
        }
        Self {
            trials: results.len(),
            a1: count(&|r| r.flags.a1),
            e_eta: count(&|r| r.flags.e_eta),
            f: count(&|r| r.flags.f),
            g: count(&|r| r.flags.g),
            located: count(&|r| r.located()),
            success: count(&|r| r.success),
            ratio_histogram,
        }
    }

    pub fn frequency(&self, count: usize) -> f64 {
        count as f64 / self.trials as f64
    }

    /// `(name, count)` in a fixed order.
    pub fn counts(&self) -> [(&'static str, usize); 6] {
        [
            ("a1", self.a1),
            ("e_eta", self.e_eta),
            ("f", self.f),
            ("g", self.g),
            ("located", self.located),
            ("success", self.success),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarlo {
    pub results: Vec<TrialResult>,
    pub table: FrequencyTable,
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(LabError::Parameter("workers must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Parameter(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// `trials` independent trials; trial `i` uses seed `trial_seed(config.seed, i)`.
pub fn monte_carlo_with(layout: &StarLayout, config: &StarConfig, trials: usize, workers: usize) -> Result<MonteCarlo> {
    if trials == 0 {
        return Err(LabError::Parameter("trials must be >= 1".into()));
    }
    let results = with_workers(workers, || {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let c = StarConfig { seed: trial_seed(config.seed, i as u64), ..config.clone() };
                star_trial_with(layout, &c)
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let table = FrequencyTable::from_results(&results);
    Ok(MonteCarlo { results, table })
}

pub fn monte_carlo(config: &StarConfig, trials: usize, workers: usize) -> Result<MonteCarlo> {
    monte_carlo_with(&StarLayout::new(config)?, config, trials, workers)
}

/// Stream index reserved for calibration seeds.
const CALIBRATION_STREAM: u64 = 1 << 62;

/// Safety factor in the amplitude rules.
pub const AMPLITUDE_MARGIN: f64 = 2.0;

/// Thresholds and amplitudes from zero-amplitude trials.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    pub trials: usize,
    pub seed: u64,
    pub c1: f64,
    pub c2: f64,
    pub t: f64,
    pub u: f64,
    pub eta: f64,
    pub m_out: f64,
    pub m_in: f64,
}

impl Calibration {
    pub fn apply(&self, config: &StarConfig) -> StarConfig {
        StarConfig {
            c1: self.c1,
            c2: self.c2,
            t: self.t,
            u: self.u,
            eta: self.eta,
            m_out: self.m_out,
            m_in: self.m_in,
            ..config.clone()
        }
    }

    /// `(name, value)` in a fixed order.
    pub fn values(&self) -> [(&'static str, f64); 7] {
        [
            ("c1", self.c1),
            ("c2", self.c2),
            ("t", self.t),
            ("u", self.u),
            ("eta", self.eta),
            ("m_out", self.m_out),
            ("m_in", self.m_in),
        ]
    }
}

/// Picks `C1`, `C2`, `t`, `eta` and the amplitudes from `trials`
/// zero-amplitude trials on seeds independent of the experiment's:
///
/// * `C1`: 90th percentile of `max(1 / a1_inf, d_star)`, so `A^1_{C1}`
///   holds on 90% of fields;
/// * `t = 2 delta * (10th percentile of D)`;
/// * `C2`: 90th percentile of the `F` diameter;
/// * `M` with `e^{xi M} = 2 * margin * C1^2 > 2 C1^2`, and
///   `eta = (e^{xi M} / (2 C1) - C1) / 2`;
/// * `M'` with `e^{xi M'} = margin * 3 C2 / t`, so the central ball shrinks
///   below `t / 3` wherever `F` holds.
pub fn calibrate_with(layout: &StarLayout, config: &StarConfig, trials: usize, workers: usize) -> Result<Calibration> {
    let seed = trial_seed(config.seed, CALIBRATION_STREAM);
    let zero = StarConfig { m_out: 0.0, m_in: 0.0, seed, ..config.clone() };
    let mc = monte_carlo_with(layout, &zero, trials, workers)?;
    let ms: Vec<_> = mc.results.iter().map(|r| r.measures).collect();
    let c1 = percentile(&ms.iter().map(|m| (1.0 / m.a1_inf).max(m.d_star)).collect::<Vec<_>>(), 0.9);
    let t = 2.0 * config.delta * percentile(&ms.iter().map(|m| m.annulus).collect::<Vec<_>>(), 0.1);
    let c2 = percentile(&ms.iter().map(|m| m.f_diam).collect::<Vec<_>>(), 0.9);
    if !(c1.is_finite() && c1 > 0.0 && t > 0.0 && c2.is_finite() && c2 > 0.0) {
        return Err(LabError::Degenerate(format!("calibration gave c1={c1}, t={t}, c2={c2}")));
    }
    let xi = config.params()?.xi;
    let growth = 2.0 * AMPLITUDE_MARGIN * c1 * c1;
    let m_out = growth.ln() / xi;
    let eta = 0.5 * (growth / (2.0 * c1) - c1);
    let m_in = (AMPLITUDE_MARGIN * 3.0 * c2 / t).ln().max(0.0) / xi;
    Ok(Calibration { trials, seed, c1, c2, t, u: config.u, eta, m_out, m_in })
}

pub fn calibrate(config: &StarConfig, trials: usize, workers: usize) -> Result<Calibration> {
    calibrate_with(&StarLayout::new(config)?, config, trials, workers)
}

/// Centre `3 * 2^{-2k-2}` and radius `2^{-2k-6}` of the depth-`k` star, so
/// that `B(z^(k), 8 r^(k))` sits inside `A_{2^{-2k-1}, 2^{-2k}}(0)`.
pub fn scan_center(depth: usize) -> (Point, f64) {
    let k = depth as i32;
    (Point::new(3.0 * 2f64.powi(-2 * k - 2), 0.0), 2f64.powi(-2 * k - 6))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub base_seed: u64,
    /// Trial at depth `k` is `trials[k - 1]`.
    pub trials: Vec<TrialResult>,
    pub first_success: Option<usize>,
}

/// Runs the star trial at depths `1..=max_depth`, each recentred at
/// `scan_center(k)` with seed `trial_seed(base_seed, k - 1)`. Trials are
/// computed in the canonical frame, so the lattice resolves every depth
/// exactly when it resolves the first.
pub fn annulus_scan_with(
    layout: &StarLayout,
    base_seed: u64,
    template: &StarConfig,
    max_depth: usize,
) -> Result<ScanReport> {
    if max_depth == 0 {
        return Err(LabError::Parameter("max_depth must be >= 1".into()));
    }
    let mut trials = Vec::with_capacity(max_depth);
    for k in 1..=max_depth {
        let (z0, r) = scan_center(k);
        let c = StarConfig { z0, r, seed: trial_seed(base_seed, k as u64 - 1), ..template.clone() };
        trials.push(star_trial_with(layout, &c)?);
    }
    let first_success = trials.iter().position(|t| t.success).map(|i| i + 1);
    Ok(ScanReport { base_seed, trials, first_success })
}

pub fn annulus_scan(base_seed: u64, template: &StarConfig, max_depth: usize) -> Result<ScanReport> {
    annulus_scan_with(&StarLayout::new(template)?, base_seed, template, max_depth)
}

/// Independent scans over several base seeds.
pub fn scan_many(
    layout: &StarLayout,
    base_seeds: &[u64],
    template: &StarConfig,
    max_depth: usize,
    workers: usize,
) -> Result<Vec<ScanReport>> {
    with_workers(workers, || {
        base_seeds
            .par_iter()
            .map(|&b| annulus_scan_with(layout, b, template, max_depth))
            .collect::<Result<Vec<_>>>()
    })?
}
