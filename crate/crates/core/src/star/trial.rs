use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::StarConfig;
use super::events::{evaluate_events, locate_star_points, EventFlags, EventMeasures};
use super::layout::StarLayout;
use crate::analysis::{clique_ratio, FiniteMetric};
use crate::error::Result;
use crate::geometry::Point;
use crate::gff::{add_function, sample_whole_plane_proxy, FieldGrid, FieldKind};
use crate::lfpp::{build_metric, distance_matrix, Explorer, WeightedGrid};

/// Outcome of one star trial. Distances are in units of `r`; points are
/// physical.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub z0: Point,
    pub r: f64,
    pub flags: EventFlags,
    pub measures: EventMeasures,
    /// `z*_i` as lattice vertices, empty unless every arm crossed.
    pub star_vertices: Vec<usize>,
    pub star_points: Vec<Point>,
    /// `d(z*_i, dB(2r))`, NaN for arms that never crossed.
    pub ring_distances: Vec<f64>,
    /// Pairwise distances of the `z*_i`, row-major.
    pub pairwise: Vec<f64>,
    pub max_edge: f64,
    /// `2 max_edge / D`.
    pub allowance: f64,
    /// Clique ratio of the `z*_i` as scored by the analysis module; NaN if
    /// they were not all located.
    pub clique_ratio: f64,
    pub success: bool,
}

impl TrialResult {
    pub fn located(&self) -> bool {
        !self.star_vertices.is_empty()
    }

    /// `(1 + delta)(1 + allowance)`.
    pub fn ratio_bound(&self, config: &StarConfig) -> f64 {
        (1.0 + config.delta) * (1.0 + self.allowance)
    }
}

/// Seed of trial `index` in a run with base seed `base`: the first output of
/// ChaCha8 stream `index`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(index);
    rng.next_u64()
}

/// A whole-plane proxy sample placed on the canonical lattice of `layout`.
pub fn sample_canonical(layout: &StarLayout, config: &StarConfig, seed: u64) -> Result<FieldGrid> {
    let n = layout.geometry.n;
    let proxy = sample_whole_plane_proxy(n, config.pad_factor, config.cutoff(), seed)?;
    FieldGrid::new(layout.geometry, proxy.values, FieldKind::WholePlaneProxy, config.cutoff(), seed)
}

/// `h + m_out psi - m_in sigma`.
pub fn modified_field(layout: &StarLayout, config: &StarConfig, h: &FieldGrid) -> Result<FieldGrid> {
    let with_psi = add_function(h, &layout.psi.scaled(config.m_out))?;
    add_function(&with_psi, &layout.sigma.scaled(-config.m_in))
}

/// The metric a trial explores.
pub fn trial_metric(layout: &StarLayout, config: &StarConfig, h: &FieldGrid) -> Result<WeightedGrid> {
    build_metric(&modified_field(layout, config, h)?, &config.params()?)
}

/// Runs the event chain on the canonical field `h`.
pub fn run_trial(layout: &StarLayout, config: &StarConfig, h: &FieldGrid) -> Result<TrialResult> {
    let grid = trial_metric(layout, config, h)?;
    let (flags, measures) = evaluate_events(&grid, config, layout)?;
    let points = locate_star_points(&grid, layout, measures.annulus);
    let allowance = 2.0 * points.max_edge / measures.annulus;
    let mut result = TrialResult {
        seed: h.seed,
        z0: config.z0,
        r: config.r,
        flags,
        measures,
        star_vertices: Vec::new(),
        star_points: Vec::new(),
        ring_distances: points.ring_distances.clone(),
        pairwise: Vec::new(),
        max_edge: points.max_edge,
        allowance,
        clique_ratio: f64::NAN,
        success: false,
    };
    if points.all_located() {
        let vs: Vec<usize> = points.vertices.iter().map(|v| v.expect("located")).collect();
        let pairwise = distance_matrix(&grid, &vs, None)?;
        let fm = FiniteMetric::from_matrix(pairwise.clone())?;
        let all: Vec<usize> = (0..vs.len()).collect();
        result.clique_ratio = clique_ratio(&fm, &all)?;
        result.star_points = vs.iter().map(|&v| layout.physical(v, config.z0, config.r)).collect();
        result.star_vertices = vs;
        result.pairwise = pairwise;
        result.success = flags.g && result.clique_ratio <= result.ratio_bound(config);
    }
    Ok(result)
}

/// Samples the field for `config.seed` and runs one trial.
pub fn star_trial_with(layout: &StarLayout, config: &StarConfig) -> Result<TrialResult> {
    let h = sample_canonical(layout, config, config.seed)?;
    run_trial(layout, config, &h)
}

/// One trial from scratch.
pub fn star_trial(config: &StarConfig) -> Result<TrialResult> {
    star_trial_with(&StarLayout::new(config)?, config)
}

/// The modified field and the distance from `z0` for heatmaps, both on the
/// physical lattice.
pub fn trial_maps(layout: &StarLayout, config: &StarConfig) -> Result<(FieldGrid, Vec<f64>)> {
    let h = sample_canonical(layout, config, config.seed)?;
    let mut field = modified_field(layout, config, &h)?;
    let grid = build_metric(&field, &config.params()?)?;
    let dist = Explorer::new(&grid, None).full_sweep(&[layout.center]);
    field.geometry = layout.physical_geometry(config.z0, config.r);
    let dist = dist.into_iter().map(|d| d * config.r).collect();
    Ok((field, dist))
}
