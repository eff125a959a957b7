use super::config::StarConfig;
use super::layout::StarLayout;
use crate::error::Result;
use crate::lfpp::{diameter, set_distance, Control, Explorer, GridPath, Mask, WeightedGrid};

/// Measured quantities behind the events, in units of `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EventMeasures {
    /// `inf d(z, w)` over sampled `zeta`-separated pairs in `B(7r) \ K^{eps/2}`.
    pub a1_inf: f64,
    /// `d(dB(2r), dB(5r); int K^eps)`.
    pub d_star: f64,
    /// `D = d(dB(2r), dB(5r))`.
    pub annulus: f64,
    /// Internal-metric infimum over sampled `zeta`-separated pairs in
    /// `A_{2r,7r} \ K^{eps/2}`.
    pub e_inf: f64,
    /// `sup` over `A_{(2-u)r,2r}` of the distance to `dB((2-u)r)`.
    pub collar_sup: f64,
    /// Diameter of the closed `(2-u)r` disc in the internal metric of `B((2-u/2)r)`.
    pub f_diam: f64,
    /// Diameter of the closed `2r` disc.
    pub central_diam: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EventFlags {
    pub a1: bool,
    pub e_eta: bool,
    pub f: bool,
    pub g: bool,
}

impl EventMeasures {
    pub fn flags(&self, config: &StarConfig) -> EventFlags {
        let a1 = self.a1_inf > 1.0 / config.c1 && self.d_star <= config.c1;
        let e_eta = self.e_inf >= 2.0 * (self.annulus + config.eta);
        let f = self.collar_sup < config.t / 3.0 && self.f_diam <= config.c2;
        let g = e_eta && self.central_diam < 2.0 * config.delta * self.annulus;
        EventFlags { a1, e_eta, f, g }
    }
}

/// `min d(s, w)` over sources `s` and vertices `w` of `region` with
/// `|s - w| >= zeta`. Each sweep stops at its first such `w` or once it
/// passes the best value found so far.
pub fn separated_infimum(
    grid: &WeightedGrid,
    mask: Option<&Mask>,
    region: &Mask,
    sources: &[usize],
    zeta: f64,
) -> f64 {
    let geometry = &grid.geometry;
    let mut best = f64::INFINITY;
    let mut ex = Explorer::new(grid, mask);
    for &s in sources {
        let ps = geometry.point(s);
        ex.run(&[s], |v, d| {
            if d >= best {
                return Control::Stop;
            }
            if region.get(v) && (geometry.point(v) - ps).norm() >= zeta {
                best = d;
                return Control::Stop;
            }
            Control::Continue
        });
    }
    best
}

/// `sup_{v in targets} d(v, sources)`, from one sweep that stops once every
/// target is settled.
pub fn farthest_from(grid: &WeightedGrid, sources: &[usize], targets: &[usize]) -> f64 {
    let mut is_target = vec![false; grid.geometry.len()];
    targets.iter().for_each(|&t| is_target[t] = true);
    let mut remaining = targets.len();
    let mut sup = 0.0f64;
    let mut ex = Explorer::new(grid, None);
    ex.run(sources, |v, d| {
        if is_target[v] {
            is_target[v] = false;
            sup = sup.max(d);
            remaining -= 1;
            if remaining == 0 {
                return Control::Stop;
            }
        }
        Control::Continue
    });
    if remaining > 0 {
        f64::INFINITY
    } else {
        sup
    }
}

/// Measures every event quantity on `grid`, which must live on the
/// canonical lattice of `layout`.
pub fn evaluate_events(
    grid: &WeightedGrid,
    config: &StarConfig,
    layout: &StarLayout,
) -> Result<(EventFlags, EventMeasures)> {
    let measures = EventMeasures {
        a1_inf: separated_infimum(grid, None, &layout.region_a, &layout.sources_a, layout.zeta),
        d_star: set_distance(grid, &layout.star_ring2, &layout.star_ring5, Some(&layout.star_eps))?,
        annulus: set_distance(grid, &layout.ring2, &layout.ring5, None)?,
        e_inf: separated_infimum(
            grid,
            Some(&layout.region_e),
            &layout.region_e,
            &layout.sources_e,
            layout.zeta,
        ),
        collar_sup: farthest_from(grid, &layout.ring_inner, &layout.collar),
        f_diam: diameter(grid, &layout.disc_inner, Some(&layout.disc_f))?,
        central_diam: diameter(grid, &layout.disc2, None)?,
    };
    Ok((measures.flags(config), measures))
}

/// The located points `z*_i` and what was needed to find them.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPoints {
    /// Arm geodesics `gamma_i` from the centre vertex to the tips inside
    /// `int K^{2 eps}`.
    pub arms: Vec<GridPath>,
    /// `z*_i` per arm, `None` if the arm never reaches distance `D`.
    pub vertices: Vec<Option<usize>>,
    /// `d(z*_i, dB(2r))`.
    pub ring_distances: Vec<f64>,
    /// Largest edge weight along the arm geodesics up to the located
    /// points (whole arms where no point was found).
    pub max_edge: f64,
}

impl StarPoints {
    pub fn all_located(&self) -> bool {
        self.vertices.iter().all(Option::is_some)
    }
}

/// Walks each arm geodesic outward and returns its first vertex outside the
/// closed `2r` disc whose distance to `dB(2r)` reaches `annulus`.
pub fn locate_star_points(grid: &WeightedGrid, layout: &StarLayout, annulus: f64) -> StarPoints {
    let mut ex = Explorer::new(grid, Some(&layout.arms));
    ex.run(&[layout.center], |_, _| Control::Continue);
    let arms: Vec<GridPath> = layout
        .tips
        .iter()
        .map(|&tip| GridPath {
            vertices: ex.path_to(tip).expect("arms are connected by construction"),
            length: ex.dist(tip),
        })
        .collect();

    let mut on_arm = vec![false; grid.geometry.len()];
    let mut remaining = 0usize;
    for v in arms.iter().flat_map(|a| &a.vertices) {
        if !on_arm[*v] {
            on_arm[*v] = true;
            remaining += 1;
        }
    }
    let mut ring = Explorer::new(grid, None);
    ring.run(&layout.ring2, |v, _| {
        if on_arm[v] {
            remaining -= 1;
            if remaining == 0 {
                return Control::Stop;
            }
        }
        Control::Continue
    });

    let geometry = &grid.geometry;
    let mut vertices = Vec::with_capacity(arms.len());
    let mut ring_distances = Vec::with_capacity(arms.len());
    let mut max_edge = 0.0f64;
    for arm in &arms {
        let pos = arm
            .vertices
            .iter()
            .position(|&v| geometry.point(v).norm() > 2.0 && ring.dist(v) >= annulus);
        let walked = &arm.vertices[..pos.map_or(arm.vertices.len(), |p| p + 1)];
        for pair in walked.windows(2) {
            max_edge = max_edge.max(grid.edge_between(pair[0], pair[1]).expect("adjacent"));
        }
        let hit = pos.map(|p| arm.vertices[p]);
        vertices.push(hit);
        ring_distances.push(hit.map_or(f64::NAN, |v| ring.dist(v)));
    }
    StarPoints { arms, vertices, ring_distances, max_edge }
}
