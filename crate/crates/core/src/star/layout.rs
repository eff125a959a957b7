//! Lattice discretisation of the star geometry.
//!
//! Every trial runs in the canonical frame `z0 = 0, r = 1` on the square
//! `[-9, 9]^2`; physical coordinates are recovered through the similarity
//! `p -> z0 + r p`. Distances in this frame are physical distances in units
//! of `r`, since the lattice spacing scales with `r`.

use std::collections::VecDeque;

use super::config::StarConfig;
use super::polygon::{zeta_of_epsilon, StarPolygon};
use crate::error::{LabError, Result};
use crate::geometry::{GridGeometry, Point};
use crate::gff::{make_bump, BumpField};
use crate::lfpp::Mask;
use crate::region::{Polygon, Region};

/// Half-width of the canonical domain in units of `r`.
pub const HALF_SIDE: f64 = 9.0;

/// Largest lattice side tried when searching for a sufficient resolution.
pub const MAX_SEARCH_N: usize = 4096;

/// Vertex sets, masks and unit bumps shared by all trials of one config.
#[derive(Clone, Debug)]
pub struct StarLayout {
    pub geometry: GridGeometry,
    pub star: StarPolygon,
    pub zeta: f64,
    /// Vertex nearest to `z0`.
    pub center: usize,
    /// Vertices of `int K^{2 eps}` nearest to the arm tips.
    pub tips: Vec<usize>,
    pub ring2: Vec<usize>,
    pub ring5: Vec<usize>,
    /// Ring at radius `2 - u`.
    pub ring_inner: Vec<usize>,
    /// `A_{2-u, 2}`.
    pub collar: Vec<usize>,
    /// Closed disc of radius 2.
    pub disc2: Vec<usize>,
    /// Closed disc of radius `2 - u`.
    pub disc_inner: Vec<usize>,
    /// `B(7) \ K^{eps/2}` and its sweep sources.
    pub region_a: Mask,
    pub sources_a: Vec<usize>,
    /// `A_{2,7} \ K^{eps/2}` and its sweep sources.
    pub region_e: Mask,
    pub sources_e: Vec<usize>,
    /// `int K^eps` and the radius-2 and radius-5 rings inside it.
    pub star_eps: Mask,
    pub star_ring2: Vec<usize>,
    pub star_ring5: Vec<usize>,
    /// `int K^{2 eps}`.
    pub arms: Mask,
    /// Open disc of radius `2 - u/2`.
    pub disc_f: Mask,
    /// Unit-amplitude bumps. `psi` is 1 on `B(7) \ K^{eps/2}` outside the
    /// closed disc of radius 2 and vanishes off `B(8) \ K^eps` and on that
    /// disc; `sigma` is 1 on `B(2 - u/2)` and vanishes off `B(2)`.
    pub psi: BumpField,
    pub sigma: BumpField,
}

fn every_nth(mask: &Mask, stride: usize) -> Vec<usize> {
    mask.vertices().into_iter().step_by(stride).collect()
}

/// Vertices reachable from `sources` through 8-neighbour steps in `mask`.
pub(crate) fn reachable(geometry: &GridGeometry, mask: &Mask, sources: &[usize]) -> Vec<bool> {
    let n = geometry.n as isize;
    let mut seen = vec![false; geometry.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if mask.get(s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let (row, col) = geometry.row_col(v);
        for dr in -1isize..=1 {
            for dc in -1isize..=1 {
                let (r2, c2) = (row as isize + dr, col as isize + dc);
                if (dr, dc) == (0, 0) || r2 < 0 || c2 < 0 || r2 >= n || c2 >= n {
                    continue;
                }
                let u = geometry.index(r2 as usize, c2 as usize);
                if mask.get(u) && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    seen
}

struct Discrete {
    geometry: GridGeometry,
    star: StarPolygon,
    zeta: f64,
    center: usize,
    tips: Vec<usize>,
    ring2: Vec<usize>,
    ring5: Vec<usize>,
    ring_inner: Vec<usize>,
    collar: Vec<usize>,
    disc2: Vec<usize>,
    disc_inner: Vec<usize>,
    region_a: Mask,
    region_e: Mask,
    star_eps: Mask,
    star_ring2: Vec<usize>,
    star_ring5: Vec<usize>,
    arms: Mask,
    disc_f: Mask,
    k_half: Polygon,
    k_eps: Polygon,
}

/// Builds the vertex sets at lattice side `n`, or names the first set that
/// the lattice cannot resolve.
fn discretise(config: &StarConfig, n: usize) -> std::result::Result<Discrete, String> {
    let origin = Point::new(0.0, 0.0);
    let geometry = GridGeometry::centered(n, 2.0 * HALF_SIDE, origin).map_err(|e| e.to_string())?;
    let star = StarPolygon::new(config.n_arms, origin, 1.0);
    let eps = config.epsilon;
    let u = config.u;
    let k_half = star.shrink(eps / 2.0);
    let k_eps = star.shrink(eps);
    let k_arms = star.shrink(2.0 * eps);
    let nonempty = |v: Vec<usize>, what: &str| {
        if v.is_empty() {
            Err(format!("{what} contains no lattice vertex"))
        } else {
            Ok(v)
        }
    };
    let ring2 = nonempty(geometry.ring(origin, 2.0), "circle of radius 2r")?;
    let ring5 = nonempty(geometry.ring(origin, 5.0), "circle of radius 5r")?;
    let ring_inner = nonempty(geometry.ring(origin, 2.0 - u), "circle of radius (2-u)r")?;
    let collar = nonempty(
        geometry.select(|p| {
            let d = p.norm();
            d > 2.0 - u && d < 2.0
        }),
        "collar A_{(2-u)r,2r}",
    )?;
    let disc2 = geometry.closed_disc(origin, 2.0);
    let disc_inner = nonempty(geometry.closed_disc(origin, 2.0 - u), "disc of radius (2-u)r")?;
    let disc_f = Mask::from_points(&geometry, |p| p.norm() < 2.0 - u / 2.0);

    let outside_half: Vec<bool> = (0..geometry.len()).map(|i| !k_half.contains(geometry.point(i))).collect();
    let region_a = Mask::from_fn(&geometry, |i| outside_half[i] && geometry.point(i).norm() < 7.0);
    let region_e = Mask::from_fn(&geometry, |i| {
        let d = geometry.point(i).norm();
        outside_half[i] && d > 2.0 && d < 7.0
    });
    if region_a.count() == 0 || region_e.count() == 0 {
        return Err("region outside K^{eps/2} contains no lattice vertex".into());
    }

    let star_eps = Mask::from_points(&geometry, |p| k_eps.contains_strict(p));
    let star_ring2: Vec<usize> = ring2.iter().copied().filter(|&v| star_eps.get(v)).collect();
    let star_ring5: Vec<usize> = ring5.iter().copied().filter(|&v| star_eps.get(v)).collect();
    let seen = reachable(&geometry, &star_eps, &star_ring2);
    if !star_ring5.iter().any(|&v| seen[v]) {
        return Err("int K^eps does not connect the circles of radius 2r and 5r".into());
    }

    let arms = Mask::from_points(&geometry, |p| k_arms.contains_strict(p));
    let center = geometry.nearest(origin).expect("origin is inside the domain");
    if !arms.get(center) {
        return Err("vertex nearest z0 lies outside int K^{2 eps}".into());
    }
    let seen = reachable(&geometry, &arms, &[center]);
    let mut tips = Vec::with_capacity(config.n_arms);
    for (i, tip) in star.tips().into_iter().enumerate() {
        let best = arms
            .vertices()
            .into_iter()
            .filter(|&v| seen[v])
            .min_by(|&a, &b| {
                let (da, db) = ((geometry.point(a) - tip).norm(), (geometry.point(b) - tip).norm());
                da.total_cmp(&db).then(a.cmp(&b))
            });
        match best {
            Some(v) if (geometry.point(v) - tip).norm() <= geometry.spacing => tips.push(v),
            _ => return Err(format!("arm {} of int K^{{2 eps}} is not connected to its tip", i + 1)),
        }
    }
    let zeta = zeta_of_epsilon(&star, eps);
    Ok(Discrete {
        geometry,
        star,
        zeta,
        center,
        tips,
        ring2,
        ring5,
        ring_inner,
        collar,
        disc2,
        disc_inner,
        region_a,
        region_e,
        star_eps,
        star_ring2,
        star_ring5,
        arms,
        disc_f,
        k_half,
        k_eps,
    })
}

/// Smallest lattice side above `from` on a 10% ladder that resolves every
/// set, or `MAX_SEARCH_N + 1` if none up to `MAX_SEARCH_N` does.
pub fn min_grid_n(config: &StarConfig, from: usize) -> usize {
    let mut n = from.max(16);
    while n <= MAX_SEARCH_N {
        if discretise(config, n).is_ok() {
            return n;
        }
        n = (n + n / 10).max(n + 1);
    }
    MAX_SEARCH_N + 1
}

impl StarLayout {
    pub fn new(config: &StarConfig) -> Result<Self> {
        config.validate()?;
        let d = match discretise(config, config.grid_n) {
            Ok(d) => d,
            Err(what) => {
                return Err(LabError::Resolution {
                    what,
                    min_grid_n: min_grid_n(config, config.grid_n + 1),
                })
            }
        };
        let origin = Point::new(0.0, 0.0);
        let mut psi = make_bump(
            d.geometry,
            Region::disk(origin, 7.0).minus(Region::Polygon(d.k_half)),
            Region::disk(origin, 8.0).minus(Region::Polygon(d.k_eps)),
            1.0,
        )?;
        // psi never acts on the closed central disc: there it would fight
        // sigma, and no event needs it
        for v in &d.disc2 {
            psi.values[*v] = 0.0;
        }
        let sigma = make_bump(
            d.geometry,
            Region::disk(origin, 2.0 - config.u / 2.0),
            Region::disk(origin, 2.0),
            1.0,
        )?;
        Ok(Self {
            sources_a: every_nth(&d.region_a, config.source_stride),
            sources_e: every_nth(&d.region_e, config.source_stride),
            geometry: d.geometry,
            star: d.star,
            zeta: d.zeta,
            center: d.center,
            tips: d.tips,
            ring2: d.ring2,
            ring5: d.ring5,
            ring_inner: d.ring_inner,
            collar: d.collar,
            disc2: d.disc2,
            disc_inner: d.disc_inner,
            region_a: d.region_a,
            region_e: d.region_e,
            star_eps: d.star_eps,
            star_ring2: d.star_ring2,
            star_ring5: d.star_ring5,
            arms: d.arms,
            disc_f: d.disc_f,
            psi,
            sigma,
        })
    }

    /// Physical position of a vertex for a trial centred at `z0` with radius `r`.
    pub fn physical(&self, v: usize, z0: Point, r: f64) -> Point {
        z0 + self.geometry.point(v) * r
    }

    /// The lattice in physical coordinates.
    pub fn physical_geometry(&self, z0: Point, r: f64) -> GridGeometry {
        GridGeometry::centered(self.geometry.n, 2.0 * HALF_SIDE * r, z0).expect("valid geometry")
    }
}
