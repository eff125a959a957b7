//! Lattice first-passage metrics induced by a field.

mod explore;
mod grid;
mod queries;

pub use explore::{Control, Explorer};
pub use grid::{build_metric, Mask, WeightedGrid};
pub use queries::{
    diameter, distance, distance_matrix, distances_to, geodesic, metric_ball, set_distance,
    GridPath, DISCONNECTED,
};

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::geometry::{GridGeometry, Point};
    use crate::gff::{make_params, FieldGrid, FieldKind};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn zero_grid(n: usize, spacing: f64) -> WeightedGrid {
        let g = GridGeometry::new(n, spacing, Point::new(0.0, 0.0)).unwrap();
        build_metric(&FieldGrid::constant(g, 0.0), &make_params(1.0, 2.5).unwrap()).unwrap()
    }

    pub fn random_field(n: usize, seed: u64) -> FieldGrid {
        let g = GridGeometry::new(n, 1.0, Point::new(0.0, 0.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..g.len()).map(|_| rng.random_range(-2.0..2.0)).collect();
        FieldGrid::new(g, values, FieldKind::ZeroBoundary, 0, seed).unwrap()
    }

    pub fn random_grid(n: usize, seed: u64) -> WeightedGrid {
        build_metric(&random_field(n, seed), &make_params(1.5, 3.0).unwrap()).unwrap()
    }
}
