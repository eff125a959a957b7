use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lqglab::analysis::{clique_ratio, snowflake, FiniteMetric};
use lqglab::gff::{
    add_function, make_bump, make_params, sample_zero_boundary, truncated_covariance, truncated_variance, FieldGrid,
    FieldKind,
};
use lqglab::lfpp::{build_metric, distance, distance_matrix, Mask, WeightedGrid};
use lqglab::region::Region;
use lqglab::{GridGeometry, Point};

fn field_from(n: usize, values: Vec<f64>) -> FieldGrid {
    let g = GridGeometry::new(n, 1.0 / (n - 1) as f64, Point::new(0.0, 0.0)).unwrap();
    FieldGrid::new(g, values, FieldKind::ZeroBoundary, 0, 0).unwrap()
}

fn grid_of(field: &FieldGrid) -> WeightedGrid {
    build_metric(field, &make_params((8.0f64 / 3.0).sqrt(), 4.0).unwrap()).unwrap()
}

fn random_values(n: usize, seed: u64, amp: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n * n).map(|_| rng.random_range(-amp..amp)).collect()
}

/// Floyd–Warshall on the 8-neighbour graph with the same edge weights.
fn brute_force(grid: &WeightedGrid) -> Vec<f64> {
    let m = grid.geometry.len();
    let mut d = vec![f64::INFINITY; m * m];
    for v in 0..m {
        d[v * m + v] = 0.0;
        grid.for_each_neighbour(v, |u, w| d[v * m + u] = d[v * m + u].min(w));
    }
    for k in 0..m {
        for i in 0..m {
            let dik = d[i * m + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..m {
                let via = dik + d[k * m + j];
                if via < d[i * m + j] {
                    d[i * m + j] = via;
                }
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_distances_are_a_metric(seed in any::<u64>(), n in 4usize..12) {
        let grid = grid_of(&field_from(n, random_values(n, seed, 2.0)));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let pts: Vec<usize> = (0..6).map(|_| rng.random_range(0..n * n)).collect();
        let dm = distance_matrix(&grid, &pts, None).unwrap();
        let k = pts.len();
        for i in 0..k {
            prop_assert_eq!(dm[i * k + i], 0.0);
            for j in 0..k {
                prop_assert_eq!(dm[i * k + j], dm[j * k + i]);
                if pts[i] != pts[j] {
                    prop_assert!(dm[i * k + j] > 0.0);
                }
                for l in 0..k {
                    prop_assert!(dm[i * k + l] <= (dm[i * k + j] + dm[j * k + l]) * (1.0 + 1e-12));
                }
            }
        }
    }

    #[test]
    fn dijkstra_matches_the_brute_force_oracle(seed in any::<u64>(), n in 3usize..8) {
        let grid = grid_of(&field_from(n, random_values(n, seed, 1.5)));
        let oracle = brute_force(&grid);
        let m = n * n;
        for a in 0..m {
            for b in 0..m {
                let d = distance(&grid, a, b, None).unwrap();
                let o = oracle[a * m + b].min(oracle[b * m + a]);
                prop_assert!((d - o).abs() <= 1e-12 * o.max(1.0), "d({a},{b}) = {d}, oracle {o}");
            }
        }
    }

    #[test]
    fn constant_shift_scales_every_distance(seed in any::<u64>(), shift in -2.0f64..2.0) {
        let n = 16;
        let field = field_from(n, random_values(n, seed, 1.0));
        let base = grid_of(&field);
        let moved = grid_of(&field.shifted(shift));
        let factor = (base.params.xi * shift).exp();
        let pts = [0, 37, 120, 255];
        let d0 = distance_matrix(&base, &pts, None).unwrap();
        let d1 = distance_matrix(&moved, &pts, None).unwrap();
        for (x, y) in d0.iter().zip(&d1) {
            if *x > 0.0 {
                prop_assert!((y / x - factor).abs() <= 1e-12 * factor);
            }
        }
    }

    #[test]
    fn weyl_sandwich_for_bumps(seed in any::<u64>(), amp in -3.0f64..3.0, radius in 0.1f64..0.4) {
        let n = 24;
        let field = field_from(n, random_values(n, seed, 1.0));
        let centre = Point::new(0.5, 0.5);
        let bump = make_bump(field.geometry, Region::disk(centre, radius), Region::disk(centre, radius + 0.1), amp).unwrap();
        let (lo, hi) = bump.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let base = grid_of(&field);
        let tilted = grid_of(&add_function(&field, &bump).unwrap());
        let xi = base.params.xi;
        let pts = [0, 100, 300, 575, 288];
        let d0 = distance_matrix(&base, &pts, None).unwrap();
        let d1 = distance_matrix(&tilted, &pts, None).unwrap();
        for (x, y) in d0.iter().zip(&d1) {
            prop_assert!(*y >= (xi * lo).exp() * x * (1.0 - 1e-12));
            prop_assert!(*y <= (xi * hi).exp() * x * (1.0 + 1e-12));
        }
    }

    #[test]
    fn masked_distances_ignore_the_outside(seed in any::<u64>(), other in any::<u64>()) {
        let n = 20;
        let field = field_from(n, random_values(n, seed, 2.0));
        let g = field.geometry;
        let inside = |v: usize| {
            let (r, c) = g.row_col(v);
            (3..15).contains(&r) && (2..17).contains(&c)
        };
        let mask = Mask::from_fn(&g, inside);
        let noise = random_values(n, other, 5.0);
        let values = field.values.iter().zip(&noise).enumerate()
            .map(|(v, (h, z))| if inside(v) { *h } else { *z })
            .collect();
        let changed = field_from(n, values);
        let pts: Vec<usize> = mask.vertices().into_iter().step_by(17).collect();
        let a = distance_matrix(&grid_of(&field), &pts, Some(&mask)).unwrap();
        let b = distance_matrix(&grid_of(&changed), &pts, Some(&mask)).unwrap();
        prop_assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn finite_metrics_from_points_satisfy_the_axioms(seed in any::<u64>(), k in 3usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<Vec<f64>> = (0..k).map(|_| vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]).collect();
        let fm = FiniteMetric::from_points(points).unwrap();
        for i in 0..k {
            prop_assert_eq!(fm.d(i, i), 0.0);
            for j in 0..k {
                prop_assert_eq!(fm.d(i, j), fm.d(j, i));
                for l in 0..k {
                    prop_assert!(fm.d(i, l) <= fm.d(i, j) + fm.d(j, l) + 1e-12);
                }
            }
        }
    }

    #[test]
    fn snowflakes_compose_and_power_ratios(seed in any::<u64>(), a in 0.2f64..0.95, b in 0.2f64..0.95) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<Vec<f64>> = (0..12).map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)]).collect();
        let fm = FiniteMetric::from_points(points).unwrap();
        let twice = snowflake(&snowflake(&fm, a).unwrap(), b).unwrap();
        let once = snowflake(&fm, a * b).unwrap();
        for (x, y) in twice.matrix().iter().zip(once.matrix()) {
            prop_assert!((x - y).abs() <= 1e-12 * y.max(1e-300));
        }
        let subset = [0, 3, 5, 9];
        let r = clique_ratio(&fm, &subset).unwrap();
        let rb = clique_ratio(&once, &subset).unwrap();
        prop_assert!((rb - r.powf(a * b)).abs() <= 1e-12 * rb);
    }
}

#[test]
fn sampled_variance_and_covariance_match_the_series() {
    let (n, cutoff, samples) = (17, 12, 3000);
    let (i, j) = (8 * n + 8, 6 * n + 10);
    let (mut s_ii, mut s_ij) = (Vec::with_capacity(samples), Vec::with_capacity(samples));
    for seed in 0..samples as u64 {
        let f = sample_zero_boundary(n, cutoff, seed).unwrap();
        s_ii.push(f.values[i] * f.values[i]);
        s_ij.push(f.values[i] * f.values[j]);
    }
    let g = sample_zero_boundary(n, cutoff, 0).unwrap().geometry;
    let (pi, pj) = (g.point(i), g.point(j));
    let var = truncated_variance(pi.re, pi.im, cutoff);
    let cov = truncated_covariance((pi.re, pi.im), (pj.re, pj.im), cutoff);
    for (xs, target) in [(s_ii, var), (s_ij, cov)] {
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();
        let se = sd / m.sqrt();
        assert!((mean - target).abs() <= 5.0 * se, "mean {mean}, series {target}, se {se}");
    }
}
