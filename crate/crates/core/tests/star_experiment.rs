use lqglab::analysis::{clique_ratio, FiniteMetric};
use lqglab::geometry::GridGeometry;
use lqglab::gff::FieldGrid;
use lqglab::lfpp::{build_metric, distance_matrix, set_distance};
use lqglab::star::*;
use lqglab::Point;

fn small() -> StarConfig {
    StarConfig { grid_n: 161, seed: 5, ..StarConfig::default() }
}

fn calibrated(layout: &StarLayout, base: &StarConfig) -> StarConfig {
    calibrate_with(layout, base, 12, 2).unwrap().apply(base)
}

#[test]
fn constant_field_events_are_finite() {
    let cfg = small();
    let layout = StarLayout::new(&cfg).unwrap();
    let h = FieldGrid::constant(layout.geometry, 0.0);
    let r = run_trial(&layout, &cfg, &h).unwrap();
    let m = r.measures;
    for x in [m.a1_inf, m.d_star, m.annulus, m.e_inf, m.collar_sup, m.f_diam, m.central_diam] {
        assert!(x.is_finite() && x > 0.0, "{m:?}");
    }
    // A^1_C holds once C exceeds both 1/inf and d_star
    let c = StarConfig { c1: 2.0 * (1.0 / m.a1_inf).max(m.d_star), ..cfg };
    assert!(m.flags(&c).a1);
    // the crossing inside the star cannot beat the free crossing
    assert!(m.d_star >= m.annulus);
}

#[test]
fn four_arms_are_symmetric_on_the_zero_field() {
    let cfg = StarConfig { n_arms: 4, grid_n: 161, ..StarConfig::default() };
    let layout = StarLayout::new(&cfg).unwrap();
    let h = FieldGrid::constant(layout.geometry, 0.0);
    let r = run_trial(&layout, &cfg, &h).unwrap();
    assert!(r.located());
    let spacing = layout.geometry.spacing * cfg.r;
    let quarter = Point::new(0.0, 1.0);
    for i in 0..4 {
        let rotated = (r.star_points[i] - cfg.z0) * quarter + cfg.z0;
        let next = r.star_points[(i + 1) % 4];
        assert!((rotated - next).norm() <= spacing * 1.5, "arm {i}: {rotated} vs {next}");
    }
}

#[test]
fn located_points_bracket_the_annulus_distance() {
    let cfg = small();
    let layout = StarLayout::new(&cfg).unwrap();
    let h = sample_canonical(&layout, &cfg, 17).unwrap();
    let grid = trial_metric(&layout, &cfg, &h).unwrap();
    let d = set_distance(&grid, &layout.ring2, &layout.ring5, None).unwrap();
    let pts = locate_star_points(&grid, &layout, d);
    assert!(pts.all_located());
    for (v, rd) in pts.vertices.iter().zip(&pts.ring_distances) {
        let v = v.unwrap();
        let p = layout.geometry.point(v);
        assert!(p.norm() > 2.0);
        assert!(layout.arms.get(v));
        assert!(*rd >= d && *rd <= d + pts.max_edge, "{rd} vs D={d}");
    }
}

#[test]
fn clique_bounds_on_calibrated_trials() {
    let base = small();
    let layout = StarLayout::new(&base).unwrap();
    let cfg = calibrated(&layout, &base);
    let mc = monte_carlo_with(&layout, &cfg, 6, 2).unwrap();
    let mut successes = 0;
    for r in &mc.results {
        assert!(!r.flags.g || r.flags.e_eta);
        if !r.located() {
            continue;
        }
        let n = r.star_vertices.len();
        let d = r.measures.annulus;
        if r.flags.e_eta {
            for i in 0..n {
                for j in (i + 1)..n {
                    assert!(r.pairwise[i * n + j] >= 2.0 * d - 2.0 * r.max_edge);
                }
            }
        }
        if r.success {
            successes += 1;
            // independent re-score through the analysis module
            let fm = FiniteMetric::from_matrix(r.pairwise.clone()).unwrap();
            let all: Vec<usize> = (0..n).collect();
            assert!(clique_ratio(&fm, &all).unwrap() <= r.ratio_bound(&cfg));
            for i in 0..n {
                for j in (i + 1)..n {
                    let via = r.ring_distances[i] + r.ring_distances[j] + r.measures.central_diam;
                    assert!(r.pairwise[i * n + j] <= via * (1.0 + 1e-12));
                }
            }
        }
    }
    assert!(successes > 0, "{:?}", mc.table);
}

#[test]
fn tilts_move_the_measures_monotonically() {
    let base = small();
    let layout = StarLayout::new(&base).unwrap();
    let h = sample_canonical(&layout, &base, 3).unwrap();
    let mut last_inf = 0.0;
    let mut last_flag = false;
    for m_out in [0.0, 5.0, 10.0, 20.0] {
        let c = StarConfig { m_out, eta: 0.1, ..base.clone() };
        let r = run_trial(&layout, &c, &h).unwrap();
        assert!(r.measures.e_inf >= last_inf);
        assert!(r.flags.e_eta || !last_flag);
        last_inf = r.measures.e_inf;
        last_flag = r.flags.e_eta;
    }
    assert!(last_flag);
    let mut last_diam = f64::INFINITY;
    for m_in in [0.0, 2.0, 6.0, 12.0] {
        let c = StarConfig { m_in, ..base.clone() };
        let r = run_trial(&layout, &c, &h).unwrap();
        assert!(r.measures.central_diam <= last_diam);
        last_diam = r.measures.central_diam;
    }
}

#[test]
fn psi_tilt_is_exact_weyl_scaling_inside_the_plateau() {
    let base = small();
    let layout = StarLayout::new(&base).unwrap();
    let h = sample_canonical(&layout, &base, 8).unwrap();
    let a = run_trial(&layout, &base, &h).unwrap();
    let m = 6.0;
    let b = run_trial(&layout, &StarConfig { m_out: m, ..base.clone() }, &h).unwrap();
    let xi = base.params().unwrap().xi;
    let ratio = b.measures.e_inf / a.measures.e_inf;
    assert!((ratio / (xi * m).exp() - 1.0).abs() < 1e-9, "{ratio}");
    // the crossing inside the star does not see psi
    assert_eq!(a.measures.d_star, b.measures.d_star);
}

#[test]
fn monte_carlo_is_worker_independent() {
    let cfg = StarConfig { grid_n: 129, seed: 11, ..StarConfig::default() };
    let layout = StarLayout::new(&cfg).unwrap();
    let one = monte_carlo_with(&layout, &cfg, 5, 1).unwrap();
    let three = monte_carlo_with(&layout, &cfg, 5, 3).unwrap();
    assert_eq!(one.results.len(), 5);
    for (a, b) in one.results.iter().zip(&three.results) {
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
    let t = &one.table;
    assert_eq!(t.trials, 5);
    assert!(t.g <= t.e_eta);
    assert_eq!(t.ratio_histogram.iter().sum::<usize>(), t.located);
    for (_, c) in t.counts() {
        assert!(c <= t.trials);
    }
}

#[test]
fn scan_depth_one_is_a_recentred_trial() {
    let cfg = StarConfig { grid_n: 129, seed: 21, ..StarConfig::default() };
    let layout = StarLayout::new(&cfg).unwrap();
    let scan = annulus_scan_with(&layout, 21, &cfg, 2).unwrap();
    let plain = star_trial_with(&layout, &StarConfig { seed: trial_seed(21, 0), ..cfg.clone() }).unwrap();
    let d1 = &scan.trials[0];
    assert_eq!(d1.measures, plain.measures);
    assert_eq!(d1.star_vertices, plain.star_vertices);
    assert_eq!(d1.clique_ratio, plain.clique_ratio);
    assert_eq!(d1.flags, plain.flags);
    for (k, t) in scan.trials.iter().enumerate() {
        let (z, r) = scan_center(k + 1);
        assert_eq!((t.z0, t.r), (z, r));
        let (inner, outer) = (2f64.powi(-2 * (k as i32 + 1) - 1), 2f64.powi(-2 * (k as i32 + 1)));
        assert!(z.re - 8.0 * r >= inner && z.re + 8.0 * r <= outer);
        for p in &t.star_points {
            assert!((p - z).norm() < 8.0 * r);
            assert!(p.norm() > inner && p.norm() < outer);
        }
    }
}

#[test]
fn calibration_follows_the_amplitude_rule() {
    let cfg = StarConfig { grid_n: 129, ..StarConfig::default() };
    let cal = calibrate(&cfg, 8, 2).unwrap();
    let xi = cfg.params().unwrap().xi;
    assert!((xi * cal.m_out).exp() > 2.0 * cal.c1 * cal.c1);
    assert!(cal.eta > 0.0 && cal.eta < (xi * cal.m_out).exp() / (2.0 * cal.c1) - cal.c1);
    assert!((xi * cal.m_in).exp() >= 3.0 * cal.c2 / cal.t);
    cal.apply(&cfg).validate().unwrap();
}

#[test]
fn resolution_error_names_a_grid() {
    let cfg = StarConfig { grid_n: 40, ..StarConfig::default() };
    match star_trial(&cfg) {
        Err(lqglab::LabError::Resolution { min_grid_n, .. }) => assert!(min_grid_n > 40),
        other => panic!("{other:?}"),
    }
}

#[test]
fn physical_maps_use_the_trial_frame() {
    let cfg = StarConfig { grid_n: 129, z0: Point::new(1.0, -2.0), r: 0.5, ..StarConfig::default() };
    let layout = StarLayout::new(&cfg).unwrap();
    let (field, dist) = trial_maps(&layout, &cfg).unwrap();
    let g: GridGeometry = field.geometry;
    assert!((g.center() - cfg.z0).norm() < 1e-12);
    assert!((g.side() - 18.0 * cfg.r).abs() < 1e-12);
    assert_eq!(dist[layout.center], 0.0);
    let grid = build_metric(&FieldGrid { geometry: layout.geometry, ..field.clone() }, &cfg.params().unwrap()).unwrap();
    let row = distance_matrix(&grid, &[layout.center, 0], None).unwrap();
    assert!((row[1] * cfg.r - dist[0]).abs() <= 1e-12 * dist[0]);
}
