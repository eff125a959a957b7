//! Subcommand bodies. Every output is rendered in memory, then written once
//! and hashed into the manifest.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use lqglab::analysis::{
    assouad_estimate, auto_scales, find_clique, ramsey_refine, snowflake, spread_centers,
};
use lqglab::gff::{make_params, sample_whole_plane_proxy, sample_zero_boundary};
use lqglab::io::{
    calibration_json, comparison_json, fmt17, frequency_json, read_distance_matrix, read_lqgf,
    read_points, star_config_from_str, star_config_to_string, write_assouad, write_clique_report, write_lqgf,
    write_path, write_pgm16, write_scans, write_trials,
};
use lqglab::lfpp::{build_metric, diameter, distance, geodesic, Control, Explorer, WeightedGrid};
use lqglab::star::{
    calibrate_with, monte_carlo_with, scan_many, trial_maps, trial_seed, StarConfig, StarLayout,
};

use crate::error::{CliError, CliResult};
use crate::manifest::{json_bytes, Outputs};
use crate::{AnalyzeArgs, ConfigArgs, Kind, MetricArgs, SampleArgs, ScanArgs, StarArgs};

const MANIFEST: &str = "manifest.json";

fn render(f: impl FnOnce(&mut Vec<u8>) -> lqglab::Result<()>) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

fn file_name(path: &Path) -> CliResult<String> {
    path.file_name()
        .and_then(|s| s.to_str())
        .map(str::to_string)
        .ok_or_else(|| CliError::usage(format!("not a file path: {}", path.display())))
}

fn sidecar_manifest(path: &Path) -> CliResult<String> {
    Ok(format!("{}.manifest.json", file_name(path)?))
}

pub fn sample(a: &SampleArgs) -> CliResult<()> {
    let field = match a.kind {
        Kind::Zero => sample_zero_boundary(a.n, a.cutoff, a.seed)?,
        Kind::Proxy => sample_whole_plane_proxy(a.n, a.pad, a.cutoff, a.seed)?,
    };
    let field = if a.shift != 0.0 { field.shifted(a.shift) } else { field };
    let bytes = render(|b| write_lqgf(b, &field))?;
    let mut out = Outputs::beside(&a.out);
    out.put(&file_name(&a.out)?, &bytes)?;
    let config = json!({
        "n": a.n,
        "cutoff": a.cutoff,
        "seed": a.seed,
        "kind": format!("{:?}", a.kind).to_lowercase(),
        "pad": a.pad,
        "shift": a.shift,
    });
    out.finish(&sidecar_manifest(&a.out)?, "sample", config, &[a.seed])
}

enum Query {
    Dist(usize, usize),
    Ball(usize, f64),
    Diam(usize, f64),
}

fn parse_vertex(s: &str, n: usize) -> Option<usize> {
    let (r, c) = s.split_once(',')?;
    let (r, c): (usize, usize) = (r.trim().parse().ok()?, c.trim().parse().ok()?);
    (r < n && c < n).then_some(r * n + c)
}

fn parse_query(s: &str, n: usize) -> CliResult<Query> {
    let bad = || CliError::usage(format!("bad query `{s}`; expected dist:R,C:R,C, ball:R,C:S or diam:R,C:S with indices below {n}"));
    let mut parts = s.split(':');
    let (kind, a, b) = (parts.next(), parts.next(), parts.next());
    if parts.next().is_some() {
        return Err(bad());
    }
    let (kind, a, b) = (kind.ok_or_else(bad)?, a.ok_or_else(bad)?, b.ok_or_else(bad)?);
    let a = parse_vertex(a, n).ok_or_else(bad)?;
    let radius = || b.trim().parse::<f64>().ok().filter(|r| r.is_finite() && *r >= 0.0).ok_or_else(bad);
    match kind {
        "dist" => Ok(Query::Dist(a, parse_vertex(b, n).ok_or_else(bad)?)),
        "ball" => Ok(Query::Ball(a, radius()?)),
        "diam" => Ok(Query::Diam(a, radius()?)),
        _ => Err(bad()),
    }
}

/// Members of the open metric ball and the largest distance among them.
fn ball_extent(grid: &WeightedGrid, center: usize, radius: f64) -> (usize, f64) {
    let (mut count, mut reach) = (0, 0.0f64);
    Explorer::new(grid, None).run(&[center], |_, d| {
        if d < radius {
            count += 1;
            reach = reach.max(d);
            Control::Continue
        } else {
            Control::Stop
        }
    });
    (count, reach)
}

pub fn metric(a: &MetricArgs) -> CliResult<()> {
    let field = read_lqgf(fs::File::open(&a.field)?)?;
    let params = make_params(a.gamma, a.d_gamma)?;
    let grid = build_metric(&field, &params)?;
    let n = field.n();
    let queries = a.queries.iter().map(|q| parse_query(q, n)).collect::<CliResult<Vec<_>>>()?;
    let rc = |v: usize| {
        let (r, c) = field.geometry.row_col(v);
        (r.to_string(), c.to_string())
    };
    let mut csv = String::from("query,kind,a_row,a_col,b_row,b_col,radius,value,count\n");
    let mut paths = Vec::new();
    for (i, q) in queries.iter().enumerate() {
        let row = match *q {
            Query::Dist(u, v) => {
                let ((ar, ac), (br, bc)) = (rc(u), rc(v));
                let d = distance(&grid, u, v, None)?;
                if a.paths.is_some() {
                    if let Some(path) = geodesic(&grid, u, v, None)? {
                        paths.push((i, path));
                    }
                }
                format!("{i},dist,{ar},{ac},{br},{bc},,{},", fmt17(d))
            }
            Query::Ball(c, radius) => {
                let (r, col) = rc(c);
                let (count, reach) = ball_extent(&grid, c, radius);
                format!("{i},ball,{r},{col},,,{},{},{count}", fmt17(radius), fmt17(reach))
            }
            Query::Diam(c, radius) => {
                let (r, col) = rc(c);
                let centre = field.geometry.point(c);
                let set: Vec<usize> =
                    (0..field.geometry.len()).filter(|&v| (field.geometry.point(v) - centre).norm() <= radius).collect();
                let d = diameter(&grid, &set, None)?;
                format!("{i},diam,{r},{col},,,{},{},{}", fmt17(radius), fmt17(d), set.len())
            }
        };
        csv.push_str(&row);
        csv.push('\n');
    }
    let mut out = Outputs::beside(&a.out);
    out.put(&file_name(&a.out)?, csv.as_bytes())?;
    if let Some(dir) = &a.paths {
        let mut path_out = Outputs::in_dir(dir)?;
        for (i, path) in &paths {
            let bytes = render(|b| write_path(b, &field.geometry, path))?;
            path_out.put(&format!("geodesic_{i}.csv"), &bytes)?;
        }
        path_out.finish(MANIFEST, "metric-paths", json!({ "queries": a.queries }), &[field.seed])?;
    }
    let config = json!({
        "field": a.field.display().to_string(),
        "gamma": a.gamma,
        "d_gamma": a.d_gamma,
        "queries": a.queries,
    });
    out.finish(&sidecar_manifest(&a.out)?, "metric", config, &[field.seed])
}

fn load_config(c: &ConfigArgs) -> CliResult<StarConfig> {
    let mut config = match &c.config {
        Some(path) => star_config_from_str(&fs::read_to_string(path)?)?,
        None => StarConfig::default(),
    };
    let mut overrides = BTreeMap::new();
    for s in &c.set {
        let (k, v) = s.split_once('=').ok_or_else(|| CliError::usage(format!("--set expects key=value, got `{s}`")))?;
        if overrides.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::usage(format!("--set repeats key `{}`", k.trim())));
        }
    }
    config.apply_pairs(&overrides)?;
    config.validate()?;
    Ok(config)
}

fn config_json(config: &StarConfig) -> Value {
    Value::Object(config.to_pairs().into_iter().map(|(k, v)| (k.to_string(), Value::String(v))).collect())
}

/// Loads the config, builds the layout and applies calibration if asked.
fn prepare(c: &ConfigArgs, summary: &mut Map<String, Value>) -> CliResult<(StarConfig, StarLayout)> {
    let mut config = load_config(c)?;
    let layout = StarLayout::new(&config)?;
    if let Some(trials) = c.calibrate {
        let cal = calibrate_with(&layout, &config, trials, c.workers)?;
        config = cal.apply(&config);
        config.validate()?;
        summary.insert("calibration".into(), calibration_json(&cal));
    }
    Ok((config, layout))
}

pub fn star(a: &StarArgs) -> CliResult<()> {
    let mut summary = Map::new();
    let (config, layout) = prepare(&a.common, &mut summary)?;
    let mut out = Outputs::in_dir(&a.common.out)?;
    let mc = monte_carlo_with(&layout, &config, a.trials, a.common.workers)?;
    out.put("trials.csv", &render(|b| write_trials(b, &mc.results, config.n_arms))?)?;
    summary.insert("frequencies".into(), frequency_json(&mc.table));
    if a.baseline {
        let zero = StarConfig { m_out: 0.0, m_in: 0.0, ..config.clone() };
        let base = monte_carlo_with(&layout, &zero, a.trials, a.common.workers)?;
        out.put("baseline_trials.csv", &render(|b| write_trials(b, &base.results, config.n_arms))?)?;
        summary.insert("baseline".into(), frequency_json(&base.table));
        summary.insert("comparison".into(), comparison_json(&mc.table, &base.table));
    }
    if a.heatmap {
        let first = StarConfig { seed: trial_seed(config.seed, 0), ..config.clone() };
        let (field, dist) = trial_maps(&layout, &first)?;
        out.put("field.pgm", &render(|b| write_pgm16(b, field.n(), &field.values))?)?;
        out.put("distance.pgm", &render(|b| write_pgm16(b, field.n(), &dist))?)?;
    }
    out.put("config.txt", star_config_to_string(&config).as_bytes())?;
    out.put("summary.json", &json_bytes(&Value::Object(summary)))?;
    let seeds: Vec<u64> = mc.results.iter().map(|r| r.seed).collect();
    out.finish(MANIFEST, "star", config_json(&config), &seeds)
}

pub fn scan(a: &ScanArgs) -> CliResult<()> {
    let mut summary = Map::new();
    let (config, layout) = prepare(&a.common, &mut summary)?;
    let base_seeds: Vec<u64> = match (a.scans, a.base_seeds.is_empty()) {
        (Some(count), _) => (0..count as u64).map(|i| config.seed.wrapping_add(i)).collect(),
        (None, false) => a.base_seeds.clone(),
        (None, true) => vec![config.seed],
    };
    if base_seeds.is_empty() {
        return Err(CliError::usage("no base seeds"));
    }
    let reports = scan_many(&layout, &base_seeds, &config, a.depth, a.common.workers)?;
    let mut out = Outputs::in_dir(&a.common.out)?;
    out.put("scans.csv", &render(|b| write_scans(b, &reports, config.n_arms))?)?;
    let by_depth: Vec<Value> = (1..=a.depth)
        .map(|k| {
            let hits = reports.iter().filter(|r| r.first_success.is_some_and(|f| f <= k)).count();
            json!({ "depth": k, "success_by_depth": hits, "frequency": hits as f64 / reports.len() as f64 })
        })
        .collect();
    summary.insert("scans".into(), json!(reports.len()));
    summary.insert(
        "first_success".into(),
        json!(reports.iter().map(|r| r.first_success).collect::<Vec<_>>()),
    );
    summary.insert("by_depth".into(), Value::Array(by_depth));
    out.put("config.txt", star_config_to_string(&config).as_bytes())?;
    out.put("summary.json", &json_bytes(&Value::Object(summary)))?;
    let mut manifest_config = config_json(&config);
    manifest_config["depth"] = json!(a.depth);
    out.finish(MANIFEST, "scan", manifest_config, &base_seeds)
}

fn parse_pair<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<(T, f64)> {
    let bad = || CliError::usage(format!("bad {what} `{s}`"));
    let (x, y) = s.split_once(':').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

pub fn analyze(a: &AnalyzeArgs) -> CliResult<()> {
    let mut fm = match (&a.matrix, &a.points) {
        (Some(path), _) => read_distance_matrix(fs::File::open(path)?)?,
        (None, Some(path)) => read_points(fs::File::open(path)?)?,
        (None, None) => return Err(CliError::usage("one of --matrix or --points is required")),
    };
    if let Some(beta) = a.snowflake {
        fm = snowflake(&fm, beta)?;
    }
    let scales = if a.scales.is_empty() {
        auto_scales(&fm)
    } else {
        a.scales.iter().map(|s| parse_pair::<f64>(s, "scale pair")).collect::<CliResult<Vec<_>>>()?
    };
    let centers = spread_centers(fm.len(), a.centers);
    let est = assouad_estimate(&fm, &scales, &centers)?;
    let mut out = Outputs::in_dir(&a.out)?;
    out.put("assouad.csv", &render(|b| write_assouad(b, &est))?)?;
    let mut summary = Map::new();
    summary.insert("points".into(), json!(fm.len()));
    summary.insert("min_distance".into(), json!(fm.min_distance()));
    summary.insert("max_distance".into(), json!(fm.max_distance()));
    summary.insert(
        "assouad".into(),
        json!({ "alpha": est.alpha, "intercept": est.intercept, "residual": est.residual, "centers": centers.len() }),
    );
    if let Some(spec) = &a.clique {
        let (n, k) = parse_pair::<usize>(spec, "clique spec")?;
        let found = find_clique(&fm, n, k)?;
        summary.insert(
            "clique".into(),
            match &found {
                Some(r) => json!({ "n": n, "k": k, "found": true, "ratio": r.ratio, "exact": r.exact }),
                None => json!({ "n": n, "k": k, "found": false }),
            },
        );
        if let Some(report) = &found {
            out.put("clique.csv", &render(|b| write_clique_report(b, fm.ids(), report))?)?;
            if a.refine {
                let refined = ramsey_refine(&fm, &report.indices, k)?;
                out.put("refined.csv", &render(|b| write_clique_report(b, fm.ids(), &refined))?)?;
                summary.insert("refined".into(), json!({ "ratio": refined.ratio, "k": refined.k_target }));
            }
        }
    }
    out.put("summary.json", &json_bytes(&Value::Object(summary)))?;
    let input = a.matrix.as_ref().or(a.points.as_ref()).map(|p| p.display().to_string());
    let config = json!({
        "input": input,
        "kind": if a.matrix.is_some() { "matrix" } else { "points" },
        "snowflake": a.snowflake,
        "scales": scales.iter().map(|&(big, small)| [big, small]).collect::<Vec<_>>(),
        "centers": a.centers,
        "clique": a.clique,
    });
    out.finish(MANIFEST, "analyze", config, &[])
}
