//! CSV tables. Floats are written with 17 significant digits so that every
//! value reads back to the same bits.

use std::io::{Read, Write};

use crate::analysis::{AssouadEstimate, CliqueReport, DistortionProfile, FiniteMetric};
use crate::error::{LabError, Result};
use crate::geometry::GridGeometry;
use crate::lfpp::GridPath;
use crate::star::{ScanReport, TrialResult};

/// Scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn writer(w: impl Write) -> csv::Writer<impl Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

/// Header `id,<ids...>`, then one row per point tagged with its id.
pub fn write_distance_matrix(w: impl Write, ids: &[String], dist: &[f64]) -> Result<()> {
    let k = ids.len();
    if dist.len() != k * k {
        return Err(LabError::Shape(format!("{} entries for {k} ids", dist.len())));
    }
    let mut out = writer(w);
    out.write_record(std::iter::once("id").chain(ids.iter().map(String::as_str)))?;
    for (i, id) in ids.iter().enumerate() {
        let row: Vec<String> = dist[i * k..(i + 1) * k].iter().map(|&d| fmt17(d)).collect();
        out.write_record(std::iter::once(id.as_str()).chain(row.iter().map(String::as_str)))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a square, header-tagged matrix as written by
/// [`write_distance_matrix`] and validates it as a metric.
pub fn read_distance_matrix(r: impl Read) -> Result<FiniteMetric> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r);
    let ids: Vec<String> = rdr.headers()?.iter().skip(1).map(str::to_string).collect();
    let k = ids.len();
    if k == 0 {
        return Err(LabError::Data("distance matrix has no columns".into()));
    }
    let mut dist = Vec::with_capacity(k * k);
    let mut rows = 0;
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if i >= k {
            return Err(LabError::Data(format!("more than {k} rows")));
        }
        if rec.len() != k + 1 {
            return Err(LabError::Data(format!("row {} has {} cells, expected {}", i + 1, rec.len(), k + 1)));
        }
        if rec[0] != ids[i] {
            return Err(LabError::Data(format!("row {} is tagged `{}`, expected `{}`", i + 1, &rec[0], ids[i])));
        }
        for cell in rec.iter().skip(1) {
            dist.push(
                cell.parse::<f64>()
                    .map_err(|_| LabError::Data(format!("row {}: `{cell}` is not a number", i + 1)))?,
            );
        }
        rows += 1;
    }
    if rows != k {
        return Err(LabError::Data(format!("{rows} rows for {k} columns")));
    }
    FiniteMetric::new(ids, dist)
}

/// Points, one per row; every column is a coordinate.
pub fn read_points(r: impl Read) -> Result<FiniteMetric> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r);
    let dims = rdr.headers()?.len();
    let mut points = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != dims {
            return Err(LabError::Data(format!("row {} has {} cells, expected {dims}", i + 1, rec.len())));
        }
        let p = rec
            .iter()
            .map(|c| c.parse::<f64>().map_err(|_| LabError::Data(format!("row {}: `{c}` is not a number", i + 1))))
            .collect::<Result<Vec<f64>>>()?;
        points.push(p);
    }
    FiniteMetric::from_points(points)
}

/// `step,row,col,x,y` per path vertex.
pub fn write_path(w: impl Write, geometry: &GridGeometry, path: &GridPath) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["step", "row", "col", "x", "y"])?;
    for (step, &v) in path.vertices.iter().enumerate() {
        let (row, col) = geometry.row_col(v);
        let p = geometry.point(v);
        out.write_record([step.to_string(), row.to_string(), col.to_string(), fmt17(p.re), fmt17(p.im)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_clique_report(w: impl Write, ids: &[String], report: &CliqueReport) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["n", "k_target", "ratio", "exact", "success", "points"])?;
    let points: Vec<&str> = report.indices.iter().map(|&i| ids[i].as_str()).collect();
    out.write_record([
        report.n.to_string(),
        fmt17(report.k_target),
        fmt17(report.ratio),
        flag(report.exact).into(),
        flag(report.is_success()).into(),
        points.join(";"),
    ])?;
    out.flush()?;
    Ok(())
}

/// One `scale` row per `(R, r)` pair, then a `fit` row.
pub fn write_assouad(w: impl Write, est: &AssouadEstimate) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["kind", "big_r", "small_r", "count", "alpha", "intercept", "residual"])?;
    for row in &est.rows {
        out.write_record(["scale", &fmt17(row.big_r), &fmt17(row.small_r), &row.count.to_string(), "", "", ""])?;
    }
    out.write_record(["fit", "", "", "", &fmt17(est.alpha), &fmt17(est.intercept), &fmt17(est.residual)])?;
    out.flush()?;
    Ok(())
}

pub fn write_distortion(w: impl Write, profile: &DistortionProfile) -> Result<()> {
    let mut out = writer(w);
    out.write_record(["bin_lo", "bin_hi", "triples", "max_x_ratio", "max_y_ratio", "envelope"])?;
    for (b, env) in profile.bins.iter().zip(&profile.envelope) {
        out.write_record([
            fmt17(b.lo),
            fmt17(b.hi),
            b.triples.to_string(),
            fmt17(b.max_x_ratio),
            fmt17(b.max_y_ratio),
            env.map(fmt17).unwrap_or_default(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

const TRIAL_COLUMNS: [&str; 20] = [
    "seed",
    "z0_re",
    "z0_im",
    "r",
    "a1",
    "e_eta",
    "f",
    "g",
    "located",
    "success",
    "a1_inf",
    "d_star",
    "annulus",
    "e_inf",
    "collar_sup",
    "f_diam",
    "central_diam",
    "max_edge",
    "allowance",
    "clique_ratio",
];

fn trial_header(n_arms: usize) -> Vec<String> {
    let mut h: Vec<String> = TRIAL_COLUMNS.iter().map(|s| s.to_string()).collect();
    for k in 1..=n_arms {
        h.push(format!("zstar_{k}_re"));
        h.push(format!("zstar_{k}_im"));
    }
    h
}

fn trial_row(t: &TrialResult, n_arms: usize) -> Vec<String> {
    let m = &t.measures;
    let mut row = vec![
        t.seed.to_string(),
        fmt17(t.z0.re),
        fmt17(t.z0.im),
        fmt17(t.r),
        flag(t.flags.a1).into(),
        flag(t.flags.e_eta).into(),
        flag(t.flags.f).into(),
        flag(t.flags.g).into(),
        flag(t.located()).into(),
        flag(t.success).into(),
    ];
    for x in [
        m.a1_inf,
        m.d_star,
        m.annulus,
        m.e_inf,
        m.collar_sup,
        m.f_diam,
        m.central_diam,
        t.max_edge,
        t.allowance,
        t.clique_ratio,
    ] {
        row.push(fmt17(x));
    }
    for k in 0..n_arms {
        match t.star_points.get(k) {
            Some(p) => {
                row.push(fmt17(p.re));
                row.push(fmt17(p.im));
            }
            None => row.extend([String::new(), String::new()]),
        }
    }
    row
}

/// One row per trial: seed, centre, flags, measured reals (units of `r`),
/// ratio and the located points.
pub fn write_trials(w: impl Write, trials: &[TrialResult], n_arms: usize) -> Result<()> {
    let mut out = writer(w);
    out.write_record(trial_header(n_arms))?;
    for t in trials {
        out.write_record(trial_row(t, n_arms))?;
    }
    out.flush()?;
    Ok(())
}

/// Trial rows prefixed with `base_seed,depth`.
pub fn write_scans(w: impl Write, scans: &[ScanReport], n_arms: usize) -> Result<()> {
    let mut out = writer(w);
    let header: Vec<String> = ["base_seed", "depth"].iter().map(|s| s.to_string()).chain(trial_header(n_arms)).collect();
    out.write_record(header)?;
    for s in scans {
        for (k, t) in s.trials.iter().enumerate() {
            let row: Vec<String> =
                [s.base_seed.to_string(), (k + 1).to_string()].into_iter().chain(trial_row(t, n_arms)).collect();
            out.write_record(row)?;
        }
    }
    out.flush()?;
    Ok(())
}
