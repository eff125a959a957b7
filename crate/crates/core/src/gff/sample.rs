//! Truncated orthonormal-series samplers for the Gaussian free field.
//!
//! On a square box of side `L` the functions `sin(j pi x / L) sin(k pi y / L)`
//! are orthogonal for the Dirichlet inner product
//! `(f, g) = (1 / 2 pi) * int grad f . grad g`, with squared norm
//! `pi (j^2 + k^2) / 8` independently of `L`. A field sample is
//! `sum_{j,k <= J} alpha_jk phi_jk / |phi_jk|` with i.i.d. standard normal
//! `alpha_jk`; the truncation at `J` is the only mollification applied.
//!
//! Randomness: `alpha_jk` is the `k`-th standard normal drawn from the
//! ChaCha8 stream number `j` of the generator seeded with `seed`. Raising the
//! cutoff therefore appends coefficients and never reshuffles existing ones.

use std::f64::consts::PI;

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::circle::circle_average;
use super::field::{FieldGrid, FieldKind};
use crate::error::{LabError, Result};
use crate::geometry::{GridGeometry, Point};

/// Side of the whole-plane proxy window, centred at the origin. The window
/// is `[-1, 1]^2` so that the unit circle used for normalisation fits.
pub const PROXY_WINDOW_SIDE: f64 = 2.0;

/// Default ratio between the padded box and the proxy window.
pub const DEFAULT_PAD_FACTOR: usize = 4;

/// Dirichlet norm of `sin(j pi x) sin(k pi y)` on a square.
pub fn dirichlet_norm(j: usize, k: usize) -> f64 {
    (PI * (j * j + k * k) as f64 / 8.0).sqrt()
}

/// Standard-normal coefficients `alpha[j-1][k-1]` for `1 <= j, k <= cutoff`.
pub fn series_coefficients(cutoff: usize, seed: u64) -> Array2<f64> {
    let mut alpha = Array2::<f64>::zeros((cutoff, cutoff));
    for j in 0..cutoff {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(j as u64 + 1);
        for k in 0..cutoff {
            alpha[[j, k]] = StandardNormal.sample(&mut rng);
        }
    }
    alpha
}

/// `sin(j pi t_i)` for `j = 1..=cutoff`, where `t_i` are box-relative
/// coordinates in `[0, 1]`. Entries at `t = 0` or `t = 1` are exactly zero.
fn sine_table(t: &[f64], cutoff: usize) -> Array2<f64> {
    Array2::from_shape_fn((t.len(), cutoff), |(i, j)| {
        let ti = t[i];
        if ti <= 0.0 || ti >= 1.0 {
            0.0
        } else {
            ((j + 1) as f64 * PI * ti).sin()
        }
    })
}

/// Evaluates the normalised sine series on the tensor grid `tx x ty` of
/// box-relative coordinates. Output is row-major with rows along `ty`.
fn evaluate_series(tx: &[f64], ty: &[f64], cutoff: usize, seed: u64) -> Vec<f64> {
    let mut coeff = series_coefficients(cutoff, seed);
    for ((j, k), a) in coeff.indexed_iter_mut() {
        *a /= dirichlet_norm(j + 1, k + 1);
    }
    let sx = sine_table(tx, cutoff);
    let sy = sine_table(ty, cutoff);
    // values[row, col] = sum_{j,k} sy[row, k] coeff[j, k] sx[col, j]
    let inner = coeff.t().dot(&sx.t());
    let values = sy.dot(&inner);
    values.into_iter().collect()
}

/// Zero-boundary field on the unit square with `n` vertices per side.
pub fn sample_zero_boundary(n: usize, cutoff: usize, seed: u64) -> Result<FieldGrid> {
    if n < 8 {
        return Err(LabError::param(format!("n must be >= 8, got {n}")));
    }
    if cutoff < 1 {
        return Err(LabError::param("cutoff must be >= 1"));
    }
    if cutoff >= n {
        return Err(LabError::Aliasing { cutoff, lattice: n });
    }
    let geometry = GridGeometry::new(n, 1.0 / (n - 1) as f64, Point::new(0.0, 0.0))?;
    let t: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let values = evaluate_series(&t, &t, cutoff, seed);
    FieldGrid::new(geometry, values, FieldKind::ZeroBoundary, cutoff, seed)
}

/// Whole-plane proxy: the central window `[-1, 1]^2` of a zero-boundary
/// field on a box `pad_factor` times wider, shifted so that its circle
/// average on the unit circle about the origin vanishes.
///
/// The implied box lattice has `pad_factor * (n - 1) + 1` vertices per side
/// at the window spacing; `cutoff` must stay below that count.
pub fn sample_whole_plane_proxy(
    n: usize,
    pad_factor: usize,
    cutoff: usize,
    seed: u64,
) -> Result<FieldGrid> {
    if n < 8 {
        return Err(LabError::param(format!("n must be >= 8, got {n}")));
    }
    if pad_factor < 3 {
        return Err(LabError::param(format!("pad_factor must be >= 3, got {pad_factor}")));
    }
    if cutoff < 1 {
        return Err(LabError::param("cutoff must be >= 1"));
    }
    let lattice = pad_factor * (n - 1) + 1;
    if cutoff >= lattice {
        return Err(LabError::Aliasing { cutoff, lattice });
    }
    let geometry = GridGeometry::centered(n, PROXY_WINDOW_SIDE, Point::new(0.0, 0.0))?;
    let box_side = PROXY_WINDOW_SIDE * pad_factor as f64;
    let lower = -box_side / 2.0;
    let t: Vec<f64> = (0..n)
        .map(|i| (geometry.origin.re + i as f64 * geometry.spacing - lower) / box_side)
        .collect();
    let values = evaluate_series(&t, &t, cutoff, seed);
    let mut field = FieldGrid::new(geometry, values, FieldKind::WholePlaneProxy, cutoff, seed)?;
    let avg = circle_average(&field, Point::new(0.0, 0.0), 1.0)?;
    field.values.iter_mut().for_each(|v| *v -= avg);
    Ok(field)
}

/// Exact variance of the truncated zero-boundary series at `(x, y)` in the
/// unit square: `sum_{j,k <= cutoff} (phi_jk(x, y) / |phi_jk|)^2`.
pub fn truncated_variance(x: f64, y: f64, cutoff: usize) -> f64 {
    truncated_covariance((x, y), (x, y), cutoff)
}

/// Exact covariance of the truncated zero-boundary series on the unit square.
pub fn truncated_covariance(a: (f64, f64), b: (f64, f64), cutoff: usize) -> f64 {
    let mut acc = 0.0;
    for j in 1..=cutoff {
        let sxa = (j as f64 * PI * a.0).sin();
        let sxb = (j as f64 * PI * b.0).sin();
        for k in 1..=cutoff {
            let sya = (k as f64 * PI * a.1).sin();
            let syb = (k as f64 * PI * b.1).sin();
            let norm2 = dirichlet_norm(j, k).powi(2);
            acc += sxa * sya * sxb * syb / norm2;
        }
    }
    acc
}
