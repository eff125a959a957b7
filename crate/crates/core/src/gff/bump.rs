use super::field::{FieldGrid, Modification};
use crate::error::{LabError, Result};
use crate::geometry::GridGeometry;
use crate::region::Region;

/// A deterministic bump `amplitude * s` with `s = 1` on `inner` and `s = 0`
/// outside `outer`.
#[derive(Clone, Debug)]
pub struct BumpField {
    pub geometry: GridGeometry,
    pub values: Vec<f64>,
    pub amplitude: f64,
    pub inner: Region,
    pub outer: Region,
}

/// The C^1 smoothstep `3t^2 - 2t^3` on `[0, 1]`.
#[inline]
pub fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// Profile value in `[0, 1]` at a point whose distance to `inner` is `d_in`
/// and whose distance to the complement of `outer` is `d_out`.
#[inline]
pub fn profile(d_in: f64, d_out: f64) -> f64 {
    if d_in <= 0.0 {
        1.0
    } else if d_out <= 0.0 {
        0.0
    } else {
        1.0 - smoothstep(d_in / (d_in + d_out))
    }
}

/// Builds `amplitude * s` where `s` decreases smoothly from 1 on `inner` to
/// 0 outside `outer` as a function of the normalised distance
/// `d_in / (d_in + d_out)`; for concentric discs this is the radial distance
/// across the gap divided by the gap width.
pub fn make_bump(
    geometry: GridGeometry,
    inner: Region,
    outer: Region,
    amplitude: f64,
) -> Result<BumpField> {
    if !amplitude.is_finite() {
        return Err(LabError::param("bump amplitude must be finite"));
    }
    if let Some(gap) = inner.analytic_gap(&outer) {
        if gap <= 0.0 {
            return Err(LabError::geometry(format!("bump regions have no gap (width {gap})")));
        }
    }
    let mut values = Vec::with_capacity(geometry.len());
    for idx in 0..geometry.len() {
        let p = geometry.point(idx);
        let d_in = inner.signed_distance(p).max(0.0);
        let d_out = (-outer.signed_distance(p)).max(0.0);
        if d_in <= 0.0 && d_out <= 0.0 {
            return Err(LabError::geometry(
                "inner bump region is not strictly inside the outer region",
            ));
        }
        values.push(amplitude * profile(d_in, d_out));
    }
    Ok(BumpField { geometry, values, amplitude, inner, outer })
}

/// Anything that can be added pointwise to a field.
pub trait LatticeFunction {
    fn geometry(&self) -> &GridGeometry;
    fn values(&self) -> &[f64];
    fn label(&self) -> (String, f64);
}

impl LatticeFunction for BumpField {
    fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
    fn label(&self) -> (String, f64) {
        ("bump".into(), self.amplitude)
    }
}

impl LatticeFunction for FieldGrid {
    fn geometry(&self) -> &GridGeometry {
        &self.geometry
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
    fn label(&self) -> (String, f64) {
        (format!("field(seed={})", self.seed), 1.0)
    }
}

impl BumpField {
    /// The same profile with the amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> BumpField {
        BumpField {
            geometry: self.geometry,
            values: self.values.iter().map(|v| v * factor).collect(),
            amplitude: self.amplitude * factor,
            inner: self.inner.clone(),
            outer: self.outer.clone(),
        }
    }
}

/// Pointwise sum `field + f`.
pub fn add_function(field: &FieldGrid, f: &impl LatticeFunction) -> Result<FieldGrid> {
    if !field.geometry.same_as(f.geometry()) {
        return Err(LabError::Shape("added function lives on a different lattice".into()));
    }
    let mut out = field.clone();
    for (v, add) in out.values.iter_mut().zip(f.values()) {
        *v += add;
    }
    if let Some(i) = out.values.iter().position(|v| !v.is_finite()) {
        return Err(LabError::Data(format!("sum is non-finite at vertex {i}")));
    }
    let (label, amplitude) = f.label();
    out.modifications.push(Modification { label, amplitude });
    Ok(out)
}
