use crate::error::{LabError, Result};
use crate::geometry::GridGeometry;

/// How a field sample was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    ZeroBoundary,
    WholePlaneProxy,
}

impl FieldKind {
    pub fn code(self) -> u8 {
        match self {
            FieldKind::ZeroBoundary => 0,
            FieldKind::WholePlaneProxy => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(FieldKind::ZeroBoundary),
            1 => Some(FieldKind::WholePlaneProxy),
            _ => None,
        }
    }
}

/// Record of a function added to a sampled field.
#[derive(Clone, Debug, PartialEq)]
pub struct Modification {
    pub label: String,
    pub amplitude: f64,
}

/// A scalar field sampled at the vertices of a square lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    pub geometry: GridGeometry,
    pub values: Vec<f64>,
    pub kind: FieldKind,
    pub cutoff: usize,
    pub seed: u64,
    pub modifications: Vec<Modification>,
}

impl FieldGrid {
    pub fn new(
        geometry: GridGeometry,
        values: Vec<f64>,
        kind: FieldKind,
        cutoff: usize,
        seed: u64,
    ) -> Result<Self> {
        if values.len() != geometry.len() {
            return Err(LabError::Shape(format!(
                "{} values for a {}x{} lattice",
                values.len(),
                geometry.n,
                geometry.n
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(LabError::Data(format!("field value at vertex {i} is {}", values[i])));
        }
        Ok(Self { geometry, values, kind, cutoff, seed, modifications: Vec::new() })
    }

    /// The constant field `c` on `geometry`.
    pub fn constant(geometry: GridGeometry, c: f64) -> Self {
        Self {
            geometry,
            values: vec![c; geometry.len()],
            kind: FieldKind::ZeroBoundary,
            cutoff: 0,
            seed: 0,
            modifications: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.geometry.n
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.values[self.geometry.index(row, col)]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Adds the constant `c` to every vertex.
    pub fn shifted(&self, c: f64) -> FieldGrid {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v += c);
        out.modifications.push(Modification { label: "constant".into(), amplitude: c });
        out
    }
}
