use thiserror::Error;

/// Failure modes shared by every module of the laboratory.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("parameter out of domain: {0}")]
    Parameter(String),

    #[error("cutoff {cutoff} would alias on a lattice with {lattice} vertices per side (need cutoff < {lattice})")]
    Aliasing { cutoff: usize, lattice: usize },

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite data: {0}")]
    Data(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("grid resolution insufficient: {what}; need grid_n >= {min_grid_n}")]
    Resolution { what: String, min_grid_n: usize },

    #[error("format error at byte offset {offset}: {msg}")]
    Format { offset: u64, msg: String },

    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;

impl LabError {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        LabError::Parameter(msg.into())
    }

    pub(crate) fn geometry(msg: impl Into<String>) -> Self {
        LabError::Geometry(msg.into())
    }
}
