use std::fmt;

use lqglab::LabError;

/// Process exit statuses.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_FORMAT: u8 = 4;
pub const EXIT_RESOLUTION: u8 = 5;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lab(LabError),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lab(e) => match e {
                LabError::Io(_) => EXIT_IO,
                LabError::Format { .. } | LabError::Csv(_) | LabError::Data(_) | LabError::Shape(_) => EXIT_FORMAT,
                LabError::Resolution { .. } => EXIT_RESOLUTION,
                LabError::Parameter(_)
                | LabError::Aliasing { .. }
                | LabError::Geometry(_)
                | LabError::Degenerate(_) => EXIT_USAGE,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Lab(e) => e.fmt(f),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        CliError::Lab(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lab(LabError::Io(e))
    }
}

pub type CliResult<T> = Result<T, CliError>;
