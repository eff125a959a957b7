use crate::error::{LabError, Result};

/// Coupling constants of a gamma-LQG metric.
///
/// `xi = gamma / d_gamma` sets the exponent of the first-passage weights
/// `exp(xi * h)`; `q = 2/gamma + gamma/2` is the coordinate-change constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LqgParams {
    pub gamma: f64,
    pub d_gamma: f64,
    pub xi: f64,
    pub q: f64,
}

impl LqgParams {
    pub fn new(gamma: f64, d_gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0 && gamma <= 2.0) {
            return Err(LabError::param(format!("gamma must lie in (0, 2], got {gamma}")));
        }
        if !(d_gamma.is_finite() && d_gamma > 2.0) {
            return Err(LabError::param(format!("d_gamma must exceed 2, got {d_gamma}")));
        }
        Ok(Self {
            gamma,
            d_gamma,
            xi: gamma / d_gamma,
            q: 2.0 / gamma + gamma / 2.0,
        })
    }

    /// gamma = sqrt(8/3) with the Brownian-map dimension 4.
    pub fn pure_gravity() -> Self {
        Self::new((8.0f64 / 3.0).sqrt(), 4.0).expect("valid constants")
    }
}

pub fn make_params(gamma: f64, d_gamma: f64) -> Result<LqgParams> {
    LqgParams::new(gamma, d_gamma)
}
