use std::collections::BTreeMap;

use crate::error::{LabError, Result};
use crate::geometry::Point;
use crate::gff::{LqgParams, DEFAULT_PAD_FACTOR};

/// Parameters of one star trial. Thresholds `c1`, `c2`, `t`, `eta` are in
/// units of `r`, which makes trials invariant under similarities.
#[derive(Clone, Debug, PartialEq)]
pub struct StarConfig {
    pub n_arms: usize,
    pub z0: Point,
    pub r: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub m_out: f64,
    pub m_in: f64,
    pub u: f64,
    pub eta: f64,
    pub c1: f64,
    pub c2: f64,
    pub t: f64,
    pub grid_n: usize,
    /// Series cutoff; `None` means `2 (grid_n - 1)`.
    pub cutoff: Option<usize>,
    pub seed: u64,
    pub gamma: f64,
    pub d_gamma: f64,
    pub pad_factor: usize,
    /// Every `source_stride`-th admissible vertex seeds a sweep in the
    /// pairwise infima.
    pub source_stride: usize,
}

impl Default for StarConfig {
    fn default() -> Self {
        let p = LqgParams::pure_gravity();
        Self {
            n_arms: 5,
            z0: Point::new(0.0, 0.0),
            r: 1.0,
            delta: 0.5,
            epsilon: 0.05,
            m_out: 0.0,
            m_in: 0.0,
            u: 0.2,
            eta: 1.0,
            c1: 100.0,
            c2: 10.0,
            t: 1.0,
            grid_n: 512,
            cutoff: None,
            seed: 0,
            gamma: p.gamma,
            d_gamma: p.d_gamma,
            pad_factor: DEFAULT_PAD_FACTOR,
            source_stride: 4,
        }
    }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(LabError::Parameter(msg()))
    }
}

impl StarConfig {
    pub fn cutoff(&self) -> usize {
        self.cutoff.unwrap_or(2 * (self.grid_n.max(1) - 1))
    }

    pub fn params(&self) -> Result<LqgParams> {
        LqgParams::new(self.gamma, self.d_gamma)
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x.is_finite() && x > 0.0;
        let nonneg = |x: f64| x.is_finite() && x >= 0.0;
        check(self.n_arms >= 2, || format!("n_arms must be >= 2, got {}", self.n_arms))?;
        check(self.z0.re.is_finite() && self.z0.im.is_finite(), || "z0 must be finite".into())?;
        check(pos(self.r), || format!("r must be > 0, got {}", self.r))?;
        check(self.delta > 0.0 && self.delta < 1.0, || format!("delta must lie in (0, 1), got {}", self.delta))?;
        check(self.epsilon > 0.0 && self.epsilon < 1.0 / 14.0, || {
            format!("epsilon must lie in (0, 1/14), got {}", self.epsilon)
        })?;
        check(nonneg(self.m_out), || format!("m_out must be >= 0, got {}", self.m_out))?;
        check(nonneg(self.m_in), || format!("m_in must be >= 0, got {}", self.m_in))?;
        check(self.u > 0.0 && self.u < 2.0, || format!("u must lie in (0, 2), got {}", self.u))?;
        check(pos(self.eta), || format!("eta must be > 0, got {}", self.eta))?;
        check(pos(self.c1), || format!("c1 must be > 0, got {}", self.c1))?;
        check(pos(self.c2), || format!("c2 must be > 0, got {}", self.c2))?;
        check(pos(self.t), || format!("t must be > 0, got {}", self.t))?;
        check(self.grid_n >= 16, || format!("grid_n must be >= 16, got {}", self.grid_n))?;
        check(self.pad_factor >= 3, || format!("pad_factor must be >= 3, got {}", self.pad_factor))?;
        check(self.source_stride >= 1, || "source_stride must be >= 1".into())?;
        let cutoff = self.cutoff();
        check(cutoff >= 1, || "cutoff must be >= 1".into())?;
        let lattice = self.pad_factor * (self.grid_n - 1) + 1;
        if cutoff >= lattice {
            return Err(LabError::Aliasing { cutoff, lattice });
        }
        self.params()?;
        Ok(())
    }

    /// Flat `key=value` pairs, keys named after the fields.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        vec![
            ("n_arms", self.n_arms.to_string()),
            ("z0", format!("{},{}", fmt_f64(self.z0.re), fmt_f64(self.z0.im))),
            ("r", fmt_f64(self.r)),
            ("delta", fmt_f64(self.delta)),
            ("epsilon", fmt_f64(self.epsilon)),
            ("m_out", fmt_f64(self.m_out)),
            ("m_in", fmt_f64(self.m_in)),
            ("u", fmt_f64(self.u)),
            ("eta", fmt_f64(self.eta)),
            ("c1", fmt_f64(self.c1)),
            ("c2", fmt_f64(self.c2)),
            ("t", fmt_f64(self.t)),
            ("grid_n", self.grid_n.to_string()),
            ("cutoff", self.cutoff().to_string()),
            ("seed", self.seed.to_string()),
            ("gamma", fmt_f64(self.gamma)),
            ("d_gamma", fmt_f64(self.d_gamma)),
            ("pad_factor", self.pad_factor.to_string()),
            ("source_stride", self.source_stride.to_string()),
        ]
    }

    /// Overrides fields from `key=value` pairs; unknown keys are errors.
    pub fn apply_pairs(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in pairs {
            let bad = |what: &str| LabError::Parameter(format!("config key {key}: {what} `{value}`"));
            let f = || value.trim().parse::<f64>().map_err(|_| bad("expected a number, got"));
            let uint = || value.trim().parse::<u64>().map_err(|_| bad("expected an integer, got"));
            match key.as_str() {
                "n_arms" => self.n_arms = uint()? as usize,
                "z0" => {
                    let (re, im) = value
                        .split_once(',')
                        .ok_or_else(|| bad("expected `x,y`, got"))?;
                    let re = re.trim().parse().map_err(|_| bad("expected `x,y`, got"))?;
                    let im = im.trim().parse().map_err(|_| bad("expected `x,y`, got"))?;
                    self.z0 = Point::new(re, im);
                }
                "r" => self.r = f()?,
                "delta" => self.delta = f()?,
                "epsilon" => self.epsilon = f()?,
                "m_out" => self.m_out = f()?,
                "m_in" => self.m_in = f()?,
                "u" => self.u = f()?,
                "eta" => self.eta = f()?,
                "c1" => self.c1 = f()?,
                "c2" => self.c2 = f()?,
                "t" => self.t = f()?,
                "grid_n" => self.grid_n = uint()? as usize,
                "cutoff" => self.cutoff = Some(uint()? as usize),
                "seed" => self.seed = uint()?,
                "gamma" => self.gamma = f()?,
                "d_gamma" => self.d_gamma = f()?,
                "pad_factor" => self.pad_factor = uint()? as usize,
                "source_stride" => self.source_stride = uint()? as usize,
                _ => return Err(LabError::Parameter(format!("unknown config key `{key}`"))),
            }
        }
        Ok(())
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}
