use super::metric::FiniteMetric;
use crate::error::{LabError, Result};

/// The snowflaked metric `d^beta`, `0 < beta < 1`. Concave powers preserve
/// the triangle inequality, and clique ratios map `K -> K^beta`.
pub fn snowflake(fm: &FiniteMetric, beta: f64) -> Result<FiniteMetric> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(LabError::param(format!("snowflake exponent must lie in (0, 1), got {beta}")));
    }
    Ok(fm.map_distances(|d| d.powf(beta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::clique_ratio;

    #[test]
    fn square_root_of_line() {
        let fm = FiniteMetric::from_points(vec![vec![0.0], vec![1.0], vec![4.0]]).unwrap();
        let s = snowflake(&fm, 0.5).unwrap();
        assert_eq!(s.d(0, 1), 1.0);
        assert_eq!(s.d(0, 2), 2.0);
        assert_eq!(s.d(2, 0), 2.0);
        assert_eq!(s.d(1, 1), 0.0);
    }

    #[test]
    fn exponent_domain() {
        let fm = FiniteMetric::uniform(3, 1.0).unwrap();
        for beta in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
            assert!(snowflake(&fm, beta).is_err());
        }
    }

    #[test]
    fn near_identity() {
        let fm = FiniteMetric::line_grid(20, 0.7).unwrap();
        let s = snowflake(&fm, 1.0 - 1e-12).unwrap();
        for (a, b) in fm.matrix().iter().zip(s.matrix()) {
            assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }
    }

    #[test]
    fn ratio_powers() {
        let fm = FiniteMetric::from_points(vec![vec![0.0], vec![1.0], vec![3.0], vec![7.5]]).unwrap();
        let s = snowflake(&fm, 0.3).unwrap();
        let k = clique_ratio(&fm, &[0, 1, 2, 3]).unwrap();
        let ks = clique_ratio(&s, &[0, 1, 2, 3]).unwrap();
        assert!((ks - k.powf(0.3)).abs() <= 1e-12 * ks);
    }
}
