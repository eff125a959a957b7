//! Flat `key = value` configuration files. `#` starts a comment; blank
//! lines are ignored; keys may appear once.

use std::collections::BTreeMap;

use crate::error::{LabError, Result};
use crate::star::StarConfig;

pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| LabError::Parameter(format!("line {}: expected `key = value`", i + 1)))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(LabError::Parameter(format!("line {}: empty key", i + 1)));
        }
        if map.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(LabError::Parameter(format!("line {}: duplicate key `{key}`", i + 1)));
        }
    }
    Ok(map)
}

/// Defaults overridden by the file's keys.
pub fn star_config_from_str(text: &str) -> Result<StarConfig> {
    let mut cfg = StarConfig::default();
    cfg.apply_pairs(&parse_key_values(text)?)?;
    Ok(cfg)
}

pub fn star_config_to_string(cfg: &StarConfig) -> String {
    cfg.to_pairs().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_spacing() {
        let m = parse_key_values("# star\n n_arms = 4  # arms\n\nr=0.5\n").unwrap();
        assert_eq!(m["n_arms"], "4");
        assert_eq!(m["r"], "0.5");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_key_values("n_arms 4\n").is_err());
        assert!(parse_key_values("= 4\n").is_err());
        assert!(parse_key_values("r = 1\nr = 2\n").is_err());
    }

    #[test]
    fn config_round_trip() {
        let mut c = StarConfig::default();
        c.delta = 0.25;
        c.seed = 99;
        let back = star_config_from_str(&star_config_to_string(&c)).unwrap();
        assert_eq!(back.delta, 0.25);
        assert_eq!(back.seed, 99);
        assert_eq!(back.cutoff(), c.cutoff());
    }
}
