use std::path::Path;

use nearadd::BigUint;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "NEARADD_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub height_bound: u64,
    /// None: unbounded.
    pub norm_ceiling: Option<BigUint>,
    pub trials: u64,
    pub output: Output,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            height_bound: 1_000_000,
            norm_ceiling: Some(BigUint::from(10u8).pow(40)),
            trials: 1000,
            output: Output::Text,
        }
    }
}

/// Optional keys of the TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub height_bound: Option<u64>,
    pub norm_ceiling: Option<String>,
    pub trials: Option<u64>,
    pub json: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))
    }
}

/// "none" or a positive integer, optionally written as 10^k.
pub fn parse_ceiling(s: &str) -> Result<Option<BigUint>, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("none") {
        return Ok(None);
    }
    let v = match s.split_once('^') {
        Some((b, e)) => {
            let b: BigUint = b.trim().parse().map_err(|_| format!("bad norm ceiling {s:?}"))?;
            let e: u32 = e.trim().parse().map_err(|_| format!("bad norm ceiling {s:?}"))?;
            b.pow(e)
        }
        None => s.parse().map_err(|_| format!("bad norm ceiling {s:?}"))?,
    };
    if v == BigUint::from(0u8) {
        return Err("norm ceiling must be positive".into());
    }
    Ok(Some(v))
}

/// Flags override the file, the file overrides defaults.
pub fn resolve(
    file: Option<FileConfig>,
    seed: Option<u64>,
    height_bound: Option<u64>,
    norm_ceiling: Option<&str>,
    trials: Option<u64>,
    json: bool,
) -> Result<RunConfig, String> {
    let file = file.unwrap_or_default();
    let mut c = RunConfig::default();
    if let Some(s) = seed.or(file.seed) {
        c.seed = s;
    }
    if let Some(h) = height_bound.or(file.height_bound) {
        c.height_bound = h;
    }
    if let Some(n) = norm_ceiling.or(file.norm_ceiling.as_deref()) {
        c.norm_ceiling = parse_ceiling(n)?;
    }
    if let Some(t) = trials.or(file.trials) {
        c.trials = t;
    }
    if json || file.json == Some(true) {
        c.output = Output::Json;
    }
    if c.height_bound == 0 || c.trials == 0 {
        return Err("height bound and trials must be positive".into());
    }
    if c.height_bound > i64::MAX as u64 {
        return Err("height bound too large".into());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceilings() {
        assert_eq!(parse_ceiling("none").unwrap(), None);
        assert_eq!(parse_ceiling("10^3").unwrap(), Some(BigUint::from(1000u32)));
        assert_eq!(parse_ceiling("77").unwrap(), Some(BigUint::from(77u32)));
        assert!(parse_ceiling("0").is_err());
        assert!(parse_ceiling("x").is_err());
    }

    #[test]
    fn precedence() {
        let file = FileConfig { seed: Some(5), trials: Some(9), ..Default::default() };
        let c = resolve(Some(file), Some(7), None, None, None, false).unwrap();
        assert_eq!((c.seed, c.trials, c.height_bound), (7, 9, 1_000_000));
        assert!(resolve(None, None, Some(0), None, None, false).is_err());
        let file: FileConfig = toml::from_str("seed = 3\nnorm-ceiling = \"none\"\njson = true").unwrap();
        let c = resolve(Some(file), None, None, None, None, false).unwrap();
        assert_eq!((c.seed, c.norm_ceiling, c.output), (3, None, Output::Json));
    }
}
