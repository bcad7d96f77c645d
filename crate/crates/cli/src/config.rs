//! Run configuration: flags, an optional flat TOML file, and the
//! `SHELLZETA_PRECISION` environment default.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use shellzeta_core::Precision;

use crate::error::CliError;

pub const PRECISION_ENV: &str = "SHELLZETA_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Input(format!(
                "unknown format `{other}` (expected csv|json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DepthSpec {
    #[default]
    Full,
    Limit(usize),
}

impl DepthSpec {
    pub fn as_option(self) -> Option<usize> {
        match self {
            DepthSpec::Full => None,
            DepthSpec::Limit(d) => Some(d),
        }
    }
}

impl FromStr for DepthSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("full") {
            return Ok(DepthSpec::Full);
        }
        s.parse()
            .map(DepthSpec::Limit)
            .map_err(|_| CliError::Input(format!("invalid depth `{s}` (expected a number or `full`)")))
    }
}

/// Everything a command needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub poly: Option<String>,
    pub powers: Vec<u32>,
    pub limits: Vec<u64>,
    pub s: f64,
    pub precision: Precision,
    pub depth: DepthSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.limits.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Input("limits must be strictly ascending".into()));
        }
        if self.limits.contains(&0) {
            return Err(CliError::Input("limits must be positive".into()));
        }
        if !self.s.is_finite() || self.s < 1.0 {
            return Err(CliError::Input(format!("s = {} must be >= 1", self.s)));
        }
        Ok(())
    }
}

/// Values that may come from flags or a config file; unset fields fall back.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub poly: Option<String>,
    pub powers: Option<ListValue<u32>>,
    pub limits: Option<ListValue<u64>>,
    /// Single-limit shorthand; wins over `limits`.
    pub x: Option<u64>,
    pub s: Option<f64>,
    pub precision: Option<String>,
    pub depth: Option<ScalarOrText>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

/// A list written either as a TOML array or as `"10,20"` / `"10:200:10"`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ListValue<T> {
    Items(Vec<T>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ScalarOrText {
    Number(usize),
    Text(String),
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    /// Fields set here win over `base`.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            poly: self.poly.or(base.poly),
            powers: self.powers.or(base.powers),
            limits: self.limits.or(base.limits),
            x: self.x.or(base.x),
            s: self.s.or(base.s),
            precision: self.precision.or(base.precision),
            depth: self.depth.or(base.depth),
            format: self.format.or(base.format),
            out: self.out.or(base.out),
        }
    }

    pub fn resolve(
        self,
        defaults: &CommandDefaults,
        env_precision: Option<&str>,
    ) -> Result<RunConfig, CliError> {
        let precision = match self.precision.as_deref().or(env_precision) {
            Some(p) => p.parse().map_err(CliError::Input)?,
            None => Precision::Float,
        };
        let depth = match self.depth {
            None => DepthSpec::Full,
            Some(ScalarOrText::Number(d)) => DepthSpec::Limit(d),
            Some(ScalarOrText::Text(t)) => t.parse()?,
        };
        let format = match self.format {
            Some(f) => f.parse()?,
            None => defaults.format,
        };
        let config = RunConfig {
            poly: self.poly,
            powers: resolve_list(self.powers)?.unwrap_or_else(|| defaults.powers.clone()),
            limits: match self.x {
                Some(x) => vec![x],
                None => resolve_list(self.limits)?.unwrap_or_else(|| defaults.limits.clone()),
            },
            s: self.s.unwrap_or(1.0),
            precision,
            depth,
            format,
            out: self.out,
        };
        config.validate()?;
        Ok(config)
    }
}

fn resolve_list<T: ListItem>(value: Option<ListValue<T>>) -> Result<Option<Vec<T>>, CliError> {
    match value {
        None => Ok(None),
        Some(ListValue::Items(items)) => Ok(Some(items)),
        Some(ListValue::Text(text)) => parse_list(&text).map(Some),
    }
}

pub trait ListItem: Copy + FromStr + TryFrom<u64> {
    fn to_u64(self) -> u64;
}

impl ListItem for u32 {
    fn to_u64(self) -> u64 {
        u64::from(self)
    }
}

impl ListItem for u64 {
    fn to_u64(self) -> u64 {
        self
    }
}

/// Parses `"100,200"`, `"10:200:10"` (inclusive range with step) or a mix.
/// The empty string is the empty list.
pub fn parse_list<T: ListItem>(text: &str) -> Result<Vec<T>, CliError> {
    let bad = || CliError::Input(format!("invalid list `{text}`"));
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [single] => out.push(single.parse::<T>().map_err(|_| bad())?),
            [start, end] | [start, end, _] => {
                let start: u64 = start.parse().map_err(|_| bad())?;
                let end: u64 = end.parse().map_err(|_| bad())?;
                let step: u64 = match parts.get(2) {
                    Some(step) => step.parse().map_err(|_| bad())?,
                    None => 1,
                };
                if step == 0 || end < start {
                    return Err(bad());
                }
                for v in (start..=end).step_by(step as usize) {
                    out.push(T::try_from(v).map_err(|_| bad())?);
                }
            }
            _ => return Err(bad()),
        }
    }
    Ok(out)
}

/// Per-command fallbacks.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandDefaults {
    pub powers: Vec<u32>,
    pub limits: Vec<u64>,
    pub format: Format,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> CommandDefaults {
        CommandDefaults {
            powers: vec![2, 3, 5, 7],
            limits: vec![100, 200],
            format: Format::Csv,
        }
    }

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<u64>("100, 200").unwrap(), vec![100, 200]);
        assert_eq!(parse_list::<u64>("10:50:10").unwrap(), vec![10, 20, 30, 40, 50]);
        assert_eq!(parse_list::<u64>("1:3,7").unwrap(), vec![1, 2, 3, 7]);
        assert!(parse_list::<u32>("").unwrap().is_empty());
        assert!(parse_list::<u64>("5:1").is_err());
        assert!(parse_list::<u64>("a").is_err());
        assert!(parse_list::<u32>("1:2:0").is_err());
    }

    #[test]
    fn descending_limits_are_rejected() {
        let partial = PartialConfig {
            limits: Some(ListValue::Text("100,50".into())),
            ..Default::default()
        };
        assert!(matches!(
            partial.resolve(&defaults(), None),
            Err(CliError::Input(_))
        ));
    }

    #[test]
    fn flags_override_file_and_env_is_the_fallback() {
        let file: PartialConfig = toml::from_str(
            r#"
            poly = "shell:3"
            limits = [10, 20]
            precision = "exact"
            depth = 4
            format = "json"
            "#,
        )
        .unwrap();
        let flags = PartialConfig {
            limits: Some(ListValue::Text("30".into())),
            ..Default::default()
        };
        let config = flags.over(file).resolve(&defaults(), Some("float")).unwrap();
        assert_eq!(config.limits, vec![30]);
        assert_eq!(config.precision, Precision::Exact);
        assert_eq!(config.depth, DepthSpec::Limit(4));
        assert_eq!(config.format, Format::Json);
        assert_eq!(config.poly.as_deref(), Some("shell:3"));

        let env_only = PartialConfig::default()
            .resolve(&defaults(), Some("exact"))
            .unwrap();
        assert_eq!(env_only.precision, Precision::Exact);
        assert_eq!(env_only.powers, vec![2, 3, 5, 7]);
    }

    #[test]
    fn unknown_config_keys_fail() {
        assert!(toml::from_str::<PartialConfig>("colour = 1").is_err());
    }

    #[test]
    fn depth_specs() {
        assert_eq!("full".parse::<DepthSpec>().unwrap(), DepthSpec::Full);
        assert_eq!("6".parse::<DepthSpec>().unwrap(), DepthSpec::Limit(6));
        assert!("deep".parse::<DepthSpec>().is_err());
    }
}
