//! Runtime configuration: computation budgets, resolution depths, and
//! numeric tolerances.
//!
//! A [`Config`] starts from documented defaults, can be overlaid from a JSON
//! file, and finally from `PLANAR_CENTERS_*` environment variables (highest
//! precedence). [`Config::load`] performs that three-stage resolution using
//! the process environment; the pure overlay functions are exposed for
//! callers that manage their own sources.
//!
//! Recognized environment variables:
//!
//! | variable | meaning |
//! |---|---|
//! | `PLANAR_CENTERS_CONFIG` | path of a JSON overlay file |
//! | `PLANAR_CENTERS_GB_MAX_STEPS` | S-polynomial step cap (`none` = unlimited) |
//! | `PLANAR_CENTERS_GB_MAX_SECONDS` | basis wall-clock cap in seconds (`none` = unlimited) |
//! | `PLANAR_CENTERS_SERIES_ORDER` | center-manifold series truncation order |
//! | `PLANAR_CENTERS_BLOWUP_DEPTH` | maximum blow-up recursion depth |
//! | `PLANAR_CENTERS_ROOT_WIDTH` | rational width bound for root isolation |
//! | `PLANAR_CENTERS_REL_TOL` | relative ODE tolerance |
//! | `PLANAR_CENTERS_ABS_TOL` | absolute ODE tolerance |
//! | `PLANAR_CENTERS_MAX_ODE_STEPS` | accepted-step cap per orbit |
//! | `PLANAR_CENTERS_ALLOW_UNVERIFIED_FIXTURES` | enable fixtures whose source display is ambiguous |

use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use crate::desing::{DEFAULT_BLOWUP_DEPTH, DEFAULT_SERIES_ORDER};
use crate::globalcenter::PipelineOptions;
use crate::ideals::GbBudget;
use crate::jsonio::rat_from_str;
use crate::poly::{rat, Rat};
use crate::portrait::IntegrationSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config file is not valid JSON: {0}")]
    Json(String),
    #[error("bad value for {name}: {value:?}")]
    BadValue { name: String, value: String },
}

/// Resolved configuration with every knob populated.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Gröbner-basis step cap; `None` means unlimited.
    pub gb_max_steps: Option<u64>,
    /// Gröbner-basis wall-clock cap in seconds; `None` means unlimited.
    pub gb_max_seconds: Option<u64>,
    /// Center-manifold series truncation order at semi-hyperbolic points.
    pub series_order: usize,
    /// Maximum blow-up recursion depth.
    pub blowup_depth: u32,
    /// Width bound for isolating intervals of algebraic roots.
    pub root_width: Rat,
    /// Relative tolerance of the adaptive orbit integrator.
    pub rel_tol: f64,
    /// Absolute tolerance of the adaptive orbit integrator.
    pub abs_tol: f64,
    /// Accepted-step cap per integrated orbit.
    pub max_ode_steps: usize,
    /// Permit loading fixtures whose upstream display is typographically
    /// ambiguous. Off by default; results that depend on them are flagged.
    pub allow_unverified_fixtures: bool,
}

impl Default for Config {
    fn default() -> Self {
        let ode = IntegrationSpec::default();
        Config {
            gb_max_steps: None,
            gb_max_seconds: Some(1800),
            series_order: DEFAULT_SERIES_ORDER,
            blowup_depth: DEFAULT_BLOWUP_DEPTH,
            root_width: rat(1, 4096),
            rel_tol: ode.rel_tol,
            abs_tol: ode.abs_tol,
            max_ode_steps: ode.max_steps,
            allow_unverified_fixtures: false,
        }
    }
}

/// Optional-field mirror of [`Config`] for JSON overlays; absent fields
/// keep their previous value.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverlay {
    /// `null` means unlimited; an absent field keeps the previous cap.
    #[serde(default, deserialize_with = "present_option")]
    pub gb_max_steps: Option<Option<u64>>,
    /// `null` means unlimited; an absent field keeps the previous cap.
    #[serde(default, deserialize_with = "present_option")]
    pub gb_max_seconds: Option<Option<u64>>,
    pub series_order: Option<usize>,
    pub blowup_depth: Option<u32>,
    /// Rational string such as `"1/4096"`.
    pub root_width: Option<String>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_ode_steps: Option<usize>,
    pub allow_unverified_fixtures: Option<bool>,
}

impl Config {
    /// Defaults, then the JSON file named by `PLANAR_CENTERS_CONFIG` (when
    /// set), then individual `PLANAR_CENTERS_*` variables.
    pub fn load() -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        if let Ok(path) = std::env::var("PLANAR_CENTERS_CONFIG") {
            let text = std::fs::read_to_string(&path).map_err(|source| ConfigError::Io {
                path: path.clone(),
                source,
            })?;
            cfg.apply_json(&text)?;
        }
        cfg.apply_env(|name| std::env::var(name).ok())?;
        Ok(cfg)
    }

    /// Overlay values parsed from a JSON document.
    pub fn apply_json(&mut self, text: &str) -> Result<(), ConfigError> {
        let overlay: ConfigOverlay =
            serde_json::from_str(text).map_err(|e| ConfigError::Json(e.to_string()))?;
        self.apply_overlay(&overlay)
    }

    pub fn apply_overlay(&mut self, overlay: &ConfigOverlay) -> Result<(), ConfigError> {
        if let Some(v) = &overlay.gb_max_steps {
            self.gb_max_steps = *v;
        }
        if let Some(v) = &overlay.gb_max_seconds {
            self.gb_max_seconds = *v;
        }
        if let Some(v) = overlay.series_order {
            self.series_order = v;
        }
        if let Some(v) = overlay.blowup_depth {
            self.blowup_depth = v;
        }
        if let Some(s) = &overlay.root_width {
            self.root_width = parse_positive_rat("root_width", s)?;
        }
        if let Some(v) = overlay.rel_tol {
            self.rel_tol = v;
        }
        if let Some(v) = overlay.abs_tol {
            self.abs_tol = v;
        }
        if let Some(v) = overlay.max_ode_steps {
            self.max_ode_steps = v;
        }
        if let Some(v) = overlay.allow_unverified_fixtures {
            self.allow_unverified_fixtures = v;
        }
        Ok(())
    }

    /// Overlay `PLANAR_CENTERS_*` variables read through `lookup` (pass a
    /// closure over [`std::env::var`] for the process environment).
    pub fn apply_env(
        &mut self,
        lookup: impl Fn(&str) -> Option<String>,
    ) -> Result<(), ConfigError> {
        if let Some(s) = lookup("PLANAR_CENTERS_GB_MAX_STEPS") {
            self.gb_max_steps = parse_optional_u64("PLANAR_CENTERS_GB_MAX_STEPS", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_GB_MAX_SECONDS") {
            self.gb_max_seconds = parse_optional_u64("PLANAR_CENTERS_GB_MAX_SECONDS", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_SERIES_ORDER") {
            self.series_order = parse_num("PLANAR_CENTERS_SERIES_ORDER", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_BLOWUP_DEPTH") {
            self.blowup_depth = parse_num("PLANAR_CENTERS_BLOWUP_DEPTH", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_ROOT_WIDTH") {
            self.root_width = parse_positive_rat("PLANAR_CENTERS_ROOT_WIDTH", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_REL_TOL") {
            self.rel_tol = parse_num("PLANAR_CENTERS_REL_TOL", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_ABS_TOL") {
            self.abs_tol = parse_num("PLANAR_CENTERS_ABS_TOL", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_MAX_ODE_STEPS") {
            self.max_ode_steps = parse_num("PLANAR_CENTERS_MAX_ODE_STEPS", &s)?;
        }
        if let Some(s) = lookup("PLANAR_CENTERS_ALLOW_UNVERIFIED_FIXTURES") {
            self.allow_unverified_fixtures =
                parse_bool("PLANAR_CENTERS_ALLOW_UNVERIFIED_FIXTURES", &s)?;
        }
        Ok(())
    }

    pub fn gb_budget(&self) -> GbBudget {
        GbBudget {
            max_steps: self.gb_max_steps,
            max_time: self.gb_max_seconds.map(Duration::from_secs),
        }
    }

    pub fn integration_spec(&self) -> IntegrationSpec {
        IntegrationSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_steps: self.max_ode_steps,
            ..IntegrationSpec::default()
        }
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            blowup_depth: self.blowup_depth,
            series_order: self.series_order,
            root_width: self.root_width.clone(),
            integration: self.integration_spec(),
            ..PipelineOptions::default()
        }
    }
}

/// Deserializes a present field (value or `null`) to `Some(inner)`, so a
/// defaulted absent field stays distinguishable as `None`.
fn present_option<'de, D>(d: D) -> Result<Option<Option<u64>>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    Ok(Some(Option::<u64>::deserialize(d)?))
}

fn parse_num<T: std::str::FromStr>(name: &str, s: &str) -> Result<T, ConfigError> {
    s.trim().parse().map_err(|_| ConfigError::BadValue {
        name: name.to_string(),
        value: s.to_string(),
    })
}

fn parse_optional_u64(name: &str, s: &str) -> Result<Option<u64>, ConfigError> {
    let t = s.trim();
    if t.is_empty() || t.eq_ignore_ascii_case("none") || t.eq_ignore_ascii_case("unlimited") {
        return Ok(None);
    }
    parse_num(name, t).map(Some)
}

fn parse_bool(name: &str, s: &str) -> Result<bool, ConfigError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(ConfigError::BadValue {
            name: name.to_string(),
            value: s.to_string(),
        }),
    }
}

fn parse_positive_rat(name: &str, s: &str) -> Result<Rat, ConfigError> {
    let bad = || ConfigError::BadValue {
        name: name.to_string(),
        value: s.to_string(),
    };
    let r = rat_from_str(s.trim()).map_err(|_| bad())?;
    if crate::roots::rational_sign(&r) <= 0 {
        return Err(bad());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_component_defaults() {
        let cfg = Config::default();
        assert_eq!(cfg.blowup_depth, DEFAULT_BLOWUP_DEPTH);
        assert_eq!(cfg.series_order, DEFAULT_SERIES_ORDER);
        assert_eq!(cfg.gb_max_seconds, Some(1800));
        assert!(cfg.gb_max_steps.is_none());
        assert!(!cfg.allow_unverified_fixtures);
        let budget = cfg.gb_budget();
        assert_eq!(budget.max_time, Some(Duration::from_secs(1800)));
        let spec = cfg.integration_spec();
        assert_eq!(spec.rel_tol, IntegrationSpec::default().rel_tol);
    }

    #[test]
    fn json_overlay_applies_only_named_fields() {
        let mut cfg = Config::default();
        cfg.apply_json(
            r#"{"blowup_depth": 9, "root_width": "1/1024", "gb_max_seconds": null,
                "allow_unverified_fixtures": true}"#,
        )
        .unwrap();
        assert_eq!(cfg.blowup_depth, 9);
        assert_eq!(cfg.root_width, rat(1, 1024));
        assert_eq!(cfg.gb_max_seconds, None);
        assert!(cfg.allow_unverified_fixtures);
        assert_eq!(cfg.series_order, DEFAULT_SERIES_ORDER);
    }

    #[test]
    fn json_overlay_rejects_unknown_fields_and_bad_values() {
        let mut cfg = Config::default();
        assert!(matches!(
            cfg.apply_json(r#"{"no_such_knob": 1}"#),
            Err(ConfigError::Json(_))
        ));
        assert!(matches!(
            cfg.apply_json(r#"{"root_width": "-1/2"}"#),
            Err(ConfigError::BadValue { .. })
        ));
    }

    #[test]
    fn env_overlay_wins_and_parses_sentinels() {
        let mut cfg = Config::default();
        cfg.apply_json(r#"{"blowup_depth": 9}"#).unwrap();
        let env = |name: &str| match name {
            "PLANAR_CENTERS_BLOWUP_DEPTH" => Some("4".to_string()),
            "PLANAR_CENTERS_GB_MAX_SECONDS" => Some("none".to_string()),
            "PLANAR_CENTERS_GB_MAX_STEPS" => Some("5000".to_string()),
            "PLANAR_CENTERS_ALLOW_UNVERIFIED_FIXTURES" => Some("yes".to_string()),
            _ => None,
        };
        cfg.apply_env(env).unwrap();
        assert_eq!(cfg.blowup_depth, 4);
        assert_eq!(cfg.gb_max_seconds, None);
        assert_eq!(cfg.gb_max_steps, Some(5000));
        assert!(cfg.allow_unverified_fixtures);
    }

    #[test]
    fn env_overlay_reports_bad_values() {
        let mut cfg = Config::default();
        let env = |name: &str| {
            (name == "PLANAR_CENTERS_REL_TOL").then(|| "not-a-number".to_string())
        };
        assert!(matches!(
            cfg.apply_env(env),
            Err(ConfigError::BadValue { .. })
        ));
    }
}
