//! Line-oriented `key = value` run configuration.
//!
//! Recognized keys: `levels`, `pattern_size`, `steps` (required),
//! `delta`, `excitatory_unit`, `external_drive`, `leak`, `mode`, `ramp`
//! (optional). `#` starts a comment; blank lines are ignored. Unknown and
//! duplicate keys are rejected. `ramp` is required by, and only valid
//! with, `mode = graded`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensemble::{build_ensemble, EnsembleConfig, SignalWeights};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Validation(String),
}

/// Base mode recruits whole patterns; graded mode ramps recruitment up
/// over `ramp` driven steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum SimMode {
    Base,
    Graded { ramp: u64 },
}

/// A parsed configuration: the ensemble plus the run mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimSetup {
    pub config: EnsembleConfig,
    pub mode: SimMode,
}

fn parse_error(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_config(text: &str) -> Result<SimSetup, ConfigError> {
    let mut levels: Option<usize> = None;
    let mut pattern_size: Option<usize> = None;
    let mut steps: Option<u64> = None;
    let mut weights = SignalWeights::default();
    let mut mode_name: Option<String> = None;
    let mut ramp: Option<u64> = None;
    let mut seen: Vec<String> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_error(line_no, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(parse_error(line_no, format!("missing value for `{key}`")));
        }
        if seen.iter().any(|k| k == key) {
            return Err(parse_error(line_no, format!("duplicate key `{key}`")));
        }

        macro_rules! num {
            ($ty:ty) => {
                value.parse::<$ty>().map_err(|_| {
                    parse_error(line_no, format!("invalid value `{value}` for `{key}`"))
                })?
            };
        }

        match key {
            "levels" => levels = Some(num!(usize)),
            "pattern_size" => pattern_size = Some(num!(usize)),
            "steps" => steps = Some(num!(u64)),
            "delta" => weights.delta = num!(f64),
            "excitatory_unit" => weights.excitatory_unit = num!(f64),
            "external_drive" => weights.external_drive = num!(f64),
            "leak" => weights.leak = num!(f64),
            "mode" => match value {
                "base" | "graded" => mode_name = Some(value.to_string()),
                _ => {
                    return Err(parse_error(
                        line_no,
                        format!("invalid value `{value}` for `mode` (expected base or graded)"),
                    ))
                }
            },
            "ramp" => ramp = Some(num!(u64)),
            _ => return Err(parse_error(line_no, format!("unknown key `{key}`"))),
        }
        seen.push(key.to_string());
    }

    let levels =
        levels.ok_or_else(|| ConfigError::Validation("levels is required".to_string()))?;
    let pattern_size = pattern_size
        .ok_or_else(|| ConfigError::Validation("pattern_size is required".to_string()))?;
    let steps = steps.ok_or_else(|| ConfigError::Validation("steps is required".to_string()))?;

    let mode = match mode_name.as_deref() {
        None | Some("base") => {
            if ramp.is_some() {
                return Err(ConfigError::Validation(
                    "ramp is only valid with mode = graded".to_string(),
                ));
            }
            SimMode::Base
        }
        Some("graded") => match ramp {
            Some(r) if r >= 1 => SimMode::Graded { ramp: r },
            Some(_) => {
                return Err(ConfigError::Validation(
                    "ramp must be at least 1".to_string(),
                ))
            }
            None => {
                return Err(ConfigError::Validation(
                    "mode = graded requires ramp".to_string(),
                ))
            }
        },
        Some(_) => unreachable!("mode values validated at parse time"),
    };

    let config = build_ensemble(levels, pattern_size, weights)
        .map_err(|e| ConfigError::Validation(e.to_string()))?
        .with_steps(steps);
    Ok(SimSetup { config, mode })
}

/// Renders a setup back to config text. `parse_config` of the result
/// reproduces the setup exactly.
pub fn emit_config(setup: &SimSetup) -> String {
    let c = &setup.config;
    let w = &c.weights;
    let mut out = String::new();
    out.push_str(&format!("levels = {}\n", c.levels));
    out.push_str(&format!("pattern_size = {}\n", c.pattern_size));
    out.push_str(&format!("steps = {}\n", c.steps));
    out.push_str(&format!("delta = {}\n", w.delta));
    out.push_str(&format!("excitatory_unit = {}\n", w.excitatory_unit));
    out.push_str(&format!("external_drive = {}\n", w.external_drive));
    out.push_str(&format!("leak = {}\n", w.leak));
    match setup.mode {
        SimMode::Base => out.push_str("mode = base\n"),
        SimMode::Graded { ramp } => {
            out.push_str("mode = graded\n");
            out.push_str(&format!("ramp = {ramp}\n"));
        }
    }
    out
}
