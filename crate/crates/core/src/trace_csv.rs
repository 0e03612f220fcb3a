//! Canonical CSV trace format.
//!
//! Header `step,neuron_id,level,value,fired`, one row per neuron per step
//! in (step, neuron_id) order. Values print with one decimal when they are
//! whole or half-like terminating decimals (`7.5`, `5.0`, `0.0`) and at
//! full round-trip precision otherwise.

use thiserror::Error;

use crate::dynamics::{Trace, TraceRow};
use crate::ensemble::{build_ensemble, SignalWeights};

pub const CSV_HEADER: &str = "step,neuron_id,level,value,fired";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace rows are inconsistent: {0}")]
    Inconsistent(String),
}

/// Shortest decimal rendering that keeps a `.0` on whole values.
pub fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.is_finite() {
        format!("{v:.1}")
    } else {
        format!("{v}")
    }
}

pub fn emit_trace_csv(trace: &Trace) -> String {
    let mut out = String::with_capacity(32 * (trace.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &trace.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.step,
            row.neuron_id,
            row.level,
            format_value(row.value),
            row.fired
        ));
    }
    out
}

/// Parses a CSV trace back into a [`Trace`]. The topology is inferred from
/// the rows; signal weights are not stored in the CSV, so the config echo
/// carries defaults.
pub fn parse_trace_csv(text: &str) -> Result<Trace, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim_end() == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(CsvError::Parse {
                line: 1,
                message: format!("expected header `{CSV_HEADER}`, got `{header}`"),
            })
        }
        None => {
            return Err(CsvError::Parse {
                line: 1,
                message: "empty input".to_string(),
            })
        }
    }

    let mut rows: Vec<TraceRow> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CsvError::Parse {
                line: line_no,
                message: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let field_err = |name: &str, value: &str| CsvError::Parse {
            line: line_no,
            message: format!("invalid {name} `{value}`"),
        };
        rows.push(TraceRow {
            step: fields[0]
                .parse()
                .map_err(|_| field_err("step", fields[0]))?,
            neuron_id: fields[1]
                .parse()
                .map_err(|_| field_err("neuron_id", fields[1]))?,
            level: fields[2]
                .parse()
                .map_err(|_| field_err("level", fields[2]))?,
            value: fields[3]
                .parse()
                .map_err(|_| field_err("value", fields[3]))?,
            fired: fields[4]
                .parse()
                .map_err(|_| field_err("fired", fields[4]))?,
        });
    }

    let config = infer_config(&rows)?;
    Ok(Trace { config, rows })
}

fn infer_config(rows: &[TraceRow]) -> Result<crate::ensemble::EnsembleConfig, CsvError> {
    if rows.is_empty() {
        // An empty trace still needs a syntactically valid config echo.
        return build_ensemble(1, 1, SignalWeights::default())
            .map_err(|e| CsvError::Inconsistent(e.to_string()));
    }
    let levels = rows.iter().map(|r| r.level).max().unwrap();
    let max_id = rows.iter().map(|r| r.neuron_id).max().unwrap();
    let max_step = rows.iter().map(|r| r.step).max().unwrap();
    if levels == 0 || max_id == 0 || max_id % levels != 0 {
        return Err(CsvError::Inconsistent(format!(
            "{max_id} neurons cannot split into {levels} equal levels"
        )));
    }
    let pattern_size = max_id / levels;
    let config = build_ensemble(levels, pattern_size, SignalWeights::default())
        .map_err(|e| CsvError::Inconsistent(e.to_string()))?
        .with_steps(max_step);
    for row in rows {
        let expected = config.level_of(row.neuron_id).map_err(|e| {
            CsvError::Inconsistent(format!("row (step {}, neuron {}): {e}", row.step, row.neuron_id))
        })?;
        if expected != row.level {
            return Err(CsvError::Inconsistent(format!(
                "neuron {} reports level {} but sits in level {expected}",
                row.neuron_id, row.level
            )));
        }
    }
    Ok(config)
}
