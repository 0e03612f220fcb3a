//! Embedded reference run: 25 neurons in 5 nested patterns of 5, inhibitory
//! weight 0.5, drive and excitatory unit 1.0, checked at steps 3, 4 and 5.
//!
//! The expected strengths are stored verbatim, one row per neuron, and the
//! check is self-contained: it reads no files and rebuilds the run from
//! scratch every time.

use crate::dynamics::{run, DynamicsError, Trace};
use crate::ensemble::{build_ensemble, EnsembleConfig, SignalWeights};

/// Steps covered by the reference table.
pub const REFERENCE_STEPS: [u64; 3] = [3, 4, 5];

/// Expected strengths, indexed `[neuron_id - 1][step index]` with steps as
/// in [`REFERENCE_STEPS`].
pub const REFERENCE_STRENGTHS: [[f64; 3]; 25] = [
    [7.5, 5.0, 0.0],
    [7.5, 5.0, 0.0],
    [7.5, 5.0, 0.0],
    [7.5, 5.0, 0.0],
    [7.5, 5.0, 0.0],
    [7.5, 7.5, 5.0],
    [7.5, 7.5, 5.0],
    [7.5, 7.5, 5.0],
    [7.5, 7.5, 5.0],
    [7.5, 7.5, 5.0],
    [5.0, 7.5, 7.5],
    [5.0, 7.5, 7.5],
    [5.0, 7.5, 7.5],
    [5.0, 7.5, 7.5],
    [5.0, 7.5, 7.5],
    [0.0, 5.0, 7.5],
    [0.0, 5.0, 7.5],
    [0.0, 5.0, 7.5],
    [0.0, 5.0, 7.5],
    [0.0, 5.0, 7.5],
    [0.0, 0.0, 5.0],
    [0.0, 0.0, 5.0],
    [0.0, 0.0, 5.0],
    [0.0, 0.0, 5.0],
    [0.0, 0.0, 5.0],
];

pub const REFERENCE_TOLERANCE: f64 = 1e-9;

/// One mismatching cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellDiff {
    pub step: u64,
    pub neuron_id: usize,
    pub expected: f64,
    pub actual: f64,
}

/// The configuration behind the reference table.
pub fn reference_config() -> EnsembleConfig {
    build_ensemble(5, 5, SignalWeights::default())
        .expect("reference configuration is valid")
        .with_steps(5)
}

/// Runs the reference configuration and returns it alongside any cell
/// mismatches (empty = all 75 cells match).
pub fn check_reference_run() -> Result<(Trace, Vec<CellDiff>), DynamicsError> {
    let trace = run(&reference_config())?;
    let mut diffs = Vec::new();
    for (row_idx, expected_row) in REFERENCE_STRENGTHS.iter().enumerate() {
        let neuron_id = row_idx + 1;
        for (step_idx, &expected) in expected_row.iter().enumerate() {
            let step = REFERENCE_STEPS[step_idx];
            let actual = trace
                .value_at(step, neuron_id)
                .expect("reference trace covers steps 0..=5");
            if (actual - expected).abs() > REFERENCE_TOLERANCE {
                diffs.push(CellDiff {
                    step,
                    neuron_id,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok((trace, diffs))
}

/// Total number of checked cells.
pub const REFERENCE_CELLS: usize = 75;
