//! Counter/timer built around a nested group.
//!
//! An on-switch pattern latches onto a single external pulse and supplies
//! the nested group's external drive. The activation wave cycles inwards,
//! each level emitting a tick at its first firing step. The innermost
//! level's first firing activates the off-switch one step later; the
//! off-switch extinguishes the on-switch the following step, after which
//! the drive chain collapses and the whole network goes quiet. A network
//! with n nested levels therefore emits exactly n ticks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{advance, SimState};
use crate::ensemble::{build_ensemble, EnsembleConfig, EnsembleError, SignalWeights};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CounterError {
    #[error("levels must be at least 1")]
    InvalidLevels,
    #[error("pattern size must be at least 1")]
    InvalidPatternSize,
    #[error("invalid signal weights: {0}")]
    InvalidWeights(&'static str),
    #[error("no quiescence within {max_steps} steps ({} ticks recorded)", partial.ticks.len())]
    Timeout { max_steps: u64, partial: PartialTickLog },
}

impl From<EnsembleError> for CounterError {
    fn from(e: EnsembleError) -> Self {
        match e {
            EnsembleError::InvalidLevels => CounterError::InvalidLevels,
            EnsembleError::InvalidPatternSize => CounterError::InvalidPatternSize,
            EnsembleError::InvalidWeights(msg) => CounterError::InvalidWeights(msg),
            EnsembleError::UnknownNeuron { .. } => {
                unreachable!("counter construction never resolves neuron ids")
            }
        }
    }
}

/// On-switch, off-switch, and the nested group they control. The switches
/// are one-level patterns with their own neuron populations, disjoint from
/// the group by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterNetwork {
    pub on_switch: EnsembleConfig,
    pub off_switch: EnsembleConfig,
    pub group: EnsembleConfig,
    pub weights: SignalWeights,
}

impl CounterNetwork {
    /// Neurons across switches and group.
    pub fn total_neurons(&self) -> usize {
        self.on_switch.neuron_count() + self.off_switch.neuron_count() + self.group.neuron_count()
    }
}

/// First firing of one nested level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TickEvent {
    pub level: usize,
    pub step: u64,
}

/// Complete record of one counter cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TickLog {
    pub ticks: Vec<TickEvent>,
    /// Step at which the off-switch fired.
    pub off_step: u64,
    /// First step with no activity anywhere.
    pub quiescent_step: u64,
}

/// What had happened by the time a run hit its step limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialTickLog {
    pub ticks: Vec<TickEvent>,
    pub off_step: Option<u64>,
}

/// Wires an on-switch, an off-switch, and a nested group of `levels`
/// patterns of `pattern_size` neurons each.
pub fn build_counter(
    levels: usize,
    pattern_size: usize,
    weights: SignalWeights,
) -> Result<CounterNetwork, CounterError> {
    let group = build_ensemble(levels, pattern_size, weights)?;
    let switch = build_ensemble(1, pattern_size, weights)?;
    Ok(CounterNetwork {
        on_switch: switch,
        off_switch: switch,
        group,
        weights,
    })
}

/// Runs one counter cycle: an external pulse fires the on-switch at step 1,
/// the on-switch drives the group, and the cycle ends when nothing fires
/// anywhere. Errors with a partial log if that does not happen within
/// `max_steps`.
pub fn run_counter(network: &CounterNetwork, max_steps: u64) -> Result<TickLog, CounterError> {
    let group = &network.group;
    let innermost = group.levels;

    let mut state = SimState::initial(group);
    let mut on_fired_last = false;
    let mut on_extinguished = false;
    let mut innermost_fired_last = false;
    let mut off_step: Option<u64> = None;
    let mut ticks: Vec<TickEvent> = Vec::with_capacity(group.levels);

    for step in 1..=max_steps {
        // The on-switch latches from step 1 until extinguished; the
        // off-switch fires once, the step after the innermost level's
        // first firing.
        let on_fires = !on_extinguished;
        let off_fires = off_step.is_none() && innermost_fired_last;

        state = advance(&state, group, on_fired_last, None);

        for level in 1..=group.levels {
            if ticks.len() < level && state.fired(*group.members_of(level).start()) {
                ticks.push(TickEvent { level, step });
            }
        }

        if off_fires {
            off_step = Some(step);
            on_extinguished = true;
        }

        let group_fired = !state.fired_ids().is_empty();
        if !on_fires && !off_fires && !group_fired {
            return Ok(TickLog {
                ticks,
                off_step: off_step.expect("off-switch fires before quiescence"),
                quiescent_step: step,
            });
        }

        on_fired_last = on_fires;
        innermost_fired_last = config_level_fired(&state, group, innermost);
    }

    Err(CounterError::Timeout {
        max_steps,
        partial: PartialTickLog { ticks, off_step },
    })
}

fn config_level_fired(state: &SimState, config: &EnsembleConfig, level: usize) -> bool {
    config.members_of(level).any(|id| state.fired(id))
}
