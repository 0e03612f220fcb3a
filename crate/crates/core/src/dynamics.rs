//! Synchronous discrete-time step engine.
//!
//! Each step: (1) the firing set is computed from the previous step's firing
//! set by the drive chain rule: level 1 fires while the external drive is on
//! and it is not extinguished; level k > 1 fires iff level k-1 fired in the
//! previous step and level k is not extinguished. (2) Every firing neuron
//! adds its net input (excitatory minus inhibitory) to its accumulated
//! value, synchronously, clamped at 0. (3) Non-firing neurons decay by the
//! leak factor. (4) A level whose firing members all end the step at value
//! <= 0 is permanently extinguished.
//!
//! Excitatory signal goes to the other neurons firing in the same pattern;
//! inhibitory signal goes from firing neurons to firing neurons in any
//! shallower (parent) pattern, weighted by delta. The innermost firing level
//! therefore never receives inhibition.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensemble::EnsembleConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("neuron id {id} out of range 1..={max}")]
    UnknownNeuron { id: usize, max: usize },
    #[error("state is inconsistent: values within level {level} are not equal")]
    InconsistentState { level: usize },
    #[error("state does not match config: expected {expected} neurons, found {found}")]
    WrongShape { expected: usize, found: usize },
    #[error("ramp must be at least 1")]
    InvalidRamp,
}

/// Evolving per-neuron state of one run.
///
/// Vectors are indexed by `neuron id - 1` (values, fired_last) or by
/// `level - 1` (extinguished, driven_streak).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimState {
    /// Current time index; 0 before any step has run.
    pub step: u64,
    /// Accumulated signal per neuron, clamped at 0.
    pub values: Vec<f64>,
    /// Neurons that fired in the step that produced this state.
    pub fired_last: Vec<bool>,
    /// Levels permanently switched off.
    pub extinguished: Vec<bool>,
    /// Consecutive driven steps per level; drives graded recruitment.
    pub driven_streak: Vec<u64>,
}

impl SimState {
    /// All-zero state at step 0: nothing has fired, nothing is extinguished.
    pub fn initial(config: &EnsembleConfig) -> Self {
        Self {
            step: 0,
            values: vec![0.0; config.neuron_count()],
            fired_last: vec![false; config.neuron_count()],
            extinguished: vec![false; config.levels],
            driven_streak: vec![0; config.levels],
        }
    }

    /// Value of a neuron by 1-based id.
    pub fn value(&self, id: usize) -> Option<f64> {
        self.values.get(id.wrapping_sub(1)).copied()
    }

    /// Did the neuron fire in the most recent step?
    pub fn fired(&self, id: usize) -> bool {
        id >= 1 && self.fired_last.get(id - 1).copied().unwrap_or(false)
    }

    pub fn is_extinguished(&self, level: usize) -> bool {
        level >= 1 && self.extinguished.get(level - 1).copied().unwrap_or(false)
    }

    /// Ids of the neurons that fired in the most recent step, ascending.
    pub fn fired_ids(&self) -> Vec<usize> {
        self.fired_last
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i + 1)
            .collect()
    }

    fn check_shape(&self, config: &EnsembleConfig) -> Result<(), DynamicsError> {
        if self.values.len() != config.neuron_count()
            || self.fired_last.len() != config.neuron_count()
            || self.extinguished.len() != config.levels
            || self.driven_streak.len() != config.levels
        {
            return Err(DynamicsError::WrongShape {
                expected: config.neuron_count(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// Per-level value symmetry check. Base-mode states keep every member of
    /// a level at the same value; a difference means the state was corrupted
    /// outside the engine.
    fn check_level_symmetry(&self, config: &EnsembleConfig) -> Result<(), DynamicsError> {
        for level in 1..=config.levels {
            let mut members = config.members_of(level);
            let first = self.values[members.next().unwrap() - 1];
            for id in members {
                let v = self.values[id - 1];
                if !(v == first) {
                    return Err(DynamicsError::InconsistentState { level });
                }
            }
        }
        Ok(())
    }

    /// Excitatory input the neuron receives in the step recorded by this
    /// state: external drive plus one excitatory unit from every other
    /// neuron firing in the same pattern. Zero if the neuron did not fire.
    pub fn excitatory_input(
        &self,
        config: &EnsembleConfig,
        id: usize,
    ) -> Result<f64, DynamicsError> {
        let level = self.check_id(config, id)?;
        if !self.fired(id) {
            return Ok(0.0);
        }
        let peers = config
            .members_of(level)
            .filter(|&m| m != id && self.fired(m))
            .count();
        Ok(config.weights.external_drive + peers as f64 * config.weights.excitatory_unit)
    }

    /// Inhibitory input the neuron receives in the step recorded by this
    /// state: delta times one excitatory unit per firing neuron in any
    /// strictly deeper level. Inhibition only affects firing neurons, so
    /// this is zero when the neuron is silent.
    pub fn inhibitory_input(
        &self,
        config: &EnsembleConfig,
        id: usize,
    ) -> Result<f64, DynamicsError> {
        let level = self.check_id(config, id)?;
        if !self.fired(id) {
            return Ok(0.0);
        }
        let deeper = self
            .fired_last
            .iter()
            .enumerate()
            .filter(|&(i, &f)| f && i / config.pattern_size + 1 > level)
            .count();
        Ok(config.weights.delta * config.weights.excitatory_unit * deeper as f64)
    }

    fn check_id(&self, config: &EnsembleConfig, id: usize) -> Result<usize, DynamicsError> {
        config
            .level_of(id)
            .map_err(|_| DynamicsError::UnknownNeuron {
                id,
                max: config.neuron_count(),
            })
    }

    /// One synchronous base-mode step with the external drive on.
    ///
    /// Fails with `InconsistentState` if per-level value symmetry is broken
    /// on entry.
    pub fn step(&self, config: &EnsembleConfig) -> Result<SimState, DynamicsError> {
        self.check_shape(config)?;
        self.check_level_symmetry(config)?;
        Ok(advance(self, config, true, None))
    }
}

/// Per-level recruitment for the upcoming step. `None` when the level does
/// not fire; otherwise the count of members that fire, lowest ids first.
fn recruited(
    config: &EnsembleConfig,
    driven: bool,
    streak: u64,
    ramp: Option<u64>,
) -> Option<usize> {
    if !driven {
        return None;
    }
    let size = config.pattern_size;
    match ramp {
        None => Some(size),
        Some(ramp) => {
            let scaled = (size as u64).saturating_mul(streak) / ramp;
            Some((scaled as usize).clamp(1, size))
        }
    }
}

/// Advances one step. `drive_on` gates level 1; `ramp` switches on graded
/// recruitment (`None` recruits whole patterns at once).
pub(crate) fn advance(
    state: &SimState,
    config: &EnsembleConfig,
    drive_on: bool,
    ramp: Option<u64>,
) -> SimState {
    let size = config.pattern_size;
    let w = &config.weights;
    let n = config.neuron_count();

    let level_fired_last = |level: usize| -> bool {
        config.members_of(level).any(|id| state.fired_last[id - 1])
    };

    // Drive chain: which levels fire, and with how many members.
    let mut streaks = vec![0u64; config.levels];
    let mut fires = vec![false; n];
    let mut fire_counts = vec![0usize; config.levels];
    for level in 1..=config.levels {
        let alive = !state.extinguished[level - 1];
        let driven = alive
            && if level == 1 {
                drive_on
            } else {
                level_fired_last(level - 1)
            };
        streaks[level - 1] = if driven {
            state.driven_streak[level - 1] + 1
        } else {
            0
        };
        if let Some(count) = recruited(config, driven, streaks[level - 1], ramp) {
            fire_counts[level - 1] = count;
            for id in config.members_of(level).take(count) {
                fires[id - 1] = true;
            }
        }
    }

    // Cumulative count of firing neurons strictly deeper than each level.
    let mut deeper_counts = vec![0usize; config.levels];
    let mut acc = 0usize;
    for level in (1..=config.levels).rev() {
        deeper_counts[level - 1] = acc;
        acc += fire_counts[level - 1];
    }

    // Synchronous value update.
    let mut values = state.values.clone();
    for i in 0..n {
        let level = i / size + 1;
        if fires[i] {
            let peers = fire_counts[level - 1] - 1;
            let excitatory = w.external_drive + peers as f64 * w.excitatory_unit;
            let inhibitory = w.delta * w.excitatory_unit * deeper_counts[level - 1] as f64;
            values[i] = (values[i] + excitatory - inhibitory).max(0.0);
        } else {
            values[i] *= 1.0 - w.leak;
        }
    }

    // A level whose firing members all ended at <= 0 switches off for good.
    let mut extinguished = state.extinguished.clone();
    for level in 1..=config.levels {
        if fire_counts[level - 1] > 0 {
            let all_drained = config
                .members_of(level)
                .filter(|&id| fires[id - 1])
                .all(|id| values[id - 1] <= 0.0);
            if all_drained {
                extinguished[level - 1] = true;
            }
        }
    }

    SimState {
        step: state.step + 1,
        values,
        fired_last: fires,
        extinguished,
        driven_streak: streaks,
    }
}

/// One row of a trace: the state of one neuron at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: u64,
    pub neuron_id: usize,
    pub level: usize,
    pub value: f64,
    pub fired: bool,
}

/// Full deterministic time series of a run: the config that produced it and
/// one row per neuron per step (step 0 is the all-zero initial snapshot),
/// in (step, neuron_id) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub config: EnsembleConfig,
    pub rows: Vec<TraceRow>,
}

impl Trace {
    fn push_state(&mut self, state: &SimState) {
        for neuron in self.config.neurons() {
            self.rows.push(TraceRow {
                step: state.step,
                neuron_id: neuron.id,
                level: neuron.level,
                value: state.values[neuron.id - 1],
                fired: state.fired_last[neuron.id - 1],
            });
        }
    }

    pub fn value_at(&self, step: u64, id: usize) -> Option<f64> {
        self.row(step, id).map(|r| r.value)
    }

    pub fn fired_at(&self, step: u64, id: usize) -> Option<bool> {
        self.row(step, id).map(|r| r.fired)
    }

    fn row(&self, step: u64, id: usize) -> Option<&TraceRow> {
        let n = self.config.neuron_count();
        if id == 0 || id > n {
            return None;
        }
        self.rows.get(step as usize * n + (id - 1))
    }

    /// Mean value over the members of a level at a step.
    pub fn mean_level_value(&self, step: u64, level: usize) -> Option<f64> {
        let members = self.config.members_of(level);
        let mut sum = 0.0;
        for id in members {
            sum += self.value_at(step, id)?;
        }
        Some(sum / self.config.pattern_size as f64)
    }

    /// First step at which any member of the level fired.
    pub fn first_firing_step(&self, level: usize) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.level == level && r.fired)
            .map(|r| r.step)
    }

    /// Last step at which any member of the level fired.
    pub fn last_firing_step(&self, level: usize) -> Option<u64> {
        self.rows
            .iter()
            .rev()
            .find(|r| r.level == level && r.fired)
            .map(|r| r.step)
    }

    pub fn max_step(&self) -> u64 {
        self.rows.last().map(|r| r.step).unwrap_or(0)
    }
}

/// Runs the base-mode dynamics for `config.steps` steps from the all-zero
/// state with the external drive on, recording every step (plus the initial
/// snapshot) into a trace.
pub fn run(config: &EnsembleConfig) -> Result<Trace, DynamicsError> {
    run_with(config, None)
}

/// Graded variant: a level driven for `s` consecutive steps recruits
/// `floor(pattern_size * min(1, s / ramp))` members (at least one), lowest
/// ids first, and both excitatory and inhibitory signals scale with the
/// recruited counts. `ramp = 1` reduces to [`run`].
pub fn run_graded(config: &EnsembleConfig, ramp: u64) -> Result<Trace, DynamicsError> {
    if ramp == 0 {
        return Err(DynamicsError::InvalidRamp);
    }
    run_with(config, Some(ramp))
}

fn run_with(config: &EnsembleConfig, ramp: Option<u64>) -> Result<Trace, DynamicsError> {
    let mut trace = Trace {
        config: *config,
        rows: Vec::with_capacity((config.steps as usize + 1) * config.neuron_count()),
    };
    let mut state = SimState::initial(config);
    trace.push_state(&state);
    for _ in 0..config.steps {
        state = advance(&state, config, true, ramp);
        trace.push_state(&state);
    }
    Ok(trace)
}
