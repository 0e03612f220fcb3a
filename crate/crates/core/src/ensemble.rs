//! Static topology of a nested ensemble.
//!
//! An ensemble is a chain of `levels` patterns, each holding `pattern_size`
//! neurons. Level 1 is the outermost pattern; higher levels sit inside it.
//! Neuron ids are 1-based and contiguous, outermost pattern first, so id 1
//! is the first neuron of level 1 and id `levels * pattern_size` is the last
//! neuron of the innermost level.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnsembleError {
    #[error("levels must be at least 1")]
    InvalidLevels,
    #[error("pattern size must be at least 1")]
    InvalidPatternSize,
    #[error("invalid signal weights: {0}")]
    InvalidWeights(&'static str),
    #[error("neuron id {id} out of range 1..={max}")]
    UnknownNeuron { id: usize, max: usize },
}

/// Scalar signal constants shared by every neuron in a run.
///
/// `excitatory_unit` is the signal one firing neuron sends to each peer in
/// its own pattern per step. `delta` weights the inhibitory signal relative
/// to an excitatory unit. `external_drive` is the constant energy supply a
/// firing neuron receives per step. `leak` is the fraction of stored value
/// an undriven neuron loses per step (0 = values freeze).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalWeights {
    pub excitatory_unit: f64,
    pub delta: f64,
    pub external_drive: f64,
    pub leak: f64,
}

impl Default for SignalWeights {
    fn default() -> Self {
        Self {
            excitatory_unit: 1.0,
            delta: 0.5,
            external_drive: 1.0,
            leak: 0.0,
        }
    }
}

impl SignalWeights {
    /// Checks the numeric invariants. Predicates are negated comparisons
    /// so that NaN fails every check.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), EnsembleError> {
        if !(self.excitatory_unit > 0.0) {
            return Err(EnsembleError::InvalidWeights("excitatory_unit must be > 0"));
        }
        if !(self.delta >= 0.0) {
            return Err(EnsembleError::InvalidWeights("delta must be >= 0"));
        }
        if !(self.external_drive >= 0.0) {
            return Err(EnsembleError::InvalidWeights("external_drive must be >= 0"));
        }
        if !(self.leak >= 0.0 && self.leak <= 1.0) {
            return Err(EnsembleError::InvalidWeights("leak must be in [0, 1]"));
        }
        Ok(())
    }
}

/// A neuron id paired with the 1-based level (pattern) it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeuronRef {
    pub id: usize,
    pub level: usize,
}

/// Validated static description of a nested ensemble plus the planned
/// simulation horizon. Immutable after construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub levels: usize,
    pub pattern_size: usize,
    pub steps: u64,
    pub weights: SignalWeights,
}

/// Builds a validated config with `steps = 0`; use
/// [`EnsembleConfig::with_steps`] to set the horizon.
pub fn build_ensemble(
    levels: usize,
    pattern_size: usize,
    weights: SignalWeights,
) -> Result<EnsembleConfig, EnsembleError> {
    if levels == 0 {
        return Err(EnsembleError::InvalidLevels);
    }
    if pattern_size == 0 {
        return Err(EnsembleError::InvalidPatternSize);
    }
    weights.validate()?;
    Ok(EnsembleConfig {
        levels,
        pattern_size,
        steps: 0,
        weights,
    })
}

impl EnsembleConfig {
    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    /// Total neuron count, `levels * pattern_size`.
    pub fn neuron_count(&self) -> usize {
        self.levels * self.pattern_size
    }

    /// Level of a neuron id: `ceil(id / pattern_size)`.
    pub fn level_of(&self, id: usize) -> Result<usize, EnsembleError> {
        if id == 0 || id > self.neuron_count() {
            return Err(EnsembleError::UnknownNeuron {
                id,
                max: self.neuron_count(),
            });
        }
        Ok((id - 1) / self.pattern_size + 1)
    }

    /// Inclusive id range of the members of a 1-based level.
    pub fn members_of(&self, level: usize) -> std::ops::RangeInclusive<usize> {
        let first = (level - 1) * self.pattern_size + 1;
        first..=first + self.pattern_size - 1
    }

    pub fn neuron(&self, id: usize) -> Result<NeuronRef, EnsembleError> {
        Ok(NeuronRef {
            id,
            level: self.level_of(id)?,
        })
    }

    /// All neurons in id order.
    pub fn neurons(&self) -> impl Iterator<Item = NeuronRef> + '_ {
        (1..=self.neuron_count()).map(|id| NeuronRef {
            id,
            level: (id - 1) / self.pattern_size + 1,
        })
    }

    pub fn validate(&self) -> Result<(), EnsembleError> {
        if self.levels == 0 {
            return Err(EnsembleError::InvalidLevels);
        }
        if self.pattern_size == 0 {
            return Err(EnsembleError::InvalidPatternSize);
        }
        self.weights.validate()
    }
}
