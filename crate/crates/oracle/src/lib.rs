//! Naive reference replay of the nested-pattern dynamics.
//!
//! This crate exists purely as an independent oracle for test suites. It
//! shares no code or types with the simulator: everything is computed with
//! plain loops over neuron pairs, one pairwise signal at a time, exactly as
//! the rules read. Keep it slow and obvious.

// Index loops are the point here; iterator rewrites would obscure the
// pairwise arithmetic this oracle exists to spell out.
#![allow(clippy::needless_range_loop)]

/// Per-neuron outcome of one step: accumulated value and whether it fired.
pub type StepSnapshot = Vec<(f64, bool)>;

/// Replays a run and returns one snapshot per step, index 0 being the
/// all-zero initial state. Neurons are indexed 0-based; neuron `i` belongs
/// to level `i / pattern_size` (0-based here). `ramp = None` is the base
/// mode; `Some(r)` ramps recruitment over `r` driven steps.
#[allow(clippy::too_many_arguments)]
pub fn replay(
    levels: usize,
    pattern_size: usize,
    delta: f64,
    unit: f64,
    drive: f64,
    leak: f64,
    steps: u64,
    ramp: Option<u64>,
) -> Vec<StepSnapshot> {
    let n = levels * pattern_size;
    let mut values = vec![0.0f64; n];
    let mut fired_last = vec![false; n];
    let mut extinguished = vec![false; levels];
    let mut streak = vec![0u64; levels];
    let mut out: Vec<StepSnapshot> = Vec::with_capacity(steps as usize + 1);
    out.push(values.iter().map(|&v| (v, false)).collect());

    for _ in 1..=steps {
        let fires = firing_set(
            levels,
            pattern_size,
            true,
            &fired_last,
            &extinguished,
            &mut streak,
            ramp,
        );
        apply_step(
            levels,
            pattern_size,
            delta,
            unit,
            drive,
            leak,
            &fires,
            &mut values,
            &mut extinguished,
        );
        out.push(values.iter().zip(&fires).map(|(&v, &f)| (v, f)).collect());
        fired_last = fires;
    }
    out
}

fn firing_set(
    levels: usize,
    pattern_size: usize,
    drive_on: bool,
    fired_last: &[bool],
    extinguished: &[bool],
    streak: &mut [u64],
    ramp: Option<u64>,
) -> Vec<bool> {
    let n = levels * pattern_size;
    let mut fires = vec![false; n];
    for k in 0..levels {
        let mut driven = if k == 0 {
            drive_on
        } else {
            let mut parent_fired = false;
            for j in 0..pattern_size {
                if fired_last[(k - 1) * pattern_size + j] {
                    parent_fired = true;
                }
            }
            parent_fired
        };
        if extinguished[k] {
            driven = false;
        }
        streak[k] = if driven { streak[k] + 1 } else { 0 };
        if driven {
            let recruited = match ramp {
                None => pattern_size,
                Some(r) => {
                    let scaled = (pattern_size as u64 * streak[k] / r) as usize;
                    scaled.clamp(1, pattern_size)
                }
            };
            for j in 0..recruited {
                fires[k * pattern_size + j] = true;
            }
        }
    }
    fires
}

#[allow(clippy::too_many_arguments)]
fn apply_step(
    levels: usize,
    pattern_size: usize,
    delta: f64,
    unit: f64,
    drive: f64,
    leak: f64,
    fires: &[bool],
    values: &mut [f64],
    extinguished: &mut [bool],
) {
    let n = levels * pattern_size;
    let old = values.to_vec();
    for i in 0..n {
        let level_i = i / pattern_size;
        if fires[i] {
            // Drive, plus one unit from each other firing neuron of the
            // same pattern, minus a weighted unit from each firing neuron
            // of any deeper pattern.
            let mut input = drive;
            for j in 0..n {
                if j == i || !fires[j] {
                    continue;
                }
                let level_j = j / pattern_size;
                if level_j == level_i {
                    input += unit;
                } else if level_j > level_i {
                    input -= delta * unit;
                }
            }
            values[i] = old[i] + input;
            if values[i] < 0.0 {
                values[i] = 0.0;
            }
        } else {
            values[i] = old[i] * (1.0 - leak);
        }
    }
    for k in 0..levels {
        let mut any_fired = false;
        let mut all_drained = true;
        for j in 0..pattern_size {
            let i = k * pattern_size + j;
            if fires[i] {
                any_fired = true;
                if values[i] > 0.0 {
                    all_drained = false;
                }
            }
        }
        if any_fired && all_drained {
            extinguished[k] = true;
        }
    }
}

/// Outcome of a counter replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterOutcome {
    /// (level, step) of each nested level's first firing, 1-based level.
    pub ticks: Vec<(usize, u64)>,
    pub off_step: Option<u64>,
    /// First step with no activity anywhere, if reached within the horizon.
    pub quiescent_step: Option<u64>,
}

/// Replays the counter cycle: the on-switch latches from step 1 and feeds
/// the group's drive; the off-switch fires once, one step after the
/// innermost level's first firing, and extinguishes the on-switch from the
/// following step.
pub fn replay_counter(
    levels: usize,
    pattern_size: usize,
    delta: f64,
    unit: f64,
    drive: f64,
    leak: f64,
    max_steps: u64,
) -> CounterOutcome {
    let n = levels * pattern_size;
    let mut values = vec![0.0f64; n];
    let mut fired_last = vec![false; n];
    let mut extinguished = vec![false; levels];
    let mut streak = vec![0u64; levels];
    let mut on_fired_last = false;
    let mut on_extinguished = false;
    let mut innermost_fired_last = false;
    let mut off_step: Option<u64> = None;
    let mut ticks: Vec<(usize, u64)> = Vec::new();

    for step in 1..=max_steps {
        let on_fires = !on_extinguished;
        let off_fires = off_step.is_none() && innermost_fired_last;

        let fires = firing_set(
            levels,
            pattern_size,
            on_fired_last,
            &fired_last,
            &extinguished,
            &mut streak,
            None,
        );
        apply_step(
            levels,
            pattern_size,
            delta,
            unit,
            drive,
            leak,
            &fires,
            &mut values,
            &mut extinguished,
        );

        for k in 0..levels {
            let fired = (0..pattern_size).any(|j| fires[k * pattern_size + j]);
            if fired && !ticks.iter().any(|&(level, _)| level == k + 1) {
                ticks.push((k + 1, step));
            }
        }

        if off_fires {
            off_step = Some(step);
            on_extinguished = true;
        }

        let group_fired = fires.iter().any(|&f| f);
        if !on_fires && !off_fires && !group_fired {
            return CounterOutcome {
                ticks,
                off_step,
                quiescent_step: Some(step),
            };
        }

        on_fired_last = on_fires;
        innermost_fired_last =
            (0..pattern_size).any(|j| fires[(levels - 1) * pattern_size + j]);
        fired_last = fires;
    }

    CounterOutcome {
        ticks,
        off_step,
        quiescent_step: None,
    }
}
