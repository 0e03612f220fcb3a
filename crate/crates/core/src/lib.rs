//! Deterministic simulator of nested firing-pattern ensembles.
//!
//! A nested ensemble is a chain of patterns (synchronously firing neuron
//! groups), each contained in the previous one. Members of a firing pattern
//! exchange excitatory signal and receive a constant external drive; firing
//! neurons in inner patterns send delta-weighted inhibitory signal to firing
//! neurons in every enclosing pattern. Activation sweeps inward one level
//! per step, the accumulated inhibition eventually switches the outer
//! patterns off, and the starved chain collapses behind them.
//!
//! The crate provides:
//! - [`ensemble`]: static topology and parameter validation,
//! - [`dynamics`]: the synchronous step engine and trace recording,
//! - [`counter`]: an on-switch/off-switch timer-counter wrapped around a
//!   nested group,
//! - [`economy`]: wiring-cost comparison of inward vs outward search
//!   terminals on concentric ring layouts,
//! - [`config`], [`trace_csv`], [`plot`], [`reference`]: the text config
//!   format, CSV traces, SVG strength plots, and the embedded reference
//!   table check.

pub mod config;
pub mod counter;
pub mod dynamics;
pub mod economy;
pub mod ensemble;
pub mod plot;
pub mod reference;
pub mod trace_csv;

pub use config::{emit_config, parse_config, ConfigError, SimMode, SimSetup};
pub use counter::{
    build_counter, run_counter, CounterError, CounterNetwork, PartialTickLog, TickEvent, TickLog,
};
pub use dynamics::{run, run_graded, DynamicsError, SimState, Trace, TraceRow};
pub use economy::{
    build_layout, wiring_cost, CostReport, EconomyError, Group, Layout, Point, SearchMode,
};
pub use ensemble::{build_ensemble, EnsembleConfig, EnsembleError, NeuronRef, SignalWeights};
pub use plot::{render_strength_plot, PlotError};
pub use reference::{check_reference_run, reference_config, CellDiff, REFERENCE_CELLS};
pub use trace_csv::{emit_trace_csv, parse_trace_csv, CsvError};
