//! Browser bindings for the simulator.
//!
//! Three operations back the demo page: render a strength plot for an
//! ensemble run, run a counter cycle, and compare inward vs outward wiring
//! costs. Every function returns a string (SVG or JSON) so the page needs
//! no shared memory handling.

use wasm_bindgen::prelude::*;

use nestfire::{
    build_counter, build_ensemble, build_layout, render_strength_plot, run, run_counter,
    run_graded, wiring_cost, CounterError, Group, Layout, SearchMode, SignalWeights,
};

/// Runs an ensemble and renders the SVG strength plot. `ramp = 0` selects
/// the base mode; `ramp >= 1` the graded mode.
#[allow(clippy::too_many_arguments)]
pub fn strength_plot(
    levels: usize,
    pattern_size: usize,
    delta: f64,
    excitatory_unit: f64,
    external_drive: f64,
    leak: f64,
    steps: u64,
    ramp: u64,
) -> Result<String, String> {
    let weights = SignalWeights {
        excitatory_unit,
        delta,
        external_drive,
        leak,
    };
    let config = build_ensemble(levels, pattern_size, weights)
        .map_err(|e| e.to_string())?
        .with_steps(steps);
    let trace = if ramp == 0 {
        run(&config)
    } else {
        run_graded(&config, ramp)
    }
    .map_err(|e| e.to_string())?;
    render_strength_plot(&trace).map_err(|e| e.to_string())
}

/// Runs one counter cycle and reports the tick log as JSON. A run that is
/// still active after `max_steps` reports `"timeout": true` with the
/// partial log.
pub fn counter_log(levels: usize, pattern_size: usize, max_steps: u64) -> Result<String, String> {
    let network =
        build_counter(levels, pattern_size, SignalWeights::default()).map_err(|e| e.to_string())?;
    match run_counter(&network, max_steps) {
        Ok(log) => Ok(serde_json::json!({
            "timeout": false,
            "ticks": log.ticks.iter().map(|t| serde_json::json!({
                "level": t.level,
                "step": t.step,
            })).collect::<Vec<_>>(),
            "off_step": log.off_step,
            "quiescent_step": log.quiescent_step,
            "total_neurons": network.total_neurons(),
        })
        .to_string()),
        Err(CounterError::Timeout { max_steps, partial }) => Ok(serde_json::json!({
            "timeout": true,
            "max_steps": max_steps,
            "ticks": partial.ticks.iter().map(|t| serde_json::json!({
                "level": t.level,
                "step": t.step,
            })).collect::<Vec<_>>(),
            "off_step": partial.off_step,
        })
        .to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn layout_geometry(layout: &Layout) -> serde_json::Value {
    let points = |group: Group| {
        layout
            .nodes(group)
            .iter()
            .map(|p| serde_json::json!([p.x, p.y]))
            .collect::<Vec<_>>()
    };
    let terminal = |group: Group| {
        let t = layout.terminal(group);
        serde_json::json!([t.x, t.y])
    };
    let cost = wiring_cost(layout);
    serde_json::json!({
        "nodes_a": points(Group::A),
        "nodes_b": points(Group::B),
        "terminal_a": terminal(Group::A),
        "terminal_b": terminal(Group::B),
        "cost": {
            "intra_a": cost.intra_a,
            "intra_b": cost.intra_b,
            "inter": cost.inter,
            "total": cost.total,
        },
    })
}

/// Builds both inward and outward layouts for the same rings and reports
/// geometry plus cost breakdowns as JSON. `radii_csv` is comma separated,
/// strictly decreasing, e.g. `"3,2,1"`.
pub fn economy_compare(radii_csv: &str, nodes: usize, separation: f64) -> Result<String, String> {
    let radii: Vec<f64> = radii_csv
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad radius `{s}`")))
        .collect::<Result<_, _>>()?;
    let inward =
        build_layout(&radii, nodes, separation, SearchMode::Inward).map_err(|e| e.to_string())?;
    let outward =
        build_layout(&radii, nodes, separation, SearchMode::Outward).map_err(|e| e.to_string())?;
    let inward_total = wiring_cost(&inward).total;
    let outward_total = wiring_cost(&outward).total;
    Ok(serde_json::json!({
        "radii": radii,
        "separation": separation,
        "inward": layout_geometry(&inward),
        "outward": layout_geometry(&outward),
        "saving": outward_total - inward_total,
        "saving_percent": 100.0 * (outward_total - inward_total) / outward_total,
    })
    .to_string())
}

#[wasm_bindgen(js_name = strengthPlotSvg)]
#[allow(clippy::too_many_arguments)]
pub fn strength_plot_svg(
    levels: usize,
    pattern_size: usize,
    delta: f64,
    excitatory_unit: f64,
    external_drive: f64,
    leak: f64,
    steps: u64,
    ramp: u64,
) -> Result<String, JsValue> {
    strength_plot(
        levels,
        pattern_size,
        delta,
        excitatory_unit,
        external_drive,
        leak,
        steps,
        ramp,
    )
    .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = counterLogJson)]
pub fn counter_log_json(
    levels: usize,
    pattern_size: usize,
    max_steps: u64,
) -> Result<String, JsValue> {
    counter_log(levels, pattern_size, max_steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = economyCompareJson)]
pub fn economy_compare_json(
    radii_csv: &str,
    nodes: usize,
    separation: f64,
) -> Result<String, JsValue> {
    economy_compare(radii_csv, nodes, separation).map_err(|e| JsValue::from_str(&e))
}
