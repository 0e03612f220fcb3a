//! `nestfire` command line tool.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nestfire::{
    build_counter, build_layout, check_reference_run, parse_config, parse_trace_csv,
    render_strength_plot, run, run_counter, run_graded, wiring_cost, CounterError, SearchMode,
    SignalWeights, SimMode, REFERENCE_CELLS,
};

#[derive(Parser)]
#[command(
    name = "nestfire",
    version,
    about = "Deterministic simulator of nested firing-pattern ensembles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation from a config file and emit the CSV trace
    Simulate {
        /// Config file (`key = value` lines; see README)
        #[arg(long)]
        config: PathBuf,
        /// Write the CSV trace here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON trace (config echo + rows)
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the embedded 25-neuron reference run; exits 0 on a full
    /// match, 1 on any mismatch, 2 on internal error
    #[command(name = "reproduce-table1")]
    ReproduceTable1,
    /// Run one counter cycle and print its tick log
    Counter {
        /// Nested levels in the counted group
        #[arg(long)]
        levels: usize,
        /// Neurons per pattern
        #[arg(long = "pattern-size")]
        pattern_size: usize,
        /// Give up if the network is still active after this many steps
        #[arg(long = "max-steps", default_value_t = 64)]
        max_steps: u64,
    },
    /// Compare inward vs outward wiring costs for a two-group ring layout
    Economy {
        /// Strictly decreasing ring radii, comma separated (e.g. 3,2,1)
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        /// Nodes per ring
        #[arg(long)]
        nodes: usize,
        /// Center-to-center distance between the two groups
        #[arg(long)]
        separation: f64,
    },
    /// Render an SVG strength plot from a CSV trace
    Plot {
        /// CSV trace produced by `simulate`
        #[arg(long = "in")]
        input: PathBuf,
        /// Output SVG path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Simulate { config, out, json } => cmd_simulate(config, out, json),
        Command::ReproduceTable1 => cmd_reproduce_table1(),
        Command::Counter {
            levels,
            pattern_size,
            max_steps,
        } => cmd_counter(levels, pattern_size, max_steps),
        Command::Economy {
            radii,
            nodes,
            separation,
        } => cmd_economy(&radii, nodes, separation),
        Command::Plot { input, out } => cmd_plot(input, out),
    }
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(1)
}

fn cmd_simulate(config: PathBuf, out: Option<PathBuf>, json: Option<PathBuf>) -> ExitCode {
    let text = match fs::read_to_string(&config) {
        Ok(text) => text,
        Err(e) => return fail(format_args!("cannot read {}: {e}", config.display())),
    };
    let setup = match parse_config(&text) {
        Ok(setup) => setup,
        Err(e) => return fail(format_args!("{}: {e}", config.display())),
    };
    let trace = match setup.mode {
        SimMode::Base => run(&setup.config),
        SimMode::Graded { ramp } => run_graded(&setup.config, ramp),
    };
    let trace = match trace {
        Ok(trace) => trace,
        Err(e) => return fail(e),
    };
    let csv = nestfire::emit_trace_csv(&trace);
    if let Some(path) = out {
        if let Err(e) = fs::write(&path, &csv) {
            return fail(format_args!("cannot write {}: {e}", path.display()));
        }
    } else {
        print!("{csv}");
    }
    if let Some(path) = json {
        let body = match serde_json::to_string_pretty(&trace) {
            Ok(body) => body,
            Err(e) => return fail(e),
        };
        if let Err(e) = fs::write(&path, body) {
            return fail(format_args!("cannot write {}: {e}", path.display()));
        }
    }
    ExitCode::SUCCESS
}

fn cmd_reproduce_table1() -> ExitCode {
    match check_reference_run() {
        Ok((_, diffs)) if diffs.is_empty() => {
            println!("{REFERENCE_CELLS}/{REFERENCE_CELLS} cells match");
            ExitCode::SUCCESS
        }
        Ok((_, diffs)) => {
            for d in &diffs {
                println!(
                    "step {} neuron {}: expected {}, got {}",
                    d.step, d.neuron_id, d.expected, d.actual
                );
            }
            println!("{}/{REFERENCE_CELLS} cells differ", diffs.len());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("internal error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_counter(levels: usize, pattern_size: usize, max_steps: u64) -> ExitCode {
    let network = match build_counter(levels, pattern_size, SignalWeights::default()) {
        Ok(network) => network,
        Err(e) => return fail(e),
    };
    match run_counter(&network, max_steps) {
        Ok(log) => {
            for tick in &log.ticks {
                println!("tick {}: level {} first fired at step {}", tick.level, tick.level, tick.step);
            }
            println!("off-switch fired at step {}", log.off_step);
            println!("quiescent at step {}", log.quiescent_step);
            ExitCode::SUCCESS
        }
        Err(CounterError::Timeout { max_steps, partial }) => {
            for tick in &partial.ticks {
                println!("tick {}: level {} first fired at step {}", tick.level, tick.level, tick.step);
            }
            if let Some(step) = partial.off_step {
                println!("off-switch fired at step {step}");
            }
            fail(format_args!(
                "network still active after {max_steps} steps ({} of {levels} ticks recorded)",
                partial.ticks.len()
            ))
        }
        Err(e) => fail(e),
    }
}

fn cmd_economy(radii: &[f64], nodes: usize, separation: f64) -> ExitCode {
    let report = |mode: SearchMode| {
        build_layout(radii, nodes, separation, mode).map(|layout| wiring_cost(&layout))
    };
    let inward = match report(SearchMode::Inward) {
        Ok(report) => report,
        Err(e) => return fail(e),
    };
    let outward = match report(SearchMode::Outward) {
        Ok(report) => report,
        Err(e) => return fail(e),
    };
    println!(
        "inward : intra_a={:.6} intra_b={:.6} inter={:.6} total={:.6}",
        inward.intra_a, inward.intra_b, inward.inter, inward.total
    );
    println!(
        "outward: intra_a={:.6} intra_b={:.6} inter={:.6} total={:.6}",
        outward.intra_a, outward.intra_b, outward.inter, outward.total
    );
    let saving = outward.total - inward.total;
    println!(
        "inward placement is cheaper by {:.6} ({:.2}% of the outward total)",
        saving,
        100.0 * saving / outward.total
    );
    ExitCode::SUCCESS
}

fn cmd_plot(input: PathBuf, out: PathBuf) -> ExitCode {
    let text = match fs::read_to_string(&input) {
        Ok(text) => text,
        Err(e) => return fail(format_args!("cannot read {}: {e}", input.display())),
    };
    let trace = match parse_trace_csv(&text) {
        Ok(trace) => trace,
        Err(e) => return fail(format_args!("{}: {e}", input.display())),
    };
    let svg = match render_strength_plot(&trace) {
        Ok(svg) => svg,
        Err(e) => return fail(e),
    };
    if let Err(e) = fs::write(&out, svg) {
        return fail(format_args!("cannot write {}: {e}", out.display()));
    }
    ExitCode::SUCCESS
}
