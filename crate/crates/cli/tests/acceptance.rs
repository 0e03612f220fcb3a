//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the checked bound (visible with `--nocapture`).
//!
//! Criteria that specify command line behaviour run the real binary;
//! numeric criteria drive the library directly, with the naive pairwise
//! replay from `nestfire-oracle` as the independent reference.

use std::process::Command;
use std::time::Instant;

use nestfire::{
    build_counter, build_ensemble, build_layout, check_reference_run, run, run_counter,
    run_graded, wiring_cost, EnsembleConfig, SearchMode, SignalWeights, SimState,
    REFERENCE_CELLS,
};
use nestfire_oracle::replay;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOLERANCE: f64 = 1e-9;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nestfire"))
}

fn random_config(rng: &mut ChaCha8Rng) -> EnsembleConfig {
    let levels = rng.random_range(1..=6usize);
    let pattern_size = rng.random_range(1..=6usize);
    let steps = rng.random_range(0..=15u64);
    let weights = SignalWeights {
        excitatory_unit: rng.random_range(0.1..2.0),
        delta: rng.random_range(0.0..2.0),
        external_drive: rng.random_range(0.0..2.0),
        leak: rng.random_range(0.0..=1.0),
    };
    build_ensemble(levels, pattern_size, weights)
        .unwrap()
        .with_steps(steps)
}

#[test]
fn criterion_1_reference_table_reproduction() {
    let started = Instant::now();
    let output = bin()
        .arg("reproduce-table1")
        .output()
        .expect("binary runs");
    let elapsed = started.elapsed();
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        output.status.success(),
        "exit {:?}, stdout: {stdout}",
        output.status.code()
    );
    assert!(stdout.contains("75/75 cells match"), "{stdout}");
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "took {:.3}s, expected < 1s",
        elapsed.as_secs_f64()
    );

    // The same 75-cell comparison at 1e-9, via the library.
    let (_, diffs) = check_reference_run().unwrap();
    assert!(diffs.is_empty(), "{diffs:?}");
    println!(
        "criterion 1 (reference table reproduction): PASS - exit 0, {REFERENCE_CELLS}/{REFERENCE_CELLS} cells within {TOLERANCE:e}, {:.0}ms",
        elapsed.as_secs_f64() * 1000.0
    );
}

#[test]
fn criterion_2_shutdown_cascade() {
    let cfg = build_ensemble(5, 5, SignalWeights::default())
        .unwrap()
        .with_steps(12);
    let trace = run(&cfg).unwrap();
    for id in cfg.members_of(1) {
        assert!((trace.value_at(5, id).unwrap() - 0.0).abs() <= TOLERANCE);
    }
    assert!(
        trace.rows.iter().filter(|r| r.step >= 10).all(|r| !r.fired),
        "activity at step >= 10"
    );
    for (level, last) in [(1usize, 5u64), (2, 6), (3, 7), (4, 8), (5, 9)] {
        assert_eq!(trace.last_firing_step(level), Some(last), "level {level}");
    }
    println!(
        "criterion 2 (shutdown cascade): PASS - level 1 at 0.0 by step 5, last firings 5,6,7,8,9, silence from step 10"
    );
}

#[test]
fn criterion_3_counter_correctness() {
    let started = Instant::now();
    for levels in 1..=8usize {
        for pattern_size in [1usize, 3, 5] {
            let net = build_counter(levels, pattern_size, SignalWeights::default()).unwrap();
            let log = run_counter(&net, 2 * levels as u64 + 8).unwrap();
            assert_eq!(log.ticks.len(), levels, "{levels}x{pattern_size}");
            for pair in log.ticks.windows(2) {
                assert!(pair[0].step < pair[1].step);
            }
            assert!(log.off_step > log.ticks.last().unwrap().step);
            assert!(
                log.quiescent_step <= 2 * levels as u64 + 4,
                "{levels}x{pattern_size}: quiescent at {}",
                log.quiescent_step
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!(
        "criterion 3 (counter correctness): PASS - n ticks, increasing steps, off after last tick, quiescence <= 2n+4 for n in 1..=8, sizes {{1,3,5}}, {:.0}ms",
        elapsed.as_secs_f64() * 1000.0
    );
}

#[test]
fn criterion_4_economy_inequality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e657374);
    let cases = 200;
    for case in 0..cases {
        let ring_count = rng.random_range(2..=5usize);
        let mut radii: Vec<f64> = (0..ring_count)
            .map(|_| rng.random_range(0.1..10.0))
            .collect();
        radii.sort_by(|a, b| b.partial_cmp(a).unwrap());
        radii.dedup();
        if radii.len() < 2 {
            continue;
        }
        let nodes = rng.random_range(4..=64usize);
        let separation = rng.random_range(0.1..100.0);

        let inward = build_layout(&radii, nodes, separation, SearchMode::Inward).unwrap();
        let outward = build_layout(&radii, nodes, separation, SearchMode::Outward).unwrap();
        let ci = wiring_cost(&inward);
        let co = wiring_cost(&outward);
        assert!(
            ci.total < co.total,
            "case {case}: inward {} !< outward {}",
            ci.total,
            co.total
        );

        // Scale equivariance to 1e-9 (relative).
        let scale = rng.random_range(0.1..10.0);
        let scaled_radii: Vec<f64> = radii.iter().map(|r| r * scale).collect();
        for (mode, base) in [(SearchMode::Inward, ci), (SearchMode::Outward, co)] {
            let scaled =
                build_layout(&scaled_radii, nodes, separation * scale, mode).unwrap();
            let cs = wiring_cost(&scaled);
            for (x, y) in [
                (base.intra_a, cs.intra_a),
                (base.intra_b, cs.intra_b),
                (base.inter, cs.inter),
                (base.total, cs.total),
            ] {
                assert!(
                    (x * scale - y).abs() <= TOLERANCE * (1.0 + y.abs()),
                    "case {case}: {} * {scale} != {}",
                    x,
                    y
                );
            }
        }
    }
    println!(
        "criterion 4 (economy inequality): PASS - inward < outward and scale equivariance on {cases} seeded layouts"
    );
}

#[test]
fn criterion_5_dynamics_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7061747465726e);
    let cases = 100;
    for case in 0..cases {
        let cfg = random_config(&mut rng);
        let trace = run(&cfg).unwrap();

        // Level symmetry.
        for step in 0..=cfg.steps {
            for level in 1..=cfg.levels {
                let mut members = cfg.members_of(level);
                let first = trace.value_at(step, members.next().unwrap()).unwrap();
                for id in members {
                    assert_eq!(trace.value_at(step, id).unwrap(), first, "case {case}");
                }
            }
        }

        // Innermost firing level receives no inhibition.
        let mut state = SimState::initial(&cfg);
        for _ in 0..cfg.steps {
            state = state.step(&cfg).unwrap();
            if let Some(level) = (1..=cfg.levels)
                .rev()
                .find(|&l| cfg.members_of(l).any(|id| state.fired(id)))
            {
                for id in cfg.members_of(level).filter(|&id| state.fired(id)) {
                    assert_eq!(state.inhibitory_input(&cfg, id).unwrap(), 0.0);
                }
            }
        }

        // Activation schedule: level k first fires at step k.
        for level in 1..=cfg.levels {
            let expected = (level as u64 <= cfg.steps).then_some(level as u64);
            assert_eq!(trace.first_firing_step(level), expected, "case {case}");
        }

        // Zero-delta closed form with default drive and unit.
        let closed_cfg = build_ensemble(
            cfg.levels,
            cfg.pattern_size,
            SignalWeights {
                delta: 0.0,
                ..SignalWeights::default()
            },
        )
        .unwrap()
        .with_steps(cfg.steps);
        let closed = run(&closed_cfg).unwrap();
        for step in 0..=cfg.steps {
            for level in 1..=cfg.levels {
                let active = step.saturating_sub(level as u64 - 1);
                let expected = cfg.pattern_size as f64 * active as f64;
                for id in closed_cfg.members_of(level) {
                    assert!(
                        (closed.value_at(step, id).unwrap() - expected).abs() <= TOLERANCE,
                        "case {case}: closed form at step {step} level {level}"
                    );
                }
            }
        }

        // Delta monotonicity: a larger delta never raises a value.
        let d_lo = rng.random_range(0.0..2.0);
        let d_hi = rng.random_range(d_lo..2.0);
        let run_at = |delta: f64| {
            let w = SignalWeights {
                delta,
                ..cfg.weights
            };
            run(&build_ensemble(cfg.levels, cfg.pattern_size, w)
                .unwrap()
                .with_steps(cfg.steps))
            .unwrap()
        };
        let lo = run_at(d_lo);
        let hi = run_at(d_hi);
        for (row_lo, row_hi) in lo.rows.iter().zip(&hi.rows) {
            assert!(
                row_hi.value <= row_lo.value + TOLERANCE,
                "case {case}: step {} neuron {}",
                row_lo.step,
                row_lo.neuron_id
            );
        }
    }
    println!(
        "criterion 5 (dynamics properties): PASS - symmetry, innermost-no-inhibition, schedule, closed form, delta-monotonicity on {cases} seeded configs"
    );
}

#[test]
fn criterion_6_oracle_equivalence() {
    let mut compared = 0usize;
    for levels in 1..=4usize {
        for pattern_size in 1..=4usize {
            for delta in [0.0, 0.25, 0.5, 1.0] {
                for steps in 0..=12u64 {
                    let weights = SignalWeights {
                        delta,
                        ..SignalWeights::default()
                    };
                    let cfg = build_ensemble(levels, pattern_size, weights)
                        .unwrap()
                        .with_steps(steps);
                    let trace = run(&cfg).unwrap();
                    let snapshots =
                        replay(levels, pattern_size, delta, 1.0, 1.0, 0.0, steps, None);
                    let n = cfg.neuron_count();
                    for (step, snapshot) in snapshots.iter().enumerate() {
                        for (i, &(value, fired)) in snapshot.iter().enumerate() {
                            let row = &trace.rows[step * n + i];
                            assert!(
                                (row.value - value).abs() <= TOLERANCE,
                                "{levels}x{pattern_size} d={delta} step {step} neuron {}",
                                i + 1
                            );
                            assert_eq!(row.fired, fired);
                            compared += 1;
                        }
                    }
                }
            }
        }
    }
    println!(
        "criterion 6 (oracle equivalence): PASS - {compared} cells within {TOLERANCE:e} over the exhaustive grid"
    );
}

#[test]
fn criterion_7_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.cfg");
    std::fs::write(
        &config_path,
        "levels = 5\npattern_size = 5\ndelta = 0.5\nsteps = 12\n",
    )
    .unwrap();

    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    for out in [&csv_a, &csv_b] {
        let status = bin()
            .args(["simulate", "--config"])
            .arg(&config_path)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let bytes_a = std::fs::read(&csv_a).unwrap();
    let bytes_b = std::fs::read(&csv_b).unwrap();
    assert_eq!(bytes_a, bytes_b, "CSV outputs differ");

    let svg_a = dir.path().join("a.svg");
    let svg_b = dir.path().join("b.svg");
    for (input, out) in [(&csv_a, &svg_a), (&csv_b, &svg_b)] {
        let status = bin()
            .args(["plot", "--in"])
            .arg(input)
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let svg_bytes_a = std::fs::read(&svg_a).unwrap();
    let svg_bytes_b = std::fs::read(&svg_b).unwrap();
    assert_eq!(svg_bytes_a, svg_bytes_b, "SVG outputs differ");
    println!(
        "criterion 7 (determinism): PASS - byte-identical CSV ({} bytes) and SVG ({} bytes) across repeated runs",
        bytes_a.len(),
        svg_bytes_a.len()
    );
}

#[test]
fn criterion_8_graded_mode_quiescence() {
    for ramp in [2u64, 5, 10] {
        let cfg = build_ensemble(5, 5, SignalWeights::default())
            .unwrap()
            .with_steps(80);
        let trace = run_graded(&cfg, ramp).unwrap();
        let last_fire = trace
            .rows
            .iter()
            .filter(|r| r.fired)
            .map(|r| r.step)
            .max()
            .expect("something fired");
        assert!(
            last_fire < 60,
            "ramp {ramp}: still firing at step {last_fire}"
        );
    }
    println!(
        "criterion 8 (graded mode): PASS - activity ceases within 60 steps for ramp in {{2,5,10}}"
    );
}
