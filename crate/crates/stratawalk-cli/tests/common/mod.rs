//! Helpers shared by the integration suites: seeded random gait
//! construction, a slow stepped integrator used as an independent
//! cross-check on displacement computations, and scaffolding for driving
//! the compiled binary.
//!
//! Each test target compiles its own copy of this module and uses only a
//! subset of it, hence the blanket `dead_code` allowance.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stratawalk::gait::{validate_gait, Gait, GaitPrimitive};
use stratawalk::gaitspace::reduce;
use stratawalk::kinematics::{ContactMode, SystemSpec};
use stratawalk::nalgebra::Vector2;

/// Deterministic generator for a numbered test stream.
pub fn seeded(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5EED_0000 + stream)
}

pub fn mode(pinned_leg: usize) -> ContactMode {
    ContactMode::new(pinned_leg).expect("test mode index is valid")
}

/// Random well-formed walker: two or three legs, varied geometry and servo.
pub fn random_spec(rng: &mut ChaCha8Rng) -> SystemSpec {
    let legs = if rng.random_bool(0.5) { 2 } else { 3 };
    let length = rng.random_range(0.3..2.0);
    let rate = rng.random_range(2.0..7.0);
    let switch_time = if rng.random_bool(0.25) {
        0.0
    } else {
        rng.random_range(0.0..0.3)
    };
    SystemSpec::uniform(legs, length, rate, switch_time).expect("random spec is valid")
}

fn random_other_mode(rng: &mut ChaCha8Rng, leg_count: usize, current: usize) -> usize {
    loop {
        let candidate = rng.random_range(1..=leg_count);
        if candidate != current {
            return candidate;
        }
    }
}

/// Random gait that passes `validate_gait`: a random walk over the hybrid
/// shape space, closed back to its starting mode and angle, with at least
/// one swing and one switch.
pub fn random_valid_gait(rng: &mut ChaCha8Rng, spec: &SystemSpec, max_steps: usize) -> Gait {
    let leg_count = spec.leg_count();
    let bound = spec.swing_bound();
    let home_mode = rng.random_range(1..=leg_count);
    let home_alpha = rng.random_range(-bound..=bound);
    let mut current_mode = home_mode;
    let mut current_alpha = home_alpha;
    let mut primitives = Vec::new();

    for _ in 0..rng.random_range(2..=max_steps) {
        if rng.random_bool(0.5) {
            let next = rng.random_range(-bound..=bound);
            primitives.push(GaitPrimitive::Swing {
                mode: mode(current_mode),
                alpha_start: current_alpha,
                alpha_end: next,
            });
            current_alpha = next;
        } else {
            let next = random_other_mode(rng, leg_count, current_mode);
            primitives.push(GaitPrimitive::Switch {
                from_mode: mode(current_mode),
                to_mode: mode(next),
                at_alpha: current_alpha,
            });
            current_mode = next;
        }
    }

    // Close the cycle: return to the home mode first, then to the home angle,
    // reusing the stored floats so the closure is exact.
    if current_mode != home_mode {
        primitives.push(GaitPrimitive::Switch {
            from_mode: mode(current_mode),
            to_mode: mode(home_mode),
            at_alpha: current_alpha,
        });
    }
    if current_alpha != home_alpha {
        primitives.push(GaitPrimitive::Swing {
            mode: mode(home_mode),
            alpha_start: current_alpha,
            alpha_end: home_alpha,
        });
    }
    if !primitives
        .iter()
        .any(|p| matches!(p, GaitPrimitive::Swing { .. }))
    {
        primitives.push(GaitPrimitive::Swing {
            mode: mode(home_mode),
            alpha_start: home_alpha,
            alpha_end: home_alpha,
        });
    }
    if !primitives
        .iter()
        .any(|p| matches!(p, GaitPrimitive::Switch { .. }))
    {
        let away = random_other_mode(rng, leg_count, home_mode);
        primitives.push(GaitPrimitive::Switch {
            from_mode: mode(home_mode),
            to_mode: mode(away),
            at_alpha: home_alpha,
        });
        primitives.push(GaitPrimitive::Switch {
            from_mode: mode(away),
            to_mode: mode(home_mode),
            at_alpha: home_alpha,
        });
    }

    let gait = Gait::new(primitives);
    validate_gait(spec, &gait).expect("generator output is always a valid gait");
    gait
}

/// Random valid gait whose decomposition is non-empty, i.e. one that really
/// exchanges area between at least two contact modes.
pub fn random_multimode_gait(rng: &mut ChaCha8Rng, spec: &SystemSpec, max_steps: usize) -> Gait {
    for _ in 0..1000 {
        let gait = random_valid_gait(rng, spec, max_steps);
        let decomposition = reduce(spec, &gait).expect("random gait reduces");
        if !decomposition.is_empty() {
            return gait;
        }
    }
    panic!("could not draw a gait with a non-empty decomposition");
}

/// Displacement integrated step by step at a fixed `dt`: trapezoid quadrature
/// of the pointwise body velocity along each swing. This never touches the
/// antiderivative used by the trajectory reconstruction, so it serves as an
/// independent numerical oracle.
pub fn stepped_displacement(spec: &SystemSpec, gait: &Gait, dt: f64) -> Vector2<f64> {
    let rate = spec.servo_rate();
    let mut total = Vector2::new(0.0, 0.0);
    for primitive in &gait.primitives {
        let GaitPrimitive::Swing {
            mode,
            alpha_start,
            alpha_end,
        } = *primitive
        else {
            continue; // switches hold the rotor still: no body motion
        };
        let span = alpha_end - alpha_start;
        if span == 0.0 {
            continue;
        }
        let duration = span.abs() / rate;
        let steps = (duration / dt).ceil().max(1.0) as usize;
        let step = duration / steps as f64;
        let alpha_dot = rate.copysign(span);
        let velocity = |t: f64| {
            let v = spec
                .body_velocity(mode, alpha_start + alpha_dot * t, alpha_dot)
                .expect("gait modes are valid");
            Vector2::new(v.vx, v.vy)
        };
        let mut acc = 0.5 * (velocity(0.0) + velocity(duration));
        for k in 1..steps {
            acc += velocity(step * k as f64);
        }
        total += acc * step;
    }
    total
}

// ---------------------------------------------------------------------------
// Scaffolding for end-to-end runs of the compiled binary.

/// Path of the compiled CLI binary under test.
pub fn cli_bin() -> &'static str {
    env!("CARGO_BIN_EXE_stratawalk")
}

/// Resolve a path relative to this crate's directory.
pub fn manifest_path(relative: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(relative)
}

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Run the CLI with `args` and wait for it to finish.
pub fn run_cli(args: &[&str]) -> CliRun {
    let output = Command::new(cli_bin())
        .args(args)
        .output()
        .expect("spawn the CLI binary");
    CliRun {
        code: output.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&output.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

static OUT_DIR_COUNTER: AtomicUsize = AtomicUsize::new(0);

/// A not-yet-existing scratch directory; the CLI is expected to create it.
pub fn fresh_out_dir(tag: &str) -> PathBuf {
    let serial = OUT_DIR_COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!(
        "stratawalk-test-{tag}-{}-{serial}",
        std::process::id()
    ))
}

/// Flat listing of a directory: file name -> raw bytes.
pub fn read_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut tree = BTreeMap::new();
    let entries = std::fs::read_dir(dir)
        .unwrap_or_else(|err| panic!("cannot list {}: {err}", dir.display()));
    for entry in entries {
        let entry = entry.expect("directory entry is readable");
        let name = entry.file_name().to_string_lossy().into_owned();
        let bytes = std::fs::read(entry.path())
            .unwrap_or_else(|err| panic!("cannot read {}: {err}", entry.path().display()));
        tree.insert(name, bytes);
    }
    tree
}

/// Assert two directory listings hold the same files with the same bytes.
pub fn assert_same_tree(
    label: &str,
    left: &BTreeMap<String, Vec<u8>>,
    right: &BTreeMap<String, Vec<u8>>,
) {
    let left_names: Vec<&String> = left.keys().collect();
    let right_names: Vec<&String> = right.keys().collect();
    assert_eq!(
        left_names, right_names,
        "{label}: file sets differ"
    );
    for (name, bytes) in left {
        assert!(
            bytes == &right[name],
            "{label}: contents of {name} differ"
        );
    }
}
