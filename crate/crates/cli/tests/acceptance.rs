//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//!
//! Run with `cargo test -p geomean-cli --test acceptance`.

use std::ops::RangeInclusive;
use std::process::{Command, ExitCode};
use std::time::Instant;

use geomean::harness::{
    check_block_regularity_split, gen_tuple, Check, CheckReport, GenSpec, Structure,
};
use geomean::{inductive_mean, mean, variant_mean, MeanKind, SolverConfig, SpdMatrix, SpdTuple};
use geomean_cli::{Format, MatrixFile};

const BASE_SEED: u64 = 0x6d65_616e;
const GEOMETRIC: [MeanKind; 3] = MeanKind::GEOMETRIC;
const ALL_KINDS: [MeanKind; 5] = MeanKind::ALL;

fn config_seed(dim: usize, k: usize) -> u64 {
    BASE_SEED + (dim as u64) * 64 + k as u64
}

/// Aggregate of many check reports.
#[derive(Default)]
struct Tally {
    reports: usize,
    trials: usize,
    failures: usize,
    worst: f64,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            worst: f64::NEG_INFINITY,
            ..Self::default()
        }
    }

    fn add(&mut self, context: &str, r: &CheckReport) {
        self.reports += 1;
        self.trials += r.trials;
        self.failures += r.failures;
        self.worst = self.worst.max(r.worst_violation);
        if !r.passed() && self.first_failure.is_none() {
            self.first_failure = Some(format!("{context} {r}"));
        }
    }

    fn passed(&self) -> bool {
        self.failures == 0 && self.reports > 0
    }

    fn summary(&self) -> String {
        let mut s = format!(
            "{} runs, {} trials, {} failures, worst_violation={:e}",
            self.reports, self.trials, self.failures, self.worst
        );
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

struct Grid {
    dims: RangeInclusive<usize>,
    ks: RangeInclusive<usize>,
    cond: f64,
    trials: usize,
}

fn run_grid(tally: &mut Tally, grid: &Grid, checks: &[Check], kinds: &[MeanKind], tol: f64) {
    for dim in grid.dims.clone() {
        for k in grid.ks.clone() {
            let spec = GenSpec {
                cond_bound: grid.cond,
                ..GenSpec::new(dim, k, config_seed(dim, k))
            };
            for &check in checks {
                for &kind in kinds.iter().filter(|&&kind| check.applies_to(kind)) {
                    let context = format!("dim={dim} k={k}");
                    match check.run(kind, &spec, grid.trials, tol) {
                        Ok(r) => tally.add(&context, &r),
                        Err(e) => {
                            tally.reports += 1;
                            tally.failures += 1;
                            tally.worst = f64::INFINITY;
                            tally.first_failure.get_or_insert(format!("{context} {check}[{kind}]: {e}"));
                        }
                    }
                }
            }
        }
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_tally(t: Tally) -> Outcome {
    Outcome {
        passed: t.passed(),
        detail: t.summary(),
    }
}

fn commuting_exactness() -> Outcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let grid = Grid {
        dims: 2..=8,
        ks: 1..=6,
        cond: 1e3,
        trials: 100,
    };
    run_grid(&mut t, &grid, &[Check::Commuting], &ALL_KINDS, 1e-10);
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        passed: t.passed() && secs < 30.0,
        detail: format!("{}; {secs:.2}s (limit 30s)", t.summary()),
    }
}

fn two_variable_consistency() -> Outcome {
    let mut t = Tally::new();
    let grid = Grid {
        dims: 2..=8,
        ks: 2..=2,
        cond: 1e3,
        trials: 200,
    };
    run_grid(&mut t, &grid, &[Check::TwoVariable], &GEOMETRIC, 1e-7);
    from_tally(t)
}

fn defining_properties() -> Outcome {
    let grid = Grid {
        dims: 2..=8,
        ks: 1..=6,
        cond: 1e3,
        trials: 100,
    };
    let mut t = Tally::new();
    run_grid(&mut t, &grid, &[Check::Homogeneity], &ALL_KINDS, 1e-10);
    run_grid(&mut t, &grid, &[Check::Concavity], &ALL_KINDS, 1e-8);
    run_grid(&mut t, &grid, &[Check::Updating], &ALL_KINDS, 1e-9);
    from_tally(t)
}

fn additional_properties() -> Outcome {
    let grid = Grid {
        dims: 2..=8,
        ks: 2..=6,
        cond: 1e3,
        trials: 100,
    };
    let checks = [
        Check::Monotone,
        Check::Congruence,
        Check::JointHomogeneity,
        Check::SelfDual,
        Check::Determinant,
    ];
    let mut t = Tally::new();
    run_grid(&mut t, &grid, &checks, &ALL_KINDS, 1e-8);
    from_tally(t)
}

fn hga_sandwich() -> Outcome {
    let grid = Grid {
        dims: 2..=8,
        ks: 2..=6,
        cond: 1e3,
        trials: 100,
    };
    let mut t = Tally::new();
    run_grid(&mut t, &grid, &[Check::Hga], &GEOMETRIC, 1e-8);
    from_tally(t)
}

fn karcher_solver() -> Outcome {
    // the check reports any solver error, including non-convergence, as a failure
    let grid = Grid {
        dims: 1..=8,
        ks: 1..=6,
        cond: 1e3,
        trials: 100,
    };
    let mut t = Tally::new();
    run_grid(&mut t, &grid, &[Check::KarcherResidual], &[MeanKind::Karcher], 0.0);
    from_tally(t)
}

/// The seed-1 draw of a 3-tuple of 2×2 matrices.
fn distinctness_witness() -> SpdTuple {
    let rows = [
        [[4.555161251728475, 0.2039797188878025], [0.2039797188878025, 0.30560746126188526]],
        [[0.737802918707664, 1.269794038818419], [1.269794038818419, 3.4029711294246754]],
        [[2.883753974297013, -0.9128348203327534], [-0.9128348203327534, 5.241102764839622]],
    ];
    SpdTuple::new(
        rows.iter()
            .map(|m| SpdMatrix::from_rows(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap())
            .collect(),
    )
    .unwrap()
}

fn distinctness() -> Outcome {
    const WITNESS_SEED: u64 = 1;
    let t = distinctness_witness();
    let regenerated = gen_tuple(&GenSpec::new(2, 3, WITNESS_SEED)).unwrap();
    let g = inductive_mean(&t).unwrap();
    let h = variant_mean(&t).unwrap();
    let gap = g.max_abs_diff(&h).unwrap();
    Outcome {
        passed: regenerated == t && gap > 1e-4,
        detail: format!(
            "seed={WITNESS_SEED} dim=2 k=3 ‖inductive − variant‖_max={gap:e} (> 1e-4), regenerated tuple identical: {}",
            regenerated == t
        ),
    }
}

fn block_regularity() -> Outcome {
    let mut t = Tally::new();
    for split in [2, 3] {
        for k in 1..=6 {
            let spec = GenSpec {
                cond_bound: 1e3,
                structure: Structure::Block,
                ..GenSpec::new(4, k, config_seed(4, k) + split as u64)
            };
            for kind in GEOMETRIC {
                let r = check_block_regularity_split(kind, &spec, split, 100, 1e-8).unwrap();
                t.add(&format!("k={k}"), &r);
            }
        }
    }
    from_tally(t)
}

fn jensen() -> Outcome {
    let grid = Grid {
        dims: 2..=4,
        ks: 1..=3,
        cond: 1e3,
        trials: 100,
    };
    let mut t = Tally::new();
    run_grid(&mut t, &grid, &[Check::Jensen, Check::JensenPair], &GEOMETRIC, 1e-8);
    from_tally(t)
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_geomean"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`geomean {}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn cli_round_trip() -> Outcome {
    let dir = std::env::temp_dir().join(format!("geomean-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = || -> Result<usize, String> {
        let mut compared = 0;
        for (dim, k, seed) in [(2usize, 3usize, 1u64), (3, 4, 42), (5, 2, 7), (8, 6, 2024)] {
            for format in [Format::Json, Format::Csv] {
                let path = dir.join(format!("t{dim}-{k}-{seed}.{format}"));
                let path_s = path.to_str().unwrap();
                let (d, kk, s) = (dim.to_string(), k.to_string(), seed.to_string());
                let gen_args = [
                    "gen", "--dim", &d, "--k", &kk, "--seed", &s, "--cond", "1000", "--format", format.name(),
                ];
                let first = cli(&gen_args)?;
                let second = cli(&gen_args)?;
                if first != second {
                    return Err(format!("gen output differs between runs for {gen_args:?}"));
                }
                std::fs::write(&path, &first).map_err(|e| e.to_string())?;

                let spec = GenSpec {
                    cond_bound: 1000.0,
                    ..GenSpec::new(dim, k, seed)
                };
                let tuple = gen_tuple(&spec).map_err(|e| e.to_string())?;
                let parsed = MatrixFile::parse(std::str::from_utf8(&first).unwrap(), format)
                    .map_err(|e| e.to_string())?
                    .to_tuple()
                    .map_err(|e| e.to_string())?;
                if parsed != tuple {
                    return Err(format!("parsed gen file differs from library draw ({dim}, {k}, {seed})"));
                }
                for kind in MeanKind::ALL {
                    let out = cli(&["mean", "--kind", kind.name(), "--input", path_s, "--format", format.name()])?;
                    let got = MatrixFile::parse(std::str::from_utf8(&out).unwrap(), format)
                        .map_err(|e| e.to_string())?;
                    let expected = mean(kind, &tuple, &SolverConfig::default()).map_err(|e| e.to_string())?;
                    if got.matrices.len() != 1 || got.matrices[0] != *expected.as_sym() {
                        return Err(format!("{kind} mean differs after round trip ({dim}, {k}, {seed}, {format})"));
                    }
                    compared += 1;
                }
            }
        }
        Ok(compared)
    };
    let result = run();
    let _ = std::fs::remove_dir_all(&dir);
    match result {
        Ok(n) => Outcome {
            passed: true,
            detail: format!("{n} means bit-identical after gen → mean → parse; gen output byte-identical across runs"),
        },
        Err(e) => Outcome {
            passed: false,
            detail: e,
        },
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("commuting-case exactness (1e-10)", commuting_exactness),
        ("two-variable consistency (1e-7)", two_variable_consistency),
        ("homogeneity 1e-10, concavity 1e-8, updating 1e-9", defining_properties),
        ("monotone, congruence, joint homogeneity, self-duality, determinant (1e-8)", additional_properties),
        ("harmonic <= geometric <= arithmetic (1e-8)", hga_sandwich),
        ("karcher residual <= 1e-10 within 500 iterations", karcher_solver),
        ("inductive/variant distinctness witness", distinctness),
        ("block-diagonal law on 2+2 and 3+1 (1e-8)", block_regularity),
        ("jensen contraction inequality (1e-8)", jensen),
        ("cli round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {name}: {} ({:.1}s)",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
