//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cover_forge::catalog::{self, Certificate, Status};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    ok: bool,
    detail: String,
}

fn statuses(cert: &Certificate, ids: &[&str]) -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for id in ids {
        match cert.status_of(id) {
            Some(Status::Pass) => {}
            other => {
                let witness = cert
                    .checks
                    .iter()
                    .find(|c| c.id == *id)
                    .map(|c| c.witness.clone())
                    .unwrap_or_else(|| "missing".into());
                bad.push(format!("{id} {other:?}: {witness}"));
            }
        }
    }
    for c in cert.checks.iter().filter(|c| c.status == Status::Info) {
        if c.id.starts_with("variant") || c.id.ends_with("corrected") {
            notes.push(format!("{}: {}", c.id, c.witness));
        }
    }
    let ok = bad.is_empty();
    let mut detail = if ok {
        format!("{} checks", ids.len())
    } else {
        bad.join("; ")
    };
    if !notes.is_empty() {
        detail.push_str(&format!(" [{}]", notes.join("; ")));
    }
    Outcome { ok, detail }
}

fn entry(name: &str, ids: &[&str]) -> Outcome {
    match catalog::run(name) {
        Ok(cert) => statuses(&cert, ids),
        Err(e) => Outcome {
            ok: false,
            detail: format!("{name}: {e}"),
        },
    }
}

fn within(limit: Duration, elapsed: Duration, mut o: Outcome) -> Outcome {
    if elapsed > limit {
        o.ok = false;
        o.detail.push_str(&format!("; over the {limit:?} budget"));
    }
    o
}

fn criterion_1() -> Outcome {
    entry("triple-cover", &["C", "l+N", "D"])
}

fn criterion_2() -> Outcome {
    entry(
        "deg6",
        &[
            "C-normalized",
            "renaming",
            "block-structure",
            "D",
            "I_q-ideal",
            "I_q-set",
        ],
    )
}

fn criterion_3() -> Outcome {
    entry("deg6-ogr", &["linear-map", "ideal_equal", "rearrangement"])
}

fn criterion_4() -> Outcome {
    let a = entry("triple-cover", &["cubic-residues"]);
    let b = entry("deg6", &["cubic-residues"]);
    Outcome {
        ok: a.ok && b.ok,
        detail: format!("d=3: {}; d=6: {}", a.detail, b.detail),
    }
}

fn criterion_5() -> Outcome {
    match catalog::run("deg6-fibers") {
        Ok(cert) => {
            let mut o = statuses(&cert, &["deg6-fibers", "triple-fibers"]);
            let slowest = cert
                .timings
                .get("slowest sample")
                .copied()
                .unwrap_or(f64::INFINITY);
            if slowest > 5000.0 {
                o.ok = false;
            }
            o.detail
                .push_str(&format!("; slowest sample {slowest:.0} ms"));
            o
        }
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn criterion_6() -> Outcome {
    entry(
        "three-points",
        &[
            "delta-tc",
            "projected-cubic",
            "ramification",
            "traces",
            "cyclotomic-points",
        ],
    )
}

fn criterion_7() -> Outcome {
    entry(
        "s3-galois",
        &[
            "invariance-r",
            "invariance-iota",
            "group-relations",
            "z3-quotient",
            "z2-quotient",
        ],
    )
}

fn criterion_8() -> Outcome {
    let config = Config {
        cases: 256,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let strategy = (
        common::ideal_input(),
        prop::collection::vec(common::poly(1, 3), 1..=3),
    );
    let result = runner.run(&strategy, |((homogeneous, gens), mult)| {
        common::check_engine(homogeneous, &gens, &mult).map_err(TestCaseError::fail)
    });
    match result {
        Ok(()) => Outcome {
            ok: true,
            detail: "256 random ideals, 0 failures".into(),
        },
        Err(e) => Outcome {
            ok: false,
            detail: e.to_string(),
        },
    }
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("triple cover displays", Duration::from_secs(1), criterion_1),
        ("degree-6 relations", Duration::from_secs(60), criterion_2),
        (
            "spinor identification",
            Duration::from_secs(60),
            criterion_3,
        ),
        (
            "cubic residues vanish",
            Duration::from_secs(60),
            criterion_4,
        ),
        (
            "flat fibers on the linear section",
            Duration::from_secs(60),
            criterion_5,
        ),
        ("three-point fibers", Duration::from_secs(30), criterion_6),
        (
            "S3 symmetry and quotients",
            Duration::from_secs(30),
            criterion_7,
        ),
        (
            "engine property suite",
            Duration::from_secs(120),
            criterion_8,
        ),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let o = within(*limit, elapsed, o);
        println!(
            "criterion {}: {} | {name} | {elapsed:.2?} | {}",
            k + 1,
            if o.ok { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.ok {
            failed += 1;
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
