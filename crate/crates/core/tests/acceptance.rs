//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//! Run alone with `cargo test -p dwbc --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dwbc::lattice::ConfigHistogram;
use dwbc::numerics::DEFAULT_PRECISION;
use dwbc::verify::{
    census_counts, census_identity, genfun_identity, inhomogeneous_two_point, invariants,
    one_point_agreement, ortho_suite, partition_agreement, two_enumeration, two_point_identity,
    Check, CheckKind, Scope,
};

const SEED: u64 = 7;
const PREC: u32 = DEFAULT_PRECISION;

struct Outcome {
    id: u8,
    title: &'static str,
    checks: Vec<Check>,
    extra_failures: Vec<String>,
    elapsed: Duration,
}

fn describe(c: &Check) -> String {
    match c.kind {
        CheckKind::AtMost => format!("{}: {:.2e} <= {:.0e}", c.name, c.value, c.bound),
        CheckKind::AtLeast => format!("{}: {:.3} >= {}", c.name, c.value, c.bound),
        CheckKind::Exact => format!("{}: {} mismatches", c.name, c.value),
    }
}

fn run(id: u8, title: &'static str, f: impl FnOnce() -> dwbc::Result<Vec<Check>>) -> Outcome {
    let start = Instant::now();
    let (checks, extra_failures) = match f() {
        Ok(c) => (c, Vec::new()),
        Err(e) => (Vec::new(), vec![format!("error: {e}")]),
    };
    Outcome {
        id,
        title,
        checks,
        extra_failures,
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    let scope = Scope::acceptance();
    let mut outcomes = Vec::new();

    let mut c1 = run(1, "enumeration census", || {
        census_counts(scope.census_max, PREC)
    });
    let counts: Vec<u64> = (1..=7)
        .map(|n| ConfigHistogram::build(n).map(|h| h.total()).unwrap_or(0))
        .collect();
    if counts != [1, 2, 7, 42, 429, 7436, 218348] {
        c1.extra_failures.push(format!("counts {counts:?}"));
    }
    if c1.elapsed > Duration::from_secs(60) {
        c1.extra_failures
            .push(format!("runtime {:?} exceeds 60 s", c1.elapsed));
    }
    outcomes.push(c1);

    outcomes.push(run(2, "2-enumeration closed form", || {
        two_enumeration(scope.two_enumeration_max)
    }));
    outcomes.push(run(3, "partition-function route agreement", || {
        partition_agreement(&scope, SEED, PREC)
    }));
    outcomes.push(run(4, "one-point route agreement", || {
        one_point_agreement(&scope, SEED, PREC)
    }));
    let mut c5 = run(5, "two-point function from one-point functions", || {
        two_point_identity(&scope, SEED, PREC)
    });
    if c5.elapsed > Duration::from_secs(120) {
        c5.extra_failures
            .push(format!("runtime {:?} exceeds 120 s", c5.elapsed));
    }
    outcomes.push(c5);
    outcomes.push(run(6, "inhomogeneous two-point function", || {
        inhomogeneous_two_point(&scope, SEED, PREC)
    }));
    outcomes.push(run(7, "generating-function identity", || {
        genfun_identity(&scope, SEED, PREC)
    }));
    outcomes.push(run(8, "orthogonal-polynomial suite", || {
        ortho_suite(&scope, SEED, PREC)
    }));
    outcomes.push(run(
        9,
        "doubly refined enumerations from singly refined ones",
        || census_identity(scope.census_identity_max),
    ));
    outcomes.push(run(10, "normalization and symmetry invariants", || {
        invariants(&scope, SEED, PREC)
    }));

    let mut all = true;
    for o in &outcomes {
        let passed = o.extra_failures.is_empty() && o.checks.iter().all(|c| c.passed);
        all &= passed;
        let summary: Vec<String> = o.checks.iter().map(describe).collect();
        println!(
            "criterion {:>2} {} {} ({:.1} s) [{}]",
            o.id,
            if passed { "PASS" } else { "FAIL" },
            o.title,
            o.elapsed.as_secs_f64(),
            summary.join(" | ")
        );
        for c in o.checks.iter().filter(|c| !c.passed) {
            println!("    failed: {} at {}", describe(c), c.detail);
        }
        for f in &o.extra_failures {
            println!("    failed: {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
