//! Acceptance criteria 1-11. Prints one line per criterion and exits nonzero
//! if any fails. All comparisons are exact; the only tolerances are the
//! wall-time budgets below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use stablemac::fixtures;
use stablemac::verify::{Bounds, Registry, SuiteReport};

/// Exact equality everywhere; nothing is approximate.
const EXACT: &str = "exact";

const BUDGET_DAHA: Duration = Duration::from_secs(120);
const BUDGET_ORACLE: Duration = Duration::from_secs(300);
const BUDGET_FIXTURES: Duration = Duration::from_secs(30);
const BUDGET_CONVERGENCE: Duration = Duration::from_secs(120);
const BUDGET_EIGEN: Duration = Duration::from_secs(600);
const BUDGET_WEIGHTS: Duration = Duration::from_secs(600);
const BUDGET_GAMMA: Duration = Duration::from_secs(300);
const BUDGET_UNITRIANGULAR: Duration = Duration::from_secs(300);
const BUDGET_BASIS: Duration = Duration::from_secs(600);
const BUDGET_CONTROLS: Duration = Duration::from_secs(120);

struct Outcome {
    ok: bool,
    detail: String,
}

fn summarize(reports: &[SuiteReport]) -> Outcome {
    let ok = reports.iter().all(|r| r.ok());
    let mut parts: Vec<String> = reports
        .iter()
        .map(|r| format!("{} {}/{}", r.suite, r.passed, r.checks.len()))
        .collect();
    for r in reports {
        if let Some(c) = r.first_failure() {
            parts.push(format!(
                "first failure {}: {}",
                c.name,
                c.detail.as_deref().unwrap_or("")
            ));
        }
        parts.extend(r.notes.iter().cloned());
    }
    Outcome {
        ok,
        detail: parts.join("; "),
    }
}

fn run(reg: &Registry, suite: &str, b: Bounds) -> SuiteReport {
    reg.run(suite, &b)
        .unwrap_or_else(|e| panic!("{suite} rejected its bounds: {e}"))
}

/// Published transcriptions plus the stored files for the given prefix.
fn fixture_criterion(reg: &Registry, prefix: &str) -> Outcome {
    let report = run(reg, "published-fixtures", Bounds::default());
    let mine: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .collect();
    let dir = fixtures::default_dir();
    let stored: Vec<_> = fixtures::registry()
        .into_iter()
        .filter(|f| f.name.starts_with(prefix))
        .map(|f| fixtures::check_one(&f, &dir))
        .collect();
    let ok =
        !mine.is_empty() && mine.iter().all(|c| c.passed()) && stored.iter().all(|c| c.passed());
    let failing: Vec<String> = mine
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.clone())
        .chain(
            stored
                .iter()
                .filter(|c| !c.passed())
                .map(|c| format!("{} (file)", c.name)),
        )
        .collect();
    Outcome {
        ok,
        detail: format!(
            "{} transcriptions, {} stored files{}",
            mine.len(),
            stored.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing {failing:?}")
            }
        ),
    }
}

fn criterion(n: u32, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget;
    let ok = out.ok && in_budget;
    println!(
        "criterion {n:>2} {}: {title} [{EXACT}, {:.1}s of {}s] {}{}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs(),
        out.detail,
        if in_budget { "" } else { " (over budget)" }
    );
    ok
}

fn main() -> ExitCode {
    let reg = Registry::with_defaults();
    let mut all = true;

    all &= criterion(1, "relations on [-2,3]^n, n = 2,3,4", BUDGET_DAHA, || {
        summarize(&[run(
            &reg,
            "daha-relations",
            Bounds {
                exponent_box: Some((-2, 3)),
                ..Bounds::default()
            },
        )])
    });

    all &= criterion(
        2,
        "filling formula equals eigen oracle, l <= 4, |mu| <= 5",
        BUDGET_ORACLE,
        || {
            summarize(&[run(
                &reg,
                "oracle-vs-hhl",
                Bounds {
                    max_len: Some(4),
                    max_size: Some(5),
                    ..Bounds::default()
                },
            )])
        },
    );

    all &= criterion(
        3,
        "printed stable limits E~(1), E~(2,0), E~(0,2), E~(2,2)",
        BUDGET_FIXTURES,
        || fixture_criterion(&reg, "stable_e"),
    );

    all &= criterion(
        4,
        "printed E~(∅|2), E~(0|2), E~(1|1,1) in the P basis",
        BUDGET_FIXTURES,
        || fixture_criterion(&reg, "pair"),
    );

    all &= criterion(
        5,
        "t-adic convergence for (2), (0,2), (2,2), (1,0,1), m = 0..3",
        BUDGET_CONVERGENCE,
        || {
            summarize(&[run(
                &reg,
                "convergence",
                Bounds {
                    m: Some(3),
                    ..Bounds::default()
                },
            )])
        },
    );

    all &= criterion(
        6,
        "limit eigen-equations, l <= 3, |mu| <= 4, r <= 3, both paths",
        BUDGET_EIGEN,
        || {
            summarize(&[run(
                &reg,
                "eigen",
                Bounds {
                    max_len: Some(3),
                    max_size: Some(4),
                    r: Some(3),
                    ..Bounds::default()
                },
            )])
        },
    );

    all &= criterion(
        7,
        "pair weights against direct Y application, l(mu) <= 2, degree <= 3",
        BUDGET_WEIGHTS,
        || {
            summarize(&[run(
                &reg,
                "pair-weights",
                Bounds {
                    k: Some(2),
                    deg: Some(3),
                    ..Bounds::default()
                },
            )])
        },
    );

    all &= criterion(
        8,
        "projection on 100 samples and gamma_mu for |mu| <= 5, l <= 3",
        BUDGET_GAMMA,
        || {
            summarize(&[
                run(
                    &reg,
                    "projection",
                    Bounds {
                        samples: Some(100),
                        ..Bounds::default()
                    },
                ),
                run(
                    &reg,
                    "gamma",
                    Bounds {
                        max_len: Some(3),
                        max_size: Some(5),
                        ..Bounds::default()
                    },
                ),
            ])
        },
    );

    all &= criterion(
        9,
        "A_lambda unitriangular against P_lambda, |lambda| <= 6",
        BUDGET_UNITRIANGULAR,
        || {
            summarize(&[run(
                &reg,
                "unitriangular",
                Bounds {
                    deg: Some(6),
                    ..Bounds::default()
                },
            )])
        },
    );

    all &= criterion(
        10,
        "basis certificates for (0,<=6), (1,<=4), (2,<=4), (3,<=3)",
        BUDGET_BASIS,
        || summarize(&[run(&reg, "basis", Bounds::default())]),
    );

    all &= criterion(
        11,
        "perturbed T_i and perturbed cell factors are caught",
        BUDGET_CONTROLS,
        || {
            let daha = run(
                &reg,
                "daha-relations",
                Bounds {
                    exponent_box: Some((-2, 3)),
                    perturbed: true,
                    ..Bounds::default()
                },
            );
            let fx = run(
                &reg,
                "published-fixtures",
                Bounds {
                    perturbed: true,
                    ..Bounds::default()
                },
            );
            let fx_caught = fx
                .checks
                .iter()
                .any(|c| c.name.starts_with("stable_e") && !c.passed());
            let daha_caught = !daha.ok();
            Outcome {
            ok: daha_caught && fx_caught,
            detail: format!(
                "relations failing under dropped (1-t): {}/{}; stable-limit fixtures failing under swapped arm/leg: {}",
                daha.failed,
                daha.checks.len(),
                fx.checks.iter().filter(|c| c.name.starts_with("stable_e") && !c.passed()).count()
            ),
        }
        },
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
