//! The acceptance gate: eleven criteria, one PASS/FAIL line each, with the
//! time budget of every criterion enforced.
//!
//! `cargo test -p factperm-core --test acceptance`

use std::time::{Duration, Instant};

use factperm::fincat::comma_probe;
use factperm::finstar::{check_factorization, check_nabla};
use factperm::suite::{builtin_fixtures, run_suite, Bounds, Check, Fixture, FixtureContext, Report, RunConfig};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} [{}]: {}", r.check, r.fixture.as_deref().unwrap_or("-"), r.counterexamples.first().cloned().unwrap_or_default()))
        .collect();
    Outcome { passed: failed.is_empty(), detail: failed.join("; ") }
}

/// Runs `checks` on every fixture from fresh contexts, so that the timing
/// includes building the towers.
fn on_fixtures(fixtures: &[Fixture], checks: &[Check], bounds: Bounds) -> Outcome {
    let mut reports = Vec::new();
    for fx in fixtures {
        let mut ctx = FixtureContext::new(fx, bounds);
        reports.extend(checks.iter().map(|&c| ctx.run(c)));
    }
    from_reports(&reports)
}

fn criterion(results: &mut Vec<bool>, id: usize, name: &str, budget: Option<Duration>, run: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_time = budget.map_or(true, |b| elapsed < b);
    let passed = outcome.passed && in_time;
    let budget_text = budget.map(|b| format!(" < {:.0?}", b)).unwrap_or_default();
    let mut line = format!("criterion {id:>2} {}: {name} ({elapsed:.2?}{budget_text})", if passed { "PASS" } else { "FAIL" });
    if !in_time {
        line.push_str(" over budget");
    }
    if !outcome.detail.is_empty() {
        line.push_str(&format!(" -- {}", outcome.detail));
    }
    println!("{line}");
    results.push(passed);
}

fn main() -> std::process::ExitCode {
    let fixtures = builtin_fixtures();
    let bounds = Bounds::from_max_n(3);
    let secs = Duration::from_secs;
    let mut results = Vec::new();

    criterion(&mut results, 1, "Fin_* factorization, n, m <= 4", Some(secs(1)), || {
        let bad = check_factorization(4);
        Outcome { passed: bad.is_empty(), detail: bad.first().map(|v| v.detail.clone()).unwrap_or_default() }
    });
    criterion(&mut results, 2, "Delta^op = nabla, n, m <= 3", Some(secs(1)), || {
        let bad = check_nabla(3);
        Outcome { passed: bad.is_empty(), detail: bad.first().map(|v| v.detail.clone()).unwrap_or_default() }
    });
    criterion(&mut results, 3, "Phi o Psi = id and Psi o Phi(A) -> A, n <= 3", Some(secs(10)), || {
        on_fixtures(&fixtures, &[Check::FactWitness], bounds)
    });
    criterion(&mut results, 4, "lax squares for n, m <= 3 and Segal witnesses", Some(secs(30)), || {
        on_fixtures(&fixtures, &[Check::LaxSquares, Check::Segal], bounds)
    });
    criterion(&mut results, 5, "Perm_2(Fact(C)) is permutative", Some(secs(60)), || {
        on_fixtures(&fixtures, &[Check::PermLaws], bounds)
    });
    criterion(&mut results, 6, "counit is strict symmetric monoidal, triangle with evaluation", Some(secs(10)), || {
        on_fixtures(&fixtures, &[Check::Counit], bounds)
    });
    criterion(&mut results, 7, "pi_0(F<1>) -> pi_0(Perm_N(F)) bijective, N <= 3", Some(secs(10)), || {
        on_fixtures(&fixtures, &[Check::Pi0], bounds)
    });
    criterion(&mut results, 8, "comma probe is (1, 0, []) on every object", Some(secs(10)), || {
        let mut detail = Vec::new();
        for fx in &fixtures {
            let c = fx.perm.base();
            for o in c.objects() {
                let r = comma_probe(c, o);
                if (r.component_count, r.h1_rank, r.h1_torsion.as_slice()) != (1, 0, &[][..]) {
                    detail.push(format!("{} at {}: {r:?}", fx.name, c.object_label(o)));
                }
            }
        }
        Outcome { passed: detail.is_empty(), detail: detail.join("; ") }
    });
    criterion(&mut results, 9, "path adjunctions and alpha/beta with beta o sigma = eta", Some(secs(10)), || {
        on_fixtures(&fixtures, &[Check::AlphaBeta], bounds)
    });
    criterion(&mut results, 10, "epsilon simplicial up to dimension 3, marking monotone", Some(secs(5)), || {
        on_fixtures(&fixtures, &[Check::Epsilon], bounds)
    });
    criterion(&mut results, 11, "two full-suite runs give byte-identical JSON", None, || {
        let config = RunConfig::new(fixtures.clone());
        let first = serde_json::to_string_pretty(&run_suite(&config)).expect("reports serialize");
        let second = serde_json::to_string_pretty(&run_suite(&config)).expect("reports serialize");
        let reports: Vec<serde_json::Value> = serde_json::from_str(&first).expect("round trip");
        let failing = reports.iter().filter(|r| r["passed"] != true).count();
        Outcome {
            passed: first == second,
            detail: format!("{} reports, {} bytes, {failing} failing", reports.len(), first.len()),
        }
    });

    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
