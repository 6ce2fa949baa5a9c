//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rademacher::analytic::{
    cycle_integral_23, distribution_stats, enumerate_classes, enumerate_classes_23_by_trace, winding_number_23,
};
use rademacher::group::GroupParams;
use rademacher::verify::{self, SuiteOutcome, DEFAULT_SEED};

const PAIRS: [(u32, u32); 7] = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 7)];
const LINKING_PAIRS: [(u32, u32); 3] = [(2, 5), (3, 4), (3, 5)];

const RANDOM_PAIRS: usize = 10_000;
const CLASS_SAMPLES: usize = 1_000;
const DEDEKIND_MAX_SYLLABLES: usize = 16;
const EPSILON_MAX_SYLLABLES: usize = 10;
const LINKING_MAX_SYLLABLES: usize = 6;
const NUMERIC_MAX_SYLLABLES: usize = 6;
const NUMERIC_MAX_TRACE: f64 = 100.0;
const QUADRATURE_TOL: f64 = 1e-6;
const INTEGRAL_BAND: f64 = 1e-4;
const WINDING_SAMPLES: usize = 256;
const WINDING_BAND: f64 = 0.01;
const DISTRIBUTION_MAX_TRACE: u64 = 100;
const DISTRIBUTION_MIN_CLASSES: usize = 1_000;
const KS_BAND: f64 = 0.15;

const LIMIT_GENERATORS: Duration = Duration::from_secs(1);
const LIMIT_COCYCLE: Duration = Duration::from_secs(30);
const LIMIT_DEDEKIND: Duration = Duration::from_secs(60);
const LIMIT_NUMERIC: Duration = Duration::from_secs(300);

struct Line {
    ok: bool,
    detail: String,
}

fn params(p: u32, q: u32) -> std::sync::Arc<GroupParams> {
    GroupParams::new(p, q).expect("valid pair")
}

/// Folds suite outcomes over several pairs into one line.
fn suites(outcomes: Vec<((u32, u32), SuiteOutcome)>, elapsed: Duration, limit: Option<Duration>) -> Line {
    let checked: u64 = outcomes.iter().map(|(_, o)| o.checked).sum();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|(_, o)| !o.passed())
        .map(|((p, q), o)| format!("({p},{q}) {}: {}", o.name, o.first_failure.clone().unwrap_or_default()))
        .collect();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = format!("{checked} cases in {:.2}s", elapsed.as_secs_f64());
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {}s)", l.as_secs()));
    }
    if let Some(f) = failed.first() {
        detail.push_str(&format!("; {} failing, first: {f}", failed.len()));
    }
    Line {
        ok: failed.is_empty() && in_time,
        detail,
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1() -> Line {
    let (out, t) = timed(|| PAIRS.iter().map(|&(p, q)| ((p, q), verify::generator_values(&params(p, q)))).collect());
    suites(out, t, Some(LIMIT_GENERATORS))
}

fn criterion_2() -> Line {
    let (out, t) = timed(|| {
        PAIRS
            .iter()
            .map(|&(p, q)| ((p, q), verify::cocycle_identity(&params(p, q), RANDOM_PAIRS, DEFAULT_SEED)))
            .collect()
    });
    suites(out, t, Some(LIMIT_COCYCLE))
}

fn criterion_3() -> Line {
    let (out, t) = timed(|| {
        PAIRS
            .iter()
            .map(|&(p, q)| ((p, q), verify::dual_pipeline(&params(p, q), RANDOM_PAIRS, DEFAULT_SEED)))
            .collect()
    });
    suites(out, t, None)
}

fn criterion_4() -> Line {
    let (out, t) = timed(|| {
        PAIRS
            .iter()
            .map(|&(p, q)| ((p, q), verify::class_invariance(&params(p, q), CLASS_SAMPLES, DEFAULT_SEED)))
            .collect()
    });
    suites(out, t, None)
}

fn criterion_5() -> Line {
    let (out, t) = timed(|| PAIRS.iter().map(|&(p, q)| ((p, q), verify::psi_one_lemma(&params(p, q)))).collect());
    suites(out, t, None)
}

fn criterion_6() -> Line {
    let (out, t) = timed(|| vec![((2, 3), verify::dedekind_oracle(DEDEKIND_MAX_SYLLABLES))]);
    suites(out, t, Some(LIMIT_DEDEKIND))
}

fn criterion_7() -> Line {
    let (out, t) = timed(|| vec![((2, 3), verify::epsilon_coding(EPSILON_MAX_SYLLABLES))]);
    suites(out, t, None)
}

fn criterion_8() -> Line {
    let (out, t) = timed(|| {
        LINKING_PAIRS
            .iter()
            .map(|&(p, q)| ((p, q), verify::linking_arithmetic(&params(p, q), LINKING_MAX_SYLLABLES)))
            .collect()
    });
    suites(out, t, None)
}

fn numeric_classes() -> Vec<rademacher::analytic::ClassEntry> {
    let table = enumerate_classes(&params(2, 3), NUMERIC_MAX_SYLLABLES).expect("enumeration");
    table
        .entries
        .into_iter()
        .filter(|e| e.trace_numeric < NUMERIC_MAX_TRACE)
        .collect()
}

fn criterion_9() -> Line {
    let start = Instant::now();
    let classes = numeric_classes();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for e in &classes {
        match cycle_integral_23(&e.element, QUADRATURE_TOL) {
            Ok(ci) => {
                worst = worst.max(ci.deviation);
                if ci.deviation >= INTEGRAL_BAND {
                    failures.push(format!("{}: integral {} vs psi {}", e.word, ci.value, ci.psi));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", e.word)),
        }
    }
    let t = start.elapsed();
    Line {
        ok: failures.is_empty() && !classes.is_empty() && t <= LIMIT_NUMERIC,
        detail: format!(
            "{} classes, max |integral - psi| = {worst:.2e} (band {INTEGRAL_BAND:e}), {:.2}s (limit {}s){}",
            classes.len(),
            t.as_secs_f64(),
            LIMIT_NUMERIC.as_secs(),
            failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    }
}

fn criterion_10() -> Line {
    let classes = numeric_classes();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for e in &classes {
        match winding_number_23(&e.element, WINDING_SAMPLES) {
            Ok(w) => {
                worst = worst.max(w.residual);
                if w.index != e.psi || w.residual >= WINDING_BAND {
                    failures.push(format!("{}: winding {} (raw {}) vs psi {}", e.word, w.index, w.raw, e.psi));
                }
            }
            Err(err) => failures.push(format!("{}: {err}", e.word)),
        }
    }
    Line {
        ok: failures.is_empty() && !classes.is_empty(),
        detail: format!(
            "{} classes, max residual before rounding = {worst:.2e} (band {WINDING_BAND}){}",
            classes.len(),
            failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
        ),
    }
}

fn criterion_11() -> Line {
    let table = match enumerate_classes_23_by_trace(DISTRIBUTION_MAX_TRACE) {
        Ok(t) => t,
        Err(e) => {
            return Line {
                ok: false,
                detail: e.to_string(),
            }
        }
    };
    match distribution_stats(&table, f64::NEG_INFINITY, f64::INFINITY, None) {
        Ok(stats) => Line {
            ok: stats.count >= DISTRIBUTION_MIN_CLASSES && stats.ks_distance < KS_BAND,
            detail: format!(
                "{} classes with trace <= {DISTRIBUTION_MAX_TRACE}, Kolmogorov distance {:.4} (band {KS_BAND})",
                stats.count, stats.ks_distance
            ),
        },
        Err(e) => Line {
            ok: false,
            detail: e.to_string(),
        },
    }
}

fn criterion_12() -> Line {
    let (out, t) = timed(|| {
        PAIRS
            .iter()
            .map(|&(p, q)| ((p, q), verify::euler_integrality(&params(p, q), RANDOM_PAIRS, DEFAULT_SEED)))
            .collect()
    });
    suites(out, t, None)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Line); 12] = [
        ("generator values", criterion_1),
        ("cocycle characterization", criterion_2),
        ("dual-pipeline agreement", criterion_3),
        ("class invariance", criterion_4),
        ("psi = 1 lemma", criterion_5),
        ("(2,3) Dedekind oracle", criterion_6),
        ("(2,3) epsilon coding", criterion_7),
        ("linking arithmetic", criterion_8),
        ("(2,3) cycle integral", criterion_9),
        ("(2,3) winding number", criterion_10),
        ("distribution band", criterion_11),
        ("Euler cocycle integrality", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let line = run();
        if !line.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if line.ok { "PASS" } else { "FAIL" },
            line.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
