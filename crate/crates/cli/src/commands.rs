use std::sync::Arc;

use rademacher::analytic::{
    cycle_integral_23, distribution_stats, enumerate_classes, enumerate_classes_23_by_trace, numeric_checks_23,
    winding_number_23, ClassTable,
};
use rademacher::group::{parse_word, Element, GroupParams, Matrix2};
use rademacher::linking::{self, Space, SymbolVariant};
use rademacher::symbols;
use rademacher::verify::{self, VerifyConfig};
use serde_json::{json, Value};

use crate::args::{Command, Population, Target};
use crate::error::{CliError, Kind};

/// Tolerances a numeric check must meet to pass.
pub const INTEGRAL_BAND: f64 = 1e-4;
pub const WINDING_BAND: f64 = 0.01;

pub enum Output {
    Json(Value),
    /// Report printed as usual, then exit with "verification failed".
    Failed(Value),
    Table(ClassTable),
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `P,Q` into validated parameters.
pub fn parse_pq(text: &str) -> Result<Arc<GroupParams>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parsed: Option<Vec<u32>> = parts.iter().map(|s| s.parse().ok()).collect();
    match parsed.as_deref() {
        Some(&[p, q]) => Ok(GroupParams::new(p, q)?),
        _ => Err(CliError::new(Kind::Parse, format!("--pq expects P,Q with integers, got '{text}'"))),
    }
}

fn pq_or(pq: &Option<String>, default: Option<&str>) -> Result<Arc<GroupParams>, CliError> {
    match (pq.as_deref(), default) {
        (Some(text), _) => parse_pq(text),
        (None, Some(d)) => parse_pq(d),
        (None, None) => Err(CliError::new(Kind::Usage, "--pq P,Q is required")),
    }
}

/// `a,b;c,d` into integer entries; errors carry byte offsets.
pub fn parse_matrix_text(text: &str) -> Result<[[i64; 2]; 2], CliError> {
    let mut entries = Vec::with_capacity(4);
    let mut offset = 0;
    for (r, row) in text.split(';').enumerate() {
        let mut cols = 0;
        for cell in row.split(',') {
            let trimmed = cell.trim();
            let at = offset + cell.find(trimmed).unwrap_or(0);
            let value: i64 = trimmed.parse().map_err(|_| {
                CliError::new(Kind::Parse, format!("matrix entry '{trimmed}' at byte {at} is not an integer"))
            })?;
            entries.push(value);
            offset += cell.len() + 1;
            cols += 1;
        }
        if cols != 2 || r > 1 {
            return Err(CliError::new(Kind::Parse, format!("matrix must be 'a,b;c,d', got '{text}'")));
        }
    }
    if entries.len() != 4 {
        return Err(CliError::new(Kind::Parse, format!("matrix must be 'a,b;c,d', got '{text}'")));
    }
    Ok([[entries[0], entries[1]], [entries[2], entries[3]]])
}

fn element(params: &Arc<GroupParams>, target: &Target) -> Result<Element, CliError> {
    match (&target.word, &target.matrix) {
        (Some(w), None) => Ok(Element::new(params, &parse_word(params, w)?)),
        (None, Some(m)) => {
            if (params.p(), params.q()) != (2, 3) {
                return Err(CliError::new(Kind::Domain, "--matrix applies to --pq 2,3 only"));
            }
            let entries = parse_matrix_text(m)?;
            let matrix = Matrix2::from_integers(params.field(), entries)?;
            Ok(Element::from_matrix(params, &matrix)?)
        }
        _ => Err(CliError::new(Kind::Usage, "exactly one of --word or --matrix is required")),
    }
}

fn population(params: &Arc<GroupParams>, pop: &Population) -> Result<ClassTable, CliError> {
    match pop.max_trace {
        Some(x) => {
            if (params.p(), params.q()) != (2, 3) {
                return Err(CliError::new(Kind::Domain, "--max-trace applies to --pq 2,3 only"));
            }
            Ok(enumerate_classes_23_by_trace(x)?)
        }
        None => Ok(enumerate_classes(params, pop.max_syllables.unwrap_or(6))?),
    }
}

pub fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Symbol(target) => {
            let params = pq_or(&target.pq, None)?;
            let el = element(&params, target)?;
            Ok(Output::Json(to_value(&symbols::symbol_report(&el))))
        }
        Command::Link { target, variant, space } => {
            let params = pq_or(&target.pq, None)?;
            let el = element(&params, target)?;
            let variant: SymbolVariant = variant.parse().map_err(|m: String| CliError::new(Kind::Usage, m))?;
            let space: Space = space.parse().map_err(|m: String| CliError::new(Kind::Usage, m))?;
            Ok(Output::Json(to_value(&linking::linking_report(&el, variant, space)?)))
        }
        Command::Lift { pq, words } => {
            let params = pq_or(pq, None)?;
            let factors = words
                .iter()
                .map(|w| Ok(Element::new(&params, &parse_word(&params, w)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let steps = symbols::lift_trace(&factors)?;
            let last = steps.last().expect("at least one factor");
            let psi = symbols::psi(&last.element);
            Ok(Output::Json(json!({
                "p": params.p(),
                "q": params.q(),
                "factors": factors.iter().map(|f| f.word().to_string()).collect::<Vec<_>>(),
                "steps": steps.iter().map(|s| json!({"word": s.element.word().to_string(), "level": s.level})).collect::<Vec<_>>(),
                "result": {
                    "word": last.element.word().to_string(),
                    "level": last.level,
                    "psi": psi,
                    "in_g_r": linking::in_g_r(last),
                },
            })))
        }
        Command::NormalForm { pq, word } => {
            let params = pq_or(pq, None)?;
            let nf = parse_word(&params, word)?;
            let el = Element::new(&params, &nf);
            Ok(Output::Json(json!({
                "p": params.p(),
                "q": params.q(),
                "input": word,
                "normal_form": nf.to_string(),
                "syllables": nf.syllables.len(),
                "matrix": el.matrix().to_string(),
                "matrix_numeric": el.matrix().to_f64(),
                "classification": el.classify(),
            })))
        }
        Command::Code23(target) => {
            let params = pq_or(&target.pq, Some("2,3"))?;
            let el = element(&params, target)?;
            let coding = symbols::ghys_coding_23(&el)?;
            Ok(Output::Json(json!({
                "word": el.word().to_string(),
                "epsilons": coding.epsilons,
                "sum": coding.sum(),
                "Psi": symbols::rademacher_psi(&el),
            })))
        }
        Command::Enumerate(pop) => {
            let params = pq_or(&pop.pq, None)?;
            Ok(Output::Table(population(&params, pop)?))
        }
        Command::Stats {
            population: pop,
            a,
            b,
            max_length,
        } => {
            let params = pq_or(&pop.pq, None)?;
            let table = population(&params, pop)?;
            Ok(Output::Json(to_value(&distribution_stats(&table, *a, *b, *max_length)?)))
        }
        Command::NumericCheck {
            target,
            max_syllables,
            max_trace,
            tol,
            samples,
        } => {
            let params = pq_or(&target.pq, Some("2,3"))?;
            if (params.p(), params.q()) != (2, 3) {
                return Err(CliError::new(Kind::Domain, "numeric checks are available for --pq 2,3 only"));
            }
            if !(*tol > 0.0) {
                return Err(CliError::new(Kind::Domain, "--tol must be positive"));
            }
            if target.word.is_some() || target.matrix.is_some() {
                let el = element(&params, target)?;
                let ci = cycle_integral_23(&el, *tol)?;
                let w = winding_number_23(&el, *samples)?;
                let passed = ci.deviation < INTEGRAL_BAND && w.index == ci.psi && w.residual < WINDING_BAND;
                let report = json!({
                    "word": el.word().to_string(),
                    "psi": ci.psi,
                    "cycle_integral": ci,
                    "winding": w,
                    "passed": passed,
                });
                return Ok(if passed { Output::Json(report) } else { Output::Failed(report) });
            }
            let pop = Population {
                pq: None,
                max_syllables: *max_syllables,
                max_trace: *max_trace,
            };
            let table = population(&params, &pop)?;
            let rows = numeric_checks_23(&table, f64::INFINITY, *tol, *samples)?;
            let failed = rows.iter().filter(|r| !r.passes(INTEGRAL_BAND, WINDING_BAND)).count();
            let report = json!({
                "p": 2,
                "q": 3,
                "bound": table.bound,
                "classes": rows.len(),
                "failed": failed,
                "max_integral_deviation": rows.iter().map(|r| r.integral_deviation).fold(0.0, f64::max),
                "max_winding_residual": rows.iter().map(|r| r.winding_residual).fold(0.0, f64::max),
                "passed": failed == 0,
                "checks": rows,
            });
            Ok(if failed == 0 { Output::Json(report) } else { Output::Failed(report) })
        }
        Command::Verify {
            pq,
            seed,
            samples,
            max_syllables,
        } => {
            let params = pq_or(pq, None)?;
            let report = verify::run_all(
                &params,
                &VerifyConfig {
                    seed: *seed,
                    samples: *samples,
                    max_syllables: *max_syllables,
                },
            );
            let value = to_value(&report);
            Ok(if report.passed { Output::Json(value) } else { Output::Failed(value) })
        }
    }
}
