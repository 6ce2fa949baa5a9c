//! Primitive hyperbolic conjugacy classes and the distribution of
//! `Psi / length`.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::cycle::{cycle_integral_23, winding_number_23};
use super::geodesic::geodesic_data;
use super::AnalyticError;
use crate::group::{
    canonical_rotation, cyclic_period, cyclic_reduce, Classification, Element, Generator, GroupParams, GroupWord,
    Matrix2, Syllable,
};
use crate::symbols;

/// Largest number of candidate words a syllable-bounded enumeration visits.
pub const MAX_CANDIDATES: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum EnumerationBound {
    MaxSyllables(usize),
    MaxTrace(u64),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    /// Canonical cyclic word of the class.
    pub word: String,
    pub syllables: usize,
    /// Word of the representative with `tr > 2` and `c > 0`.
    pub representative: String,
    pub trace_numeric: f64,
    /// `psi` of the representative; equal to `Psi` of the class.
    pub psi: i64,
    #[serde(rename = "Psi")]
    pub psi_upper: i64,
    pub length: f64,
    #[serde(skip)]
    pub element: Element,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassTable {
    pub p: u32,
    pub q: u32,
    pub bound: EnumerationBound,
    pub entries: Vec<ClassEntry>,
}

/// A conjugate of a hyperbolic element with `tr > 2` and `c > 0`.
pub fn positive_representative(el: &Element) -> Result<Element, AnalyticError> {
    if el.classify() != Classification::Hyperbolic {
        return Err(AnalyticError::Domain(format!("element is {}, not hyperbolic", el.classify())));
    }
    let params = el.params();
    let fix_sign = |x: Element| if x.trace_sign() < 0 { x.neg() } else { x };
    let positive_c = |x: &Element| x.matrix().c().signum() > 0;
    let cyc = cyclic_reduce(params, el.word());
    let n = cyc.syllables.len();
    for k in 0..n {
        let rotated: Vec<Syllable> = cyc.syllables[k..].iter().chain(&cyc.syllables[..k]).copied().collect();
        let x = fix_sign(Element::new(params, &GroupWord::from_syllables(rotated)));
        if positive_c(&x) {
            return Ok(x);
        }
    }
    let base = fix_sign(el.clone());
    for gen in [Generator::S, Generator::U] {
        for e in 1..2 * gen.half_order(params) {
            let g = Element::new(params, &GroupWord::from_syllables(vec![Syllable::new(gen, e)]));
            let x = base.conjugate_by(&g);
            if positive_c(&x) {
                return Ok(x);
            }
        }
    }
    Err(AnalyticError::Internal(format!("no conjugate of {} with c > 0 found", el.word())))
}

fn entry_for(canonical: &GroupWord, rep: Element) -> Result<ClassEntry, AnalyticError> {
    let geo = geodesic_data(&rep)?;
    let [[a, _], [_, d]] = rep.matrix().to_f64();
    Ok(ClassEntry {
        word: canonical.to_string(),
        syllables: canonical.syllables.len(),
        representative: rep.word().to_string(),
        trace_numeric: a + d,
        psi: symbols::psi(&rep),
        psi_upper: symbols::rademacher_psi(&rep),
        length: geo.length,
        element: rep,
    })
}

/// All primitive hyperbolic classes whose cyclically reduced words have at
/// most `max_syllables` syllables, in order of syllable count and then of
/// exponent sequence.
pub fn enumerate_classes(params: &Arc<GroupParams>, max_syllables: usize) -> Result<ClassTable, AnalyticError> {
    if max_syllables < 2 {
        return Err(AnalyticError::Domain(format!("max_syllables must be >= 2, got {max_syllables}")));
    }
    let radix_s = params.p() as u64 - 1;
    let radix_u = params.q() as u64 - 1;
    let per_pair = radix_s * radix_u;
    let mut total: u64 = 0;
    for k in 1..=max_syllables / 2 {
        total = per_pair
            .checked_pow(k as u32)
            .and_then(|c| total.checked_add(c))
            .filter(|&t| t <= MAX_CANDIDATES)
            .ok_or_else(|| {
                AnalyticError::Domain(format!(
                    "more than {MAX_CANDIDATES} candidate words below {max_syllables} syllables"
                ))
            })?;
    }
    let mut entries = Vec::new();
    for k in 1..=max_syllables / 2 {
        let count = per_pair.pow(k as u32);
        let found: Result<Vec<Option<ClassEntry>>, AnalyticError> = (0..count)
            .into_par_iter()
            .map(|index| {
                let mut rest = index;
                let mut syl = Vec::with_capacity(2 * k);
                for _ in 0..k {
                    syl.push(Syllable::s((rest % radix_s) as i64 + 1));
                    rest /= radix_s;
                    syl.push(Syllable::u((rest % radix_u) as i64 + 1));
                    rest /= radix_u;
                }
                if canonical_rotation(&syl) != syl || cyclic_period(&syl) != syl.len() {
                    return Ok(None);
                }
                let word = GroupWord::from_syllables(syl);
                let el = Element::new(params, &word);
                if el.classify() != Classification::Hyperbolic {
                    return Ok(None);
                }
                entry_for(&word, positive_representative(&el)?).map(Some)
            })
            .collect();
        entries.extend(found?.into_iter().flatten());
    }
    Ok(ClassTable {
        p: params.p(),
        q: params.q(),
        bound: EnumerationBound::MaxSyllables(max_syllables),
        entries,
    })
}

/// Exponent sequences `(a_1, ..., a_2k)` of `R^a1 L^a2 ... L^a2k` with
/// `R = (1 1; 0 1)`, `L = (1 0; 1 1)`, up to even rotation, primitive, with
/// trace at most `max_trace`.
fn rl_sequences(max_trace: i64) -> Vec<(Vec<i64>, [[i64; 2]; 2])> {
    fn mul_r(m: [[i64; 2]; 2], e: i64) -> [[i64; 2]; 2] {
        [[m[0][0], m[0][0] * e + m[0][1]], [m[1][0], m[1][0] * e + m[1][1]]]
    }
    fn mul_l(m: [[i64; 2]; 2], e: i64) -> [[i64; 2]; 2] {
        [[m[0][0] + m[0][1] * e, m[0][1]], [m[1][0] + m[1][1] * e, m[1][1]]]
    }
    fn canonical(seq: &[i64]) -> bool {
        let n = seq.len();
        (2..n).step_by(2).all(|k| {
            let rot: Vec<i64> = seq[k..].iter().chain(&seq[..k]).copied().collect();
            seq <= &rot[..]
        })
    }
    fn primitive(seq: &[i64]) -> bool {
        let n = seq.len();
        (2..n).step_by(2).filter(|d| n.is_multiple_of(*d)).all(|d| (0..n).any(|i| seq[i] != seq[(i + d) % n]))
    }
    fn walk(seq: &mut Vec<i64>, m: [[i64; 2]; 2], x: i64, out: &mut Vec<(Vec<i64>, [[i64; 2]; 2])>) {
        let trace = |m: [[i64; 2]; 2]| m[0][0] + m[1][1];
        if seq.len().is_multiple_of(2) {
            for e in 1.. {
                let next = mul_r(m, e);
                if trace(mul_l(next, 1)) > x {
                    break;
                }
                seq.push(e);
                walk(seq, next, x, out);
                seq.pop();
            }
        } else {
            for e in 1.. {
                let next = mul_l(m, e);
                if trace(next) > x {
                    break;
                }
                seq.push(e);
                if canonical(seq) && primitive(seq) {
                    out.push((seq.clone(), next));
                }
                walk(seq, next, x, out);
                seq.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::new(), [[1, 0], [0, 1]], max_trace, &mut out);
    out.sort();
    out
}

/// All primitive hyperbolic classes of SL(2, Z) up to sign with trace at
/// most `max_trace`.
///
/// Every such class has a unique cyclic `R`/`L` word, so the enumeration is
/// complete for the trace bound, unlike a syllable bound whose population is
/// dominated by long words of a few shapes.
pub fn enumerate_classes_23_by_trace(max_trace: u64) -> Result<ClassTable, AnalyticError> {
    if !(3..=1_000_000).contains(&max_trace) {
        return Err(AnalyticError::Domain(format!("max_trace must lie in 3..=1000000, got {max_trace}")));
    }
    let params = GroupParams::new(2, 3)?;
    let seqs = rl_sequences(max_trace as i64);
    let found: Result<Vec<ClassEntry>, AnalyticError> = seqs
        .into_par_iter()
        .map(|(_, m)| {
            let el = Element::from_matrix(&params, &Matrix2::from_integers(params.field(), m)?)?;
            let canonical = cyclic_reduce(&params, el.word());
            entry_for(&GroupWord::from_syllables(canonical.syllables), el)
        })
        .collect();
    let mut entries = found?;
    entries.sort_by(|x, y| x.trace_numeric.total_cmp(&y.trace_numeric).then_with(|| x.word.cmp(&y.word)));
    Ok(ClassTable {
        p: 2,
        q: 3,
        bound: EnumerationBound::MaxTrace(max_trace),
        entries,
    })
}

impl ClassTable {
    /// CSV with columns `word, trace_numeric, psi, Psi, length`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), AnalyticError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| AnalyticError::Io(e.to_string());
        w.write_record(["word", "trace_numeric", "psi", "Psi", "length"]).map_err(io)?;
        for e in &self.entries {
            w.write_record([
                e.word.clone(),
                format!("{}", e.trace_numeric),
                e.psi.to_string(),
                e.psi_upper.to_string(),
                format!("{}", e.length),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| AnalyticError::Io(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("class table serializes")
    }
}

/// `F(x) = 1/2 + arctan(2 pi x / pq) / pi`.
pub fn reference_cdf(pq: i64, x: f64) -> f64 {
    0.5 + (2.0 * PI * x / pq as f64).atan() / PI
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DistributionStats {
    pub p: u32,
    pub q: u32,
    pub a: f64,
    pub b: f64,
    pub max_length: Option<f64>,
    /// Classes with `length <= max_length`.
    pub count: usize,
    /// Fraction of them with `a <= Psi / length <= b`.
    pub fraction: f64,
    pub reference: f64,
    /// Kolmogorov distance between the empirical CDF of `Psi / length` and
    /// the arctan reference.
    pub ks_distance: f64,
}

pub fn distribution_stats(table: &ClassTable, a: f64, b: f64, max_length: Option<f64>) -> Result<DistributionStats, AnalyticError> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(AnalyticError::Domain(format!("need a <= b, got [{a}, {b}]")));
    }
    let pq = table.p as i64 * table.q as i64;
    let mut ratios: Vec<f64> = table
        .entries
        .iter()
        .filter(|e| max_length.is_none_or(|y| e.length <= y))
        .map(|e| e.psi_upper as f64 / e.length)
        .collect();
    if ratios.is_empty() {
        return Err(AnalyticError::Domain("no classes in the table below the length bound".into()));
    }
    ratios.sort_by(f64::total_cmp);
    let n = ratios.len() as f64;
    let inside = ratios.iter().filter(|&&x| a <= x && x <= b).count();
    let ks = ratios
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = reference_cdf(pq, x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max);
    Ok(DistributionStats {
        p: table.p,
        q: table.q,
        a,
        b,
        max_length,
        count: ratios.len(),
        fraction: inside as f64 / n,
        reference: reference_cdf(pq, b) - reference_cdf(pq, a),
        ks_distance: ks,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub word: String,
    pub trace_numeric: f64,
    pub psi: i64,
    pub integral: f64,
    pub integral_deviation: f64,
    pub imaginary_residual: f64,
    pub winding: i64,
    pub winding_residual: f64,
}

impl NumericCheck {
    pub fn passes(&self, tol: f64, winding_tol: f64) -> bool {
        self.integral_deviation < tol && self.winding == self.psi && self.winding_residual < winding_tol
    }
}

/// Cycle integral and winding number for every (2, 3) entry with trace
/// below `max_trace`, in table order.
pub fn numeric_checks_23(table: &ClassTable, max_trace: f64, tol: f64, samples: usize) -> Result<Vec<NumericCheck>, AnalyticError> {
    if (table.p, table.q) != (2, 3) {
        return Err(AnalyticError::Domain(format!(
            "numeric checks need (2, 3), got ({}, {})",
            table.p, table.q
        )));
    }
    table
        .entries
        .par_iter()
        .filter(|e| e.trace_numeric < max_trace)
        .map(|e| {
            let ci = cycle_integral_23(&e.element, tol)?;
            let w = winding_number_23(&e.element, samples)?;
            Ok(NumericCheck {
                word: e.word.clone(),
                trace_numeric: e.trace_numeric,
                psi: e.psi,
                integral: ci.value,
                integral_deviation: ci.deviation,
                imaginary_residual: ci.imaginary_residual,
                winding: w.index,
                winding_residual: w.residual,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_table_23() {
        let g = GroupParams::new(2, 3).unwrap();
        let t = enumerate_classes(&g, 4).unwrap();
        // S U S U^2 is the class of (2 1; 1 1)
        let e = t.entries.iter().find(|e| e.word == "S * U * S * U^2").expect("class present");
        assert_eq!(e.psi_upper, 0);
        let keys: HashSet<_> = t.entries.iter().map(|e| e.word.clone()).collect();
        assert_eq!(keys.len(), t.entries.len());
        for e in &t.entries {
            assert_eq!(symbols::ghys_coding_23(&e.element).unwrap().sum(), e.psi_upper);
            assert_eq!(e.psi, e.psi_upper);
        }
        assert!(enumerate_classes(&g, 1).is_err());
    }

    #[test]
    fn no_rotation_duplicates() {
        for (p, q) in [(2, 5), (3, 4)] {
            let g = GroupParams::new(p, q).unwrap();
            let t = enumerate_classes(&g, 6).unwrap();
            let mut seen = HashSet::new();
            for e in &t.entries {
                let key = cyclic_reduce(&g, e.element.word()).syllables;
                assert!(seen.insert(key), "duplicate class {}", e.word);
                assert!(crate::group::is_primitive(&e.element).unwrap());
            }
        }
    }

    #[test]
    fn trace_enumeration_matches_syllable_enumeration() {
        let by_trace = enumerate_classes_23_by_trace(30).unwrap();
        let g = GroupParams::new(2, 3).unwrap();
        let by_syl = enumerate_classes(&g, 24).unwrap();
        // long words can have small trace, so compare on the common range
        let a: HashSet<_> = by_trace.entries.iter().filter(|e| e.syllables <= 24).map(|e| e.word.clone()).collect();
        let b: HashSet<_> = by_syl.entries.iter().filter(|e| e.trace_numeric <= 30.5).map(|e| e.word.clone()).collect();
        assert_eq!(a, b);
        assert!(by_trace.entries.len() > a.len());
        for e in &by_trace.entries {
            assert_eq!(e.psi, e.psi_upper);
        }
    }

    #[test]
    fn rl_formula_for_psi() {
        for (seq, m) in rl_sequences(40) {
            let g = GroupParams::new(2, 3).unwrap();
            let el = Element::from_matrix(&g, &Matrix2::from_integers(g.field(), m).unwrap()).unwrap();
            let alt: i64 = seq.iter().enumerate().map(|(i, a)| if i % 2 == 0 { *a } else { -a }).sum();
            assert_eq!(symbols::rademacher_psi(&el), alt, "{seq:?}");
        }
    }

    #[test]
    fn stats_bounds() {
        let t = enumerate_classes_23_by_trace(20).unwrap();
        let all = distribution_stats(&t, f64::NEG_INFINITY, f64::INFINITY, None).unwrap();
        assert_eq!(all.fraction, 1.0);
        assert!((all.reference - 1.0).abs() < 1e-15);
        let neg = distribution_stats(&t, f64::NEG_INFINITY, 0.0, None).unwrap();
        assert!((neg.reference - 0.5).abs() < 1e-15);
        assert!(distribution_stats(&t, 0.0, 1.0, Some(0.01)).is_err());
        assert!(distribution_stats(&t, 1.0, 0.0, None).is_err());
    }

    #[test]
    fn csv_columns() {
        let t = enumerate_classes_23_by_trace(5).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("word,trace_numeric,psi,Psi,length\n"));
        assert_eq!(text.lines().count(), t.entries.len() + 1);
        let json = t.to_json();
        assert_eq!(json["entries"].as_array().unwrap().len(), t.entries.len());
    }
}
