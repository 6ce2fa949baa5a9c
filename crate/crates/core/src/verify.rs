//! Seeded invariant suites over the exact layer. Each suite reports how
//! many cases it checked and the first failure it saw.

use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::enumerate_classes;
use crate::group::{
    cocycle_w, matrix_to_word, normal_form, primitive_root, random_word, Classification, Element, Generator,
    GroupParams, GroupWord, LiftedElement, Syllable,
};
use crate::linking::{self, SymbolVariant};
use crate::symbols;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    pub millis: u128,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub q: u32,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

/// Runs `check` over `cases` in parallel; `check` returns an error message
/// for a failing case.
fn run_suite<T: Sync, F>(name: &str, cases: &[T], check: F) -> SuiteOutcome
where
    F: Fn(&T) -> Result<(), String> + Sync,
{
    let start = Instant::now();
    let failures: Vec<String> = cases.par_iter().filter_map(|c| check(c).err()).collect();
    SuiteOutcome {
        name: name.to_string(),
        checked: cases.len() as u64,
        failures: failures.len() as u64,
        first_failure: failures.into_iter().next(),
        millis: start.elapsed().as_millis(),
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// Independent rng per suite so that suites can be run in any order.
fn suite_rng(seed: u64, suite: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite);
    rng
}

fn random_elements(params: &Arc<GroupParams>, rng: &mut ChaCha8Rng, n: usize, max_syllables: usize) -> Vec<Element> {
    (0..n)
        .map(|_| Element::new(params, &random_word(params, rng, max_syllables)))
        .collect()
}

/// Every normal-form word with at most `max_syllables` syllables, both signs.
pub fn all_normal_words(params: &GroupParams, max_syllables: usize) -> Vec<GroupWord> {
    let mut layer: Vec<Vec<Syllable>> = vec![Vec::new()];
    let mut all = layer.clone();
    for _ in 0..max_syllables {
        let mut next = Vec::new();
        for w in &layer {
            let gens = match w.last() {
                Some(s) => vec![s.generator.other()],
                None => vec![Generator::S, Generator::U],
            };
            for g in gens {
                for e in 1..g.half_order(params) {
                    let mut v = w.clone();
                    v.push(Syllable::new(g, e));
                    next.push(v);
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.into_iter()
        .flat_map(|s| [GroupWord::new(1, s.clone()), GroupWord::new(-1, s)])
        .collect()
}

/// Values of `psi` and `Phi` on the generators.
pub fn generator_values(params: &Arc<GroupParams>) -> SuiteOutcome {
    let (p, q, r) = (params.p() as i64, params.q() as i64, params.r());
    let cases = [
        ("T", Element::t(params), r, Ratio::from_integer(r)),
        ("S", Element::s(params), -q, Ratio::new(q * (p - 2), 2)),
        ("U", Element::u(params), -p, Ratio::new(p * (q - 2), 2)),
    ];
    let mut all: Vec<Result<(), String>> = Vec::new();
    for (name, el, psi, phi) in &cases {
        all.push(expect(&format!("psi({name})"), symbols::psi(el), *psi));
        all.push(expect(&format!("psi_cocycle({name})"), symbols::psi_via_cocycle(el), *psi));
        all.push(expect(&format!("Phi({name})"), symbols::dedekind_phi(el), *phi));
    }
    let minus = Element::minus_identity(params);
    all.push(expect("psi(-I)", symbols::psi(&minus), p * q));
    all.push(expect("psi(I)", symbols::psi(&Element::identity(params)), 0));
    run_suite("generator values", &all, |r| r.clone())
}

fn random_pairs(params: &Arc<GroupParams>, samples: usize, seed: u64, stream: u64) -> Vec<(Element, Element)> {
    let mut rng = suite_rng(seed, stream);
    let xs = random_elements(params, &mut rng, samples, 8);
    let ys = random_elements(params, &mut rng, samples, 8);
    xs.into_iter().zip(ys).collect()
}

/// `2pq W(g1, g2) = psi(g1 g2) - psi(g1) - psi(g2)`.
pub fn cocycle_identity(params: &Arc<GroupParams>, samples: usize, seed: u64) -> SuiteOutcome {
    let pairs = random_pairs(params, samples, seed, 1);
    let pq = params.pq();
    run_suite("cocycle identity", &pairs, |(a, b)| {
        let w = cocycle_w(a.matrix(), b.matrix()) as i64;
        let ab = a.mul(b);
        expect(
            &format!("2pq W for ({}, {})", a.word(), b.word()),
            2 * pq * w,
            symbols::psi(&ab) - symbols::psi(a) - symbols::psi(b),
        )
    })
}

/// Character-based and cocycle-fold `psi` agree on the factors and
/// products of the pairs used by `cocycle_identity`.
pub fn dual_pipeline(params: &Arc<GroupParams>, samples: usize, seed: u64) -> SuiteOutcome {
    let pairs = random_pairs(params, samples, seed, 1);
    run_suite("dual pipeline", &pairs, |(a, b)| {
        for el in [a.clone(), b.clone(), a.mul(b)] {
            expect(&format!("psi of {}", el.word()), symbols::psi_via_cocycle(&el), symbols::psi(&el))?;
        }
        Ok(())
    })
}

/// Conjugation, sign and inversion behaviour of `Psi`, and the power rule
/// for `|tr| >= 2`.
pub fn class_invariance(params: &Arc<GroupParams>, samples: usize, seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 4);
    let xs = random_elements(params, &mut rng, samples, 8);
    let gs = random_elements(params, &mut rng, samples, 6);
    let pairs: Vec<(Element, Element)> = xs.into_iter().zip(gs).collect();
    run_suite("class invariance", &pairs, |(gamma, g)| {
        let big = symbols::rademacher_psi(gamma);
        let w = gamma.word();
        expect(&format!("Psi(g^-1 x g), x = {w}"), symbols::rademacher_psi(&gamma.conjugate_by(g)), big)?;
        expect(&format!("Psi(-x), x = {w}"), symbols::rademacher_psi(&gamma.neg()), big)?;
        expect(&format!("Psi(x^-1), x = {w}"), symbols::rademacher_psi(&gamma.inverse()), -big)?;
        if matches!(gamma.classify(), Classification::Hyperbolic | Classification::Parabolic) {
            for n in -5..=5 {
                expect(&format!("Psi(x^{n}), x = {w}"), symbols::rademacher_psi(&gamma.pow(n)), n * big)?;
            }
        }
        Ok(())
    })
}

/// The element `U^-x S^-y` has `psi = 1`, and is hyperbolic with `c > 0`
/// away from (2, 3).
pub fn psi_one_lemma(params: &Arc<GroupParams>) -> SuiteOutcome {
    let (gamma, x, y) = symbols::psi_one_element(params);
    let (p, q) = (params.p() as i64, params.q() as i64);
    let check = || -> Result<(), String> {
        expect("px + qy", p * x + q * y, 1)?;
        if !(x.abs() < q && y.abs() < p && x * y < 0) {
            return Err(format!("x = {x}, y = {y} out of range"));
        }
        expect("psi", symbols::psi(&gamma), 1)?;
        expect("psi via cocycle", symbols::psi_via_cocycle(&gamma), 1)?;
        if (params.p(), params.q()) != (2, 3) {
            expect("classification", gamma.classify(), Classification::Hyperbolic)?;
            expect("sign of c", gamma.matrix().c().signum(), 1)?;
        }
        Ok(())
    };
    run_suite("psi = 1 lemma", &[()], |_| check())
}

/// Cocycle-derived `Phi` against Dedekind's closed form on every element of
/// SL(2, Z) with at most `max_syllables` syllables.
pub fn dedekind_oracle(max_syllables: usize) -> SuiteOutcome {
    let params = GroupParams::new(2, 3).expect("(2, 3)");
    let words = all_normal_words(&params, max_syllables);
    run_suite("Dedekind oracle", &words, |w| {
        let el = Element::new(&params, w);
        let m = el.matrix().to_integers().ok_or_else(|| format!("{w} has non-integer entries"))?;
        let oracle = symbols::phi23_formula((2, 3), m).map_err(|e| e.to_string())?;
        expect(&format!("Phi of {m:?}"), symbols::dedekind_phi_via_cocycle(&el), oracle)
    })
}

/// Ghys's coding: `sum eps_i = Psi` on every primitive hyperbolic class of
/// SL(2, Z) with at most `max_syllables` syllables.
pub fn epsilon_coding(max_syllables: usize) -> SuiteOutcome {
    let params = GroupParams::new(2, 3).expect("(2, 3)");
    let table = match enumerate_classes(&params, max_syllables) {
        Ok(t) => t,
        Err(e) => return failed_setup("epsilon coding", e.to_string()),
    };
    run_suite("epsilon coding", &table.entries, |e| {
        let coding = symbols::ghys_coding_23(&e.element).map_err(|err| err.to_string())?;
        expect(&format!("sum eps for {}", e.word), coding.sum(), e.psi_upper)
    })
}

fn failed_setup(name: &str, message: String) -> SuiteOutcome {
    SuiteOutcome {
        name: name.to_string(),
        checked: 0,
        failures: 1,
        first_failure: Some(message),
        millis: 0,
    }
}

/// Linking arithmetic on every primitive hyperbolic class with at most
/// `max_syllables` syllables, and on the squares of those classes.
pub fn linking_arithmetic(params: &Arc<GroupParams>, max_syllables: usize) -> SuiteOutcome {
    let table = match enumerate_classes(params, max_syllables) {
        Ok(t) => t,
        Err(e) => return failed_setup("linking arithmetic", e.to_string()),
    };
    let r = params.r();
    run_suite("linking arithmetic", &table.entries, |entry| {
        let el = &entry.element;
        let err = |e: linking::LinkingError| e.to_string();
        let psi = symbols::psi(el);
        let lens = linking::lk_lens(el, SymbolVariant::LowerPsi).map_err(err)?;
        expect("r lk_lens", lens * r, Ratio::from_integer(psi))?;
        let (lk, comps) = linking::lk_s3(el, SymbolVariant::LowerPsi).map_err(err)?;
        let (root, nu) = primitive_root(el).map_err(|e| e.to_string())?;
        expect("multiplicity of a primitive class", nu, 1)?;
        let g = r.gcd(&symbols::rademacher_psi(&root));
        expect("lk_s3 gcd(r, root symbol)", lk * g, psi)?;
        let m = linking::m_gamma(el);
        expect("lk_s3 = m lk_lens", Ratio::from_integer(lk), lens * m)?;
        expect("components", comps, r.gcd(&psi))?;
        let n = linking::n_gamma(el);
        if !linking::in_g_r(&LiftedElement::new(el.clone(), n)) {
            return Err(format!("({}, {n}) not in G_r", entry.word));
        }
        // non-primitive: gamma^2 with Psi
        let sq = el.pow(2);
        let report = linking::linking_report(&sq, SymbolVariant::Psi, linking::Space::S3).map_err(err)?;
        let big = symbols::rademacher_psi(&sq);
        expect("Psi(gamma^2)", big, 2 * entry.psi_upper)?;
        let lk2 = report.lk_s3.ok_or("lk_s3 missing for gamma^2")?;
        expect("lk_s3(gamma^2) gcd", lk2 * r.gcd(&entry.psi_upper), big)?;
        expect(
            "lk_s3(gamma^2) = m lk_lens",
            Ratio::from_integer(lk2),
            Ratio::new(big, r) * report.m_gamma,
        )?;
        Ok(())
    })
}

/// `-(Psi_e(g1 g2) - Psi_e(g1) - Psi_e(g2)) / pq` is an integer.
pub fn euler_integrality(params: &Arc<GroupParams>, samples: usize, seed: u64) -> SuiteOutcome {
    let pairs = random_pairs(params, samples, seed, 12);
    run_suite("Euler cocycle integrality", &pairs, |(a, b)| {
        symbols::euler_cocycle(a, b).map(|_| ()).map_err(|e| e.to_string())
    })
}

/// `matrix_to_word` inverts `word_to_matrix` on random normal forms.
pub fn word_round_trip(params: &Arc<GroupParams>, samples: usize, seed: u64) -> SuiteOutcome {
    let mut rng = suite_rng(seed, 20);
    let words: Vec<GroupWord> = (0..samples)
        .map(|_| normal_form(params, &random_word(params, &mut rng, 10)))
        .collect();
    run_suite("word round trip", &words, |w| {
        let el = Element::new(params, w);
        let back = matrix_to_word(params, el.matrix()).map_err(|e| e.to_string())?;
        expect(&format!("word of {w}"), &back, w)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random samples per randomized suite.
    pub samples: usize,
    /// Syllable bound for the class-based suites.
    pub max_syllables: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            samples: 1000,
            max_syllables: 6,
        }
    }
}

/// All suites that apply to `params`.
pub fn run_all(params: &Arc<GroupParams>, config: &VerifyConfig) -> VerifyReport {
    let VerifyConfig {
        seed,
        samples,
        max_syllables,
    } = *config;
    let mut suites = vec![
        generator_values(params),
        cocycle_identity(params, samples, seed),
        dual_pipeline(params, samples, seed),
        class_invariance(params, samples, seed),
        psi_one_lemma(params),
        linking_arithmetic(params, max_syllables),
        euler_integrality(params, samples, seed),
        word_round_trip(params, samples, seed),
    ];
    if (params.p(), params.q()) == (2, 3) {
        suites.push(dedekind_oracle(max_syllables.max(2)));
        suites.push(epsilon_coding(max_syllables.max(2)));
    }
    VerifyReport {
        p: params.p(),
        q: params.q(),
        seed,
        samples,
        passed: suites.iter().all(SuiteOutcome::passed),
        suites,
    }
}
