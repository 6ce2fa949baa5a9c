//! The Rademacher symbol `psi` and its variants `Psi`, `Phi`, `Psi_h`,
//! `Psi_e`, with the classical `(2, 3)` oracles.

mod dedekind;

use std::sync::Arc;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::group::element_internals::w_from_signs;
use crate::group::{
    cyclic_reduce, lift_multiply, Classification, Element, Generator, GroupError, GroupParams, LiftedElement,
};

pub use dedekind::{dedekind_sum, dedekind_sum_fast, phi23_formula};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymbolError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn syllable_symbol(params: &GroupParams, generator: Generator, exponent: i64) -> i64 {
    match generator {
        Generator::S => -(params.q() as i64) * exponent,
        Generator::U => -(params.p() as i64) * exponent,
    }
}

/// `psi` through the character of the lifted group: the standard lifts of
/// the sign and of each syllable multiply to `(gamma, N)`, and
/// `psi = chi(gamma, N) + 2 N pq`.
pub fn psi(el: &Element) -> i64 {
    let params = el.params();
    let pq = params.pq();
    let word = el.word();
    let (mut acc, mut chi) = if word.central_sign < 0 {
        (Element::minus_identity(params).lift(), pq)
    } else {
        (Element::identity(params).lift(), 0)
    };
    for syl in &word.syllables {
        let factor = Element::new(params, &crate::group::GroupWord::from_syllables(vec![*syl])).lift();
        acc = lift_multiply(&acc, &factor).expect("same group");
        chi += syllable_symbol(params, syl.generator, syl.exponent);
    }
    chi + 2 * acc.level * pq
}

/// `psi` by folding `psi(xy) = psi(x) + psi(y) + 2pq W(x, y)` from the
/// right, seeded by the syllable values.
pub fn psi_via_cocycle(el: &Element) -> i64 {
    let params = el.params();
    let pq = params.pq();
    let word = el.word();
    let mut acc = Element::identity(params);
    let mut value = 0;
    for syl in word.syllables.iter().rev() {
        let x = Element::new(params, &crate::group::GroupWord::from_syllables(vec![*syl]));
        x.matrix();
        acc.matrix();
        let product = x.mul(&acc);
        let w = w_from_signs(x.asai_sign(), acc.asai_sign(), product.asai_sign());
        value += syllable_symbol(params, syl.generator, syl.exponent) + 2 * pq * w as i64;
        acc = product;
    }
    if word.central_sign < 0 {
        let w = w_from_signs(-1, acc.asai_sign(), -acc.asai_sign());
        value += pq + 2 * pq * w as i64;
    }
    value
}

/// Twice `Psi`, before the integrality check.
fn twice_rademacher(el: &Element, psi_value: i64) -> i64 {
    let pq = el.params().pq();
    2 * psi_value + pq * el.asai_sign() as i64 * (1 - el.trace_sign() as i64)
}

/// Rademacher's original symbol `Psi = psi + (pq/2) sgn(gamma) (1 - sgn tr)`.
pub fn rademacher_psi(el: &Element) -> i64 {
    let twice = twice_rademacher(el, psi(el));
    assert!(twice % 2 == 0, "Psi is an integer");
    twice / 2
}

/// `Phi = Psi + (pq/2) sgn(c (a + d))`.
pub fn dedekind_phi(el: &Element) -> Ratio<i64> {
    phi_from_psi(el, psi(el))
}

/// `Phi` with `psi` taken from the cocycle fold.
pub fn dedekind_phi_via_cocycle(el: &Element) -> Ratio<i64> {
    phi_from_psi(el, psi_via_cocycle(el))
}

fn phi_from_psi(el: &Element, psi_value: i64) -> Ratio<i64> {
    let m = el.matrix();
    let s = m.c().signum() * m.trace().signum();
    Ratio::new(twice_rademacher(el, psi_value), 2) + Ratio::new(el.params().pq() * s as i64, 2)
}

/// Homogenized symbol: `Psi` unless elliptic, where it vanishes.
pub fn homogeneous_psi_h(el: &Element) -> i64 {
    match el.classify() {
        Classification::Elliptic => 0,
        _ => rademacher_psi(el),
    }
}

/// `-nq` on the class of `+-S^n`, `-np` on that of `+-U^n`, else `Psi`.
pub fn modified_psi_e(el: &Element) -> i64 {
    if el.classify() == Classification::Elliptic {
        let cyc = cyclic_reduce(el.params(), el.word());
        let syl = cyc.syllables[0];
        return syllable_symbol(el.params(), syl.generator, syl.exponent);
    }
    rademacher_psi(el)
}

/// `eu = -(Psi_e(g1 g2) - Psi_e(g1) - Psi_e(g2)) / pq`.
pub fn euler_cocycle(el1: &Element, el2: &Element) -> Result<i64, SymbolError> {
    let product = el1.try_mul(el2)?;
    let delta = modified_psi_e(&product) - modified_psi_e(el1) - modified_psi_e(el2);
    let pq = el1.params().pq();
    if delta % pq != 0 {
        return Err(SymbolError::Internal(format!(
            "Psi_e coboundary {delta} is not divisible by pq = {pq}"
        )));
    }
    Ok(-delta / pq)
}

/// `gamma = U^-x S^-y` with `px + qy = 1`, `-q < x < 0 < y < p`; its
/// `psi` is 1. Returns `(gamma, x, y)`.
pub fn psi_one_element(params: &Arc<GroupParams>) -> (Element, i64, i64) {
    let (p, q) = (params.p() as i64, params.q() as i64);
    let e = p.extended_gcd(&q);
    let x = e.x.rem_euclid(q) - q;
    let y = (1 - p * x) / q;
    let gamma = Element::u_power(params, -x).mul(&Element::s_power(params, -y));
    (gamma, x, y)
}

/// Signs `epsilon_i` with `gamma ~ +-S U^{eps_1} ... S U^{eps_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonCoding {
    pub epsilons: Vec<i32>,
}

impl EpsilonCoding {
    pub fn sum(&self) -> i64 {
        self.epsilons.iter().map(|&e| e as i64).sum()
    }
}

/// Ghys's coding of a hyperbolic class of SL(2, Z): `U^2 = -U^-1`.
pub fn ghys_coding_23(el: &Element) -> Result<EpsilonCoding, SymbolError> {
    let params = el.params();
    if (params.p(), params.q()) != (2, 3) {
        return Err(SymbolError::Domain(format!(
            "epsilon coding is defined for (2, 3) only, got ({}, {})",
            params.p(),
            params.q()
        )));
    }
    if el.classify() != Classification::Hyperbolic {
        return Err(SymbolError::Domain(format!(
            "epsilon coding needs a hyperbolic element, got {}",
            el.classify()
        )));
    }
    let cyc = cyclic_reduce(params, el.word());
    let epsilons = cyc
        .syllables
        .iter()
        .filter(|s| s.generator == Generator::U)
        .map(|s| if s.exponent == 1 { 1 } else { -1 })
        .collect();
    Ok(EpsilonCoding { epsilons })
}

/// All symbol values for one element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub p: u32,
    pub q: u32,
    pub word: String,
    pub psi: i64,
    #[serde(rename = "Psi")]
    pub psi_upper: i64,
    #[serde(rename = "Phi", serialize_with = "serialize_half")]
    pub phi: Ratio<i64>,
    #[serde(rename = "Psi_h")]
    pub psi_h: i64,
    #[serde(rename = "Psi_e")]
    pub psi_e: i64,
    pub classification: Classification,
    pub asai_sign: i32,
    pub trace_sign: i32,
}

/// Half-integers as `"n/2"`.
fn serialize_half<S: Serializer>(x: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    let twice = x * 2;
    debug_assert!(twice.is_integer());
    s.serialize_str(&format!("{}/2", twice.to_integer()))
}

pub fn symbol_report(el: &Element) -> SymbolReport {
    let params = el.params();
    SymbolReport {
        p: params.p(),
        q: params.q(),
        word: el.word().to_string(),
        psi: psi(el),
        psi_upper: rademacher_psi(el),
        phi: dedekind_phi(el),
        psi_h: homogeneous_psi_h(el),
        psi_e: modified_psi_e(el),
        classification: el.classify(),
        asai_sign: el.asai_sign(),
        trace_sign: el.trace_sign(),
    }
}

/// Lifted product of the standard lifts, with the level after each factor.
pub fn lift_trace(factors: &[Element]) -> Result<Vec<LiftedElement>, SymbolError> {
    let mut out = Vec::with_capacity(factors.len());
    let mut acc: Option<LiftedElement> = None;
    for f in factors {
        let next = match &acc {
            None => f.lift(),
            Some(a) => lift_multiply(a, &f.lift())?,
        };
        out.push(next.clone());
        acc = Some(next);
    }
    Ok(out)
}
