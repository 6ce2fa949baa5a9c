use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::matrix::Matrix2;
use super::params::GroupParams;
use super::word::{normal_form, word_to_matrix, Generator, GroupWord, Syllable};
use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Central,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::Central => "central",
            Classification::Elliptic => "elliptic",
            Classification::Parabolic => "parabolic",
            Classification::Hyperbolic => "hyperbolic",
        };
        f.write_str(s)
    }
}

/// Group element: a normal-form word plus its matrix, computed on demand.
#[derive(Clone)]
pub struct Element {
    params: Arc<GroupParams>,
    word: GroupWord,
    matrix: OnceLock<Matrix2>,
}

impl Element {
    pub fn new(params: &Arc<GroupParams>, word: &GroupWord) -> Element {
        Element {
            params: Arc::clone(params),
            word: normal_form(params, word),
            matrix: OnceLock::new(),
        }
    }

    pub fn identity(params: &Arc<GroupParams>) -> Element {
        Element::new(params, &GroupWord::identity())
    }

    pub fn minus_identity(params: &Arc<GroupParams>) -> Element {
        Element::new(params, &GroupWord::minus_identity())
    }

    pub fn s_power(params: &Arc<GroupParams>, n: i64) -> Element {
        Element::new(params, &GroupWord::from_syllables(vec![Syllable::s(n)]))
    }

    pub fn u_power(params: &Arc<GroupParams>, n: i64) -> Element {
        Element::new(params, &GroupWord::from_syllables(vec![Syllable::u(n)]))
    }

    pub fn s(params: &Arc<GroupParams>) -> Element {
        Element::s_power(params, 1)
    }

    pub fn u(params: &Arc<GroupParams>) -> Element {
        Element::u_power(params, 1)
    }

    /// The parabolic generator `T = -U S = (1 lambda; 0 1)`.
    pub fn t(params: &Arc<GroupParams>) -> Element {
        Element::new(params, &GroupWord::new(-1, vec![Syllable::u(1), Syllable::s(1)]))
    }

    /// Element with the given matrix; fails for non-members.
    pub fn from_matrix(params: &Arc<GroupParams>, m: &Matrix2) -> Result<Element, GroupError> {
        let word = super::recognize::matrix_to_word(params, m)?;
        let el = Element::new(params, &word);
        let _ = el.matrix.set(m.clone());
        Ok(el)
    }

    pub fn params(&self) -> &Arc<GroupParams> {
        &self.params
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    pub fn matrix(&self) -> &Matrix2 {
        self.matrix.get_or_init(|| word_to_matrix(&self.params, &self.word))
    }

    pub fn is_central(&self) -> bool {
        self.word.syllables.is_empty()
    }

    fn check_same(&self, other: &Element) -> Result<(), GroupError> {
        if self.params.same_as(&other.params) {
            Ok(())
        } else {
            Err(GroupError::Domain(format!(
                "mismatched parameters ({}, {}) and ({}, {})",
                self.params.p(),
                self.params.q(),
                other.params.p(),
                other.params.q()
            )))
        }
    }

    /// Product `self * other`.
    pub fn mul(&self, other: &Element) -> Element {
        self.check_same(other).expect("product of elements of different groups");
        let el = Element::new(&self.params, &self.word.concat(&other.word));
        if let (Some(a), Some(b)) = (self.matrix.get(), other.matrix.get()) {
            let _ = el.matrix.set(a * b);
        }
        el
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element, GroupError> {
        self.check_same(other)?;
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> Element {
        let el = Element::new(&self.params, &self.word.inverse());
        if let Some(m) = self.matrix.get() {
            let _ = el.matrix.set(m.inverse());
        }
        el
    }

    /// `-self`.
    pub fn neg(&self) -> Element {
        let el = Element {
            params: Arc::clone(&self.params),
            word: self.word.negated(),
            matrix: OnceLock::new(),
        };
        if let Some(m) = self.matrix.get() {
            let _ = el.matrix.set(m.neg());
        }
        el
    }

    pub fn pow(&self, n: i64) -> Element {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut word = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            word = word.concat(&base.word);
        }
        Element::new(&self.params, &word)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Element) -> Element {
        g.inverse().mul(self).mul(g)
    }

    pub fn trace_sign(&self) -> i32 {
        self.matrix().trace().signum()
    }

    pub fn classify(&self) -> Classification {
        if self.is_central() {
            return Classification::Central;
        }
        let t = self.matrix().trace();
        let disc = &(&t * &t) - &self.params.field().from_int(4);
        match disc.signum() {
            s if s < 0 => Classification::Elliptic,
            0 => Classification::Parabolic,
            _ => Classification::Hyperbolic,
        }
    }

    pub fn asai_sign(&self) -> i32 {
        asai_sign(self.matrix())
    }

    /// Standard lift `(self, 0)`.
    pub fn lift(&self) -> LiftedElement {
        LiftedElement {
            element: self.clone(),
            level: 0,
        }
    }

    /// The generator of a single-syllable word.
    pub fn single_syllable(&self) -> Option<Syllable> {
        match self.word.syllables.as_slice() {
            [s] => Some(*s),
            _ => None,
        }
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.params.same_as(&other.params) && self.word == other.word
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.params.p().hash(state);
        self.params.q().hash(state);
        self.word.hash(state);
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[({}, {}) {}]", self.params.p(), self.params.q(), self.word)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

/// `sgn c` if `c != 0`, else `sgn a`.
pub fn asai_sign(m: &Matrix2) -> i32 {
    match m.c().signum() {
        0 => m.a().signum(),
        s => s,
    }
}

/// The {-1, 0, 1}-valued cocycle of the universal cover, read off from
/// the Asai signs of `m1`, `m2` and `m1 m2`.
pub fn cocycle_w(m1: &Matrix2, m2: &Matrix2) -> i32 {
    w_from_signs(asai_sign(m1), asai_sign(m2), asai_sign(&(m1 * m2)))
}

pub(crate) fn w_from_signs(s1: i32, s2: i32, s12: i32) -> i32 {
    match (s1, s2, s12) {
        (1, 1, -1) => 1,
        (-1, -1, 1) => -1,
        _ => 0,
    }
}

/// Point `(element, level)` of the central extension by Z.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedElement {
    pub element: Element,
    pub level: i64,
}

impl LiftedElement {
    pub fn new(element: Element, level: i64) -> LiftedElement {
        LiftedElement { element, level }
    }
}

/// `(g1, n1)(g2, n2) = (g1 g2, n1 + n2 + W(g1, g2))`.
pub fn lift_multiply(x: &LiftedElement, y: &LiftedElement) -> Result<LiftedElement, GroupError> {
    // fill both matrix caches first so the product inherits one
    x.element.matrix();
    y.element.matrix();
    let product = x.element.try_mul(&y.element)?;
    let w = w_from_signs(x.element.asai_sign(), y.element.asai_sign(), product.asai_sign());
    Ok(LiftedElement {
        element: product,
        level: x.level + y.level + w as i64,
    })
}

/// `(g, n)^-1 = (g^-1, -n - W(g, g^-1))`.
pub fn lift_inverse(x: &LiftedElement) -> LiftedElement {
    let inv = x.element.inverse();
    let w = w_from_signs(x.element.asai_sign(), inv.asai_sign(), 1);
    LiftedElement {
        element: inv,
        level: -x.level - w as i64,
    }
}

impl Generator {
    /// Standard generator element.
    pub fn element(self, params: &Arc<GroupParams>) -> Element {
        match self {
            Generator::S => Element::s(params),
            Generator::U => Element::u(params),
        }
    }
}
