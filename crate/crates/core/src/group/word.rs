use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::matrix::Matrix2;
use super::params::GroupParams;
use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Generator {
    S,
    U,
}

impl Generator {
    /// Order of the generator modulo the center.
    pub fn half_order(self, params: &GroupParams) -> i64 {
        match self {
            Generator::S => params.p() as i64,
            Generator::U => params.q() as i64,
        }
    }

    pub fn other(self) -> Generator {
        match self {
            Generator::S => Generator::U,
            Generator::U => Generator::S,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: Generator, exponent: i64) -> Syllable {
        Syllable { generator, exponent }
    }

    pub fn s(exponent: i64) -> Syllable {
        Syllable::new(Generator::S, exponent)
    }

    pub fn u(exponent: i64) -> Syllable {
        Syllable::new(Generator::U, exponent)
    }

    pub fn matrix<'a>(&self, params: &'a GroupParams) -> &'a Matrix2 {
        match self.generator {
            Generator::S => params.s_power(self.exponent),
            Generator::U => params.u_power(self.exponent),
        }
    }
}

/// A sign (power of `-I`) and a list of syllables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupWord {
    pub central_sign: i32,
    pub syllables: Vec<Syllable>,
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord {
            central_sign: 1,
            syllables: Vec::new(),
        }
    }

    pub fn minus_identity() -> GroupWord {
        GroupWord {
            central_sign: -1,
            syllables: Vec::new(),
        }
    }

    pub fn new(central_sign: i32, syllables: Vec<Syllable>) -> GroupWord {
        assert!(central_sign == 1 || central_sign == -1, "central sign must be +1 or -1");
        GroupWord {
            central_sign,
            syllables,
        }
    }

    pub fn from_syllables(syllables: Vec<Syllable>) -> GroupWord {
        GroupWord::new(1, syllables)
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Concatenation; not normalized.
    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        GroupWord::new(self.central_sign * other.central_sign, syllables)
    }

    /// Formal inverse; not normalized.
    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(
            self.central_sign,
            self.syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        )
    }

    pub fn negated(&self) -> GroupWord {
        GroupWord::new(-self.central_sign, self.syllables.clone())
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.central_sign < 0 { "-" } else { "" };
        if self.syllables.is_empty() {
            return write!(f, "{sign}I");
        }
        let body: Vec<String> = self
            .syllables
            .iter()
            .map(|s| {
                let g = match s.generator {
                    Generator::S => "S",
                    Generator::U => "U",
                };
                if s.exponent == 1 {
                    g.to_string()
                } else {
                    format!("{g}^{}", s.exponent)
                }
            })
            .collect();
        write!(f, "{sign}{}", body.join(" * "))
    }
}

/// Append a syllable to a normal-form stack, merging with the top and
/// pulling `-I` out into `sign`.
pub(crate) fn push_syllable(params: &GroupParams, stack: &mut Vec<Syllable>, sign: &mut i32, syl: Syllable) {
    let ord = syl.generator.half_order(params);
    let mut e = syl.exponent;
    if let Some(top) = stack.last() {
        if top.generator == syl.generator {
            e += top.exponent;
            stack.pop();
        }
    }
    e = e.rem_euclid(2 * ord);
    if e >= ord {
        e -= ord;
        *sign = -*sign;
    }
    if e != 0 {
        stack.push(Syllable::new(syl.generator, e));
    }
}

/// Canonical amalgam normal form.
pub fn normal_form(params: &GroupParams, word: &GroupWord) -> GroupWord {
    let mut sign = word.central_sign;
    let mut stack = Vec::with_capacity(word.syllables.len());
    for syl in &word.syllables {
        push_syllable(params, &mut stack, &mut sign, *syl);
    }
    GroupWord::new(sign, stack)
}

/// Exact product matrix of a word.
pub fn word_to_matrix(params: &GroupParams, word: &GroupWord) -> Matrix2 {
    let field = params.field();
    let mut acc = match word.syllables.first() {
        Some(s) => s.matrix(params).clone(),
        None => Matrix2::identity(field),
    };
    for syl in word.syllables.iter().skip(1) {
        acc = &acc * syl.matrix(params);
    }
    if word.central_sign < 0 {
        acc.neg()
    } else {
        acc
    }
}

/// Random word with up to `max_syllables` syllables and exponents anywhere
/// in `(-2 ord, 2 ord)`; not normalized.
pub fn random_word<R: Rng + ?Sized>(params: &GroupParams, rng: &mut R, max_syllables: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_syllables);
    let mut gen = if rng.gen_bool(0.5) { Generator::S } else { Generator::U };
    let mut syllables = Vec::with_capacity(len);
    for _ in 0..len {
        let bound = 2 * gen.half_order(params);
        let mut e = rng.gen_range(1..bound);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        syllables.push(Syllable::new(gen, e));
        gen = gen.other();
    }
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    GroupWord::new(sign, syllables)
}

/// Parse `[-] (S|U)[^int] (* (S|U)[^int])*` (whitespace-insensitive) and
/// return its normal form. A lone `I` or `-I` is also accepted.
pub fn parse_word(params: &GroupParams, text: &str) -> Result<GroupWord, GroupError> {
    Parser::new(text).word().map(|w| normal_form(params, &w))
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<GroupWord, GroupError> {
        let sign = if self.eat('-') { -1 } else { 1 };
        if self.eat('I') {
            self.skip_ws();
            if self.pos != self.text.len() {
                return self.err("unexpected input after I");
            }
            return Ok(GroupWord::new(sign, Vec::new()));
        }
        let mut syllables = vec![self.syllable()?];
        loop {
            self.skip_ws();
            if self.pos == self.text.len() {
                break;
            }
            if !self.eat('*') {
                return self.err("expected '*' or end of input");
            }
            syllables.push(self.syllable()?);
        }
        Ok(GroupWord::new(sign, syllables))
    }

    fn syllable(&mut self) -> Result<Syllable, GroupError> {
        self.skip_ws();
        let generator = match self.peek() {
            Some('S') => Generator::S,
            Some('U') => Generator::U,
            Some(c) => return self.err(format!("expected generator S or U, found '{c}'")),
            None => return self.err("expected generator S or U, found end of input"),
        };
        self.pos += 1;
        if !self.eat('^') {
            return Ok(Syllable::new(generator, 1));
        }
        self.skip_ws();
        let start = self.pos;
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.err("expected an integer exponent");
        }
        let magnitude: i64 = match self.text[digits_start..self.pos].parse() {
            Ok(v) => v,
            Err(_) => {
                self.pos = start;
                return self.err("exponent out of range");
            }
        };
        if magnitude == 0 {
            self.pos = start;
            return self.err("exponent 0 is not allowed");
        }
        Ok(Syllable::new(generator, if negative { -magnitude } else { magnitude }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(sign: i32, syl: &[(char, i64)]) -> GroupWord {
        GroupWord::new(
            sign,
            syl.iter()
                .map(|&(g, e)| Syllable::new(if g == 'S' { Generator::S } else { Generator::U }, e))
                .collect(),
        )
    }

    #[test]
    fn normal_form_examples() {
        for (p, q) in [(2, 3), (3, 4), (4, 5)] {
            let g = GroupParams::new(p, q).unwrap();
            let sp1 = normal_form(&g, &w(1, &[('S', p as i64 + 1)]));
            assert_eq!(sp1, w(-1, &[('S', 1)]));
            assert_eq!(normal_form(&g, &w(1, &[('U', 2 * q as i64)])), GroupWord::identity());
        }
        let g3 = GroupParams::new(3, 4).unwrap();
        let x = w(1, &[('S', 1), ('U', 1), ('U', -1), ('S', 1)]);
        assert_eq!(normal_form(&g3, &x), w(1, &[('S', 2)]));
        let g2 = GroupParams::new(2, 3).unwrap();
        assert_eq!(normal_form(&g2, &x), GroupWord::minus_identity());
    }

    #[test]
    fn matrix_examples() {
        for (p, q) in [(2, 3), (3, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let id = Matrix2::identity(g.field());
            assert_eq!(word_to_matrix(&g, &w(1, &[('S', p as i64)])), id.neg());
            assert_eq!(word_to_matrix(&g, &GroupWord::identity()), id);
            let (_, _, t) = g.generators();
            assert_eq!(word_to_matrix(&g, &w(1, &[('U', 1), ('S', 1)])), t.neg());
        }
    }

    #[test]
    fn normal_form_preserves_matrix_and_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, q) in [(2, 3), (3, 4), (4, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            for _ in 0..100 {
                let raw = random_word(&g, &mut rng, 8);
                let nf = normal_form(&g, &raw);
                assert_eq!(normal_form(&g, &nf), nf);
                assert_eq!(word_to_matrix(&g, &raw), word_to_matrix(&g, &nf));
                for pair in nf.syllables.windows(2) {
                    assert_ne!(pair[0].generator, pair[1].generator);
                }
                for s in &nf.syllables {
                    assert!(s.exponent >= 1 && s.exponent < s.generator.half_order(&g));
                }
            }
        }
    }

    #[test]
    fn product_of_normal_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = GroupParams::new(3, 5).unwrap();
        for _ in 0..50 {
            let a = random_word(&g, &mut rng, 6);
            let b = random_word(&g, &mut rng, 6);
            let lhs = &word_to_matrix(&g, &normal_form(&g, &a)) * &word_to_matrix(&g, &normal_form(&g, &b));
            let rhs = word_to_matrix(&g, &normal_form(&g, &a.concat(&b)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn chebyshev_matrix_law() {
        use crate::exactnum::chebyshev_c;
        for (p, q) in [(2, 3), (3, 4), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let f = g.field();
            let half = num_rational::BigRational::new(1.into(), 2.into());
            let x = g.alpha().scale_rational(&half);
            let (s, _, _) = g.generators();
            for n in 0..=(2 * p as i64) {
                let expected = Matrix2::from_entries(
                    -chebyshev_c(n - 1, &x),
                    -chebyshev_c(n, &x),
                    chebyshev_c(n, &x),
                    chebyshev_c(n + 1, &x),
                )
                .unwrap();
                assert_eq!(s.pow(n as u32), expected);
                assert_eq!(word_to_matrix(&g, &w(1, &[('S', n.max(1))])), s.pow(n.max(1) as u32));
            }
            let _ = f;
        }
    }

    #[test]
    fn parse_examples() {
        let g = GroupParams::new(3, 4).unwrap();
        assert_eq!(parse_word(&g, "S").unwrap(), w(1, &[('S', 1)]));
        let parsed = parse_word(&g, "- U^-2 * S").unwrap();
        let literal = normal_form(&g, &w(-1, &[('U', -2), ('S', 1)]));
        assert_eq!(parsed, literal);
        assert_eq!(parsed, w(1, &[('U', 2), ('S', 1)]));
        assert_eq!(parse_word(&g, "-S^3*U^-2*S").unwrap(), parse_word(&g, " - S ^ 3 * U ^ - 2 * S ").unwrap());
        assert_eq!(parse_word(&g, "I").unwrap(), GroupWord::identity());
        assert_eq!(parse_word(&g, "-I").unwrap(), GroupWord::minus_identity());
        assert_eq!(parse_word(&g, "S^+2").unwrap(), w(1, &[('S', 2)]));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let g = GroupParams::new(3, 4).unwrap();
        match parse_word(&g, "S^0") {
            Err(GroupError::Parse { offset, message }) => {
                assert_eq!(offset, 2);
                assert!(message.contains('0'));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_word(&g, "S * X"), Err(GroupError::Parse { offset: 4, .. })));
        assert!(matches!(parse_word(&g, "S U"), Err(GroupError::Parse { offset: 2, .. })));
        assert!(matches!(parse_word(&g, ""), Err(GroupError::Parse { offset: 0, .. })));
        assert!(matches!(parse_word(&g, "S^"), Err(GroupError::Parse { offset: 2, .. })));
        assert!(matches!(parse_word(&g, "S *"), Err(GroupError::Parse { offset: 3, .. })));
    }

    #[test]
    fn display_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = GroupParams::new(4, 5).unwrap();
        for _ in 0..100 {
            let nf = normal_form(&g, &random_word(&g, &mut rng, 7));
            assert_eq!(parse_word(&g, &nf.to_string()).unwrap(), nf);
        }
    }
}
