//! Word recovery from an exact matrix by reducing the orbit point of `2i`
//! into the Ford domain
//! `{ -alpha - beta/2 <= Re z < beta/2, |z| >= 1, |z + alpha| >= 1 }`.

use super::matrix::Matrix2;
use super::params::GroupParams;
use super::word::{normal_form, GroupWord, Syllable};
use super::GroupError;
use crate::exactnum::AlgebraicNumber;

/// Running product `M = g m` and the word of `g^-1`.
struct Reduction<'a> {
    params: &'a GroupParams,
    a: AlgebraicNumber,
    b: AlgebraicNumber,
    c: AlgebraicNumber,
    d: AlgebraicNumber,
    inverse_word: GroupWord,
}

impl Reduction<'_> {
    /// `|M(2i)|^2 - 1`, times the positive denominator `d^2 + 4c^2`.
    fn modulus_excess(&self, a: &AlgebraicNumber, b: &AlgebraicNumber) -> AlgebraicNumber {
        let four = self.params.field().from_int(4);
        let top = &(b * b) + &(&four * &(a * a));
        let bottom = &(&self.d * &self.d) + &(&four * &(&self.c * &self.c));
        &top - &bottom
    }

    fn inside_unit_circle(&self) -> bool {
        self.modulus_excess(&self.a, &self.b).signum() < 0
    }

    fn inside_shifted_circle(&self) -> bool {
        let alpha = self.params.alpha();
        let a = &self.a + &(&alpha * &self.c);
        let b = &self.b + &(&alpha * &self.d);
        self.modulus_excess(&a, &b).signum() < 0
    }

    /// `2 Re M(2i)` and the positive denominator it is measured against.
    fn real_part_parts(&self) -> (AlgebraicNumber, AlgebraicNumber) {
        let four = self.params.field().from_int(4);
        let two = self.params.field().from_int(2);
        let re = &two * &(&(&self.b * &self.d) + &(&four * &(&self.a * &self.c)));
        let den = &(&self.d * &self.d) + &(&four * &(&self.c * &self.c));
        (re, den)
    }

    fn left_of_strip(&self) -> bool {
        // 2 Re z < -(2 alpha + beta)
        let (re, den) = self.real_part_parts();
        let width = &self.params.alpha().scale(&2.into()) + &self.params.beta();
        (&re + &(&width * &den)).signum() < 0
    }

    fn right_of_strip(&self) -> bool {
        // 2 Re z >= beta
        let (re, den) = self.real_part_parts();
        (&re - &(&self.params.beta() * &den)).signum() >= 0
    }

    /// `M <- T^k M`; records `T^-k` in the inverse word.
    fn translate(&mut self, k: i64) {
        if k == 0 {
            return;
        }
        let shift = self.params.lambda().scale(&k.into());
        self.a = &self.a + &(&shift * &self.c);
        self.b = &self.b + &(&shift * &self.d);
        // T^-k = (-1)^k (S^-1 U^-1)^k for k > 0 and (-1)^k (U S)^|k| otherwise
        let n = k.unsigned_abs();
        let sign = if n % 2 == 1 { -1 } else { 1 };
        let pair = if k > 0 {
            [Syllable::s(-1), Syllable::u(-1)]
        } else {
            [Syllable::u(1), Syllable::s(1)]
        };
        let mut syl = Vec::with_capacity(2 * n as usize);
        for _ in 0..n {
            syl.extend_from_slice(&pair);
        }
        self.inverse_word = normal_form(self.params, &self.inverse_word.concat(&GroupWord::new(sign, syl)));
    }

    /// `M <- S M` (`z -> -1/(z + alpha)`); records `S^-1`.
    fn apply_s(&mut self) {
        let alpha = self.params.alpha();
        let c = &self.a + &(&alpha * &self.c);
        let d = &self.b + &(&alpha * &self.d);
        self.a = -&self.c;
        self.b = -&self.d;
        self.c = c;
        self.d = d;
        self.push_inverse(Syllable::s(-1));
    }

    /// `M <- S^-1 M` (`z -> -alpha - 1/z`); records `S`.
    fn apply_s_inverse(&mut self) {
        let alpha = self.params.alpha();
        let a = &(&alpha * &self.a) + &self.c;
        let b = &(&alpha * &self.b) + &self.d;
        self.c = -&self.a;
        self.d = -&self.b;
        self.a = a;
        self.b = b;
        self.push_inverse(Syllable::s(1));
    }

    fn push_inverse(&mut self, syl: Syllable) {
        self.inverse_word.syllables.push(syl);
        self.inverse_word = normal_form(self.params, &self.inverse_word);
    }

    /// Bring `Re M(2i)` into the strip using a floating estimate and exact
    /// corrections.
    fn center(&mut self) {
        let (re, den) = self.real_part_parts();
        let x = 0.5 * re.to_f64() / den.to_f64();
        let alpha = self.params.alpha().to_f64();
        let beta = self.params.beta().to_f64();
        let left = -alpha - beta / 2.0;
        let estimate = ((x - left) / (alpha + beta)).floor();
        if estimate.is_finite() && estimate.abs() < 1e15 {
            self.translate(-(estimate as i64));
        }
        while self.left_of_strip() {
            self.translate(1);
        }
        while self.right_of_strip() {
            self.translate(-1);
        }
    }
}

/// Word of an exact matrix of the group. Non-members are reported as
/// errors once the reduction ends off the identity or exceeds its
/// iteration budget of ten steps per bit of the entries.
pub fn matrix_to_word(params: &GroupParams, m: &Matrix2) -> Result<GroupWord, GroupError> {
    let budget = 10 * m.bit_size().max(64);
    let mut red = Reduction {
        params,
        a: m.a().clone(),
        b: m.b().clone(),
        c: m.c().clone(),
        d: m.d().clone(),
        inverse_word: GroupWord::identity(),
    };
    let mut steps = 0u64;
    loop {
        red.center();
        if red.inside_unit_circle() {
            red.apply_s_inverse();
        } else if red.inside_shifted_circle() {
            red.apply_s();
        } else {
            break;
        }
        steps += 1;
        if steps > budget {
            return Err(GroupError::NotAGroupElement(format!(
                "reduction did not terminate within {budget} steps"
            )));
        }
    }
    let reduced = Matrix2::from_entries_unchecked(red.a, red.b, red.c, red.d);
    let sign = reduced.central_sign();
    if sign == 0 {
        return Err(GroupError::NotAGroupElement(format!(
            "reduction ended at {reduced}, which is not +-I"
        )));
    }
    // g m = sign I, so m = sign g^-1
    let word = red.inverse_word;
    Ok(GroupWord::new(word.central_sign * sign, word.syllables))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{random_word, word_to_matrix, Element};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_round_trip() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let (s, u, t) = g.generators();
            assert_eq!(matrix_to_word(&g, &s).unwrap(), Element::s(&g).word().clone());
            assert_eq!(matrix_to_word(&g, &u).unwrap(), Element::u(&g).word().clone());
            assert_eq!(matrix_to_word(&g, &t).unwrap(), Element::t(&g).word().clone());
            let id = Matrix2::identity(g.field());
            assert_eq!(matrix_to_word(&g, &id).unwrap(), GroupWord::identity());
            assert_eq!(matrix_to_word(&g, &id.neg()).unwrap(), GroupWord::minus_identity());
        }
    }

    #[test]
    fn random_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for (p, q) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            for _ in 0..40 {
                let w = normal_form(&g, &random_word(&g, &mut rng, 10));
                let m = word_to_matrix(&g, &w);
                assert_eq!(matrix_to_word(&g, &m).unwrap(), w, "({p}, {q}) {w}");
            }
        }
    }

    #[test]
    fn large_translation() {
        let g = GroupParams::new(3, 4).unwrap();
        let t = Element::t(&g);
        let w = t.pow(1000).mul(&Element::s(&g)).mul(&t.pow(-777));
        assert_eq!(matrix_to_word(&g, w.matrix()).unwrap(), w.word().clone());
    }

    #[test]
    fn rejects_non_members() {
        let g = GroupParams::new(2, 3).unwrap();
        let f = g.field();
        let half = f.from_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        let m = Matrix2::from_entries(f.one(), half, f.zero(), f.one()).unwrap();
        assert!(matches!(matrix_to_word(&g, &m), Err(GroupError::NotAGroupElement(_))));
        // sqrt(2)-translations are not in the (3,4) group
        let g = GroupParams::new(3, 4).unwrap();
        let f = g.field();
        let m = Matrix2::from_entries(f.one(), f.beta(), f.zero(), f.one()).unwrap();
        assert!(matches!(matrix_to_word(&g, &m), Err(GroupError::NotAGroupElement(_))));
    }
}
