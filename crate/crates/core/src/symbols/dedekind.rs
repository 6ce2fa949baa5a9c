//! Classical Dedekind sums and Dedekind's closed form for SL(2, Z).

use num_integer::Integer;
use num_rational::Ratio;

use super::SymbolError;

/// `s(a, c) = sum_{k=1}^{c-1} ((k/c)) ((ka/c))`, by direct summation.
pub fn dedekind_sum(a: i64, c: i64) -> Result<Ratio<i64>, SymbolError> {
    if c < 1 {
        return Err(SymbolError::Domain(format!("Dedekind sum needs c >= 1, got {c}")));
    }
    let c128 = c as i128;
    let a_mod = (a as i128).rem_euclid(c128);
    let mut acc: i128 = 0;
    for k in 1..c128 {
        let m = (k * a_mod) % c128;
        if m != 0 {
            acc += (2 * k - c128) * (2 * m - c128);
        }
    }
    ratio_from_i128(acc, 4 * c128 * c128)
}

/// Same value through the reciprocity law; `O(log c)`.
pub fn dedekind_sum_fast(a: i64, c: i64) -> Result<Ratio<i64>, SymbolError> {
    if c < 1 {
        return Err(SymbolError::Domain(format!("Dedekind sum needs c >= 1, got {c}")));
    }
    let g = a.gcd(&c);
    let (a, c) = (a / g, c / g);
    let (num, den) = reciprocity(a.rem_euclid(c) as i128, c as i128);
    ratio_from_i128(num, den)
}

/// `s(a, c)` for coprime `0 <= a < c` as an unreduced fraction.
fn reciprocity(a: i128, c: i128) -> (i128, i128) {
    if c == 1 || a == 0 {
        return (0, 1);
    }
    // s(a,c) = (a^2 + c^2 + 1)/(12ac) - 1/4 - s(c mod a, a)
    let (rn, rd) = reciprocity(c % a, a);
    let (n1, d1) = (a * a + c * c + 1 - 3 * a * c, 12 * a * c);
    let num = n1 * rd - rn * d1;
    let den = d1 * rd;
    let g = num.gcd(&den);
    (num / g, den / g)
}

fn ratio_from_i128(num: i128, den: i128) -> Result<Ratio<i64>, SymbolError> {
    let g = num.gcd(&den).max(1);
    let (n, d) = (num / g, den / g);
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Ok(Ratio::new(n, d)),
        _ => Err(SymbolError::Domain("Dedekind sum overflows 64-bit rationals".into())),
    }
}

/// Dedekind's closed form of the symbol on SL(2, Z):
/// `(a+d)/c - 12 sgn(c) s(a, |c|)` for `c != 0`, and `b/d` for `c = 0`.
pub fn phi23_formula(pq: (u32, u32), m: [[i64; 2]; 2]) -> Result<Ratio<i64>, SymbolError> {
    if pq != (2, 3) {
        return Err(SymbolError::Domain(format!(
            "Dedekind's formula applies to (2, 3) only, got ({}, {})",
            pq.0, pq.1
        )));
    }
    let [[a, b], [c, d]] = m;
    if (a as i128) * (d as i128) - (b as i128) * (c as i128) != 1 {
        return Err(SymbolError::Domain(format!("determinant of ({a} {b}; {c} {d}) is not 1")));
    }
    if c == 0 {
        return Ok(Ratio::new(b, d));
    }
    let s = dedekind_sum(a, c.abs())?;
    Ok(Ratio::new(a + d, c) - s * 12 * c.signum())
}
