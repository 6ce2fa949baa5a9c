//! Minimal polynomials of `2cos(pi/n)` and dyadic enclosures of their
//! largest real root.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// Monic minimal polynomial of `2cos(pi/n)` over the rationals.
#[derive(Debug)]
pub struct MinPoly {
    n: u32,
    /// Ascending coefficients; the last one is 1.
    coeffs: Vec<BigInt>,
    /// Root brackets `[lo, hi] / 2^prec` keyed by `prec`.
    roots: Mutex<HashMap<u32, (BigInt, BigInt)>>,
}

impl PartialEq for MinPoly {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.coeffs == other.coeffs
    }
}

impl Eq for MinPoly {}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<MinPoly>>>> = OnceLock::new();

/// Monic minimal polynomial of `2cos(pi/n)`, computed once per `n`.
pub fn minpoly_2cos_pi_over(n: u32) -> Result<Arc<MinPoly>, ExactError> {
    if n < 2 {
        return Err(ExactError::Domain(format!(
            "minimal polynomial of 2cos(pi/n) needs n >= 2, got {n}"
        )));
    }
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(mp) = cache.read().expect("minpoly cache poisoned").get(&n) {
        return Ok(Arc::clone(mp));
    }
    let computed = Arc::new(MinPoly {
        n,
        coeffs: trace_polynomial(&cyclotomic(2 * n as u64)),
        roots: Mutex::new(HashMap::new()),
    });
    let mut guard = cache.write().expect("minpoly cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(computed)))
}

impl MinPoly {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Ascending coefficients, monic.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Floating-point evaluation, for diagnostics and tests.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Sign of the polynomial at `m / 2^prec`, exactly.
    pub fn sign_at_dyadic(&self, m: &BigInt, prec: u32) -> i32 {
        let d = self.degree();
        let mut acc = self.coeffs[d].clone();
        for k in (0..d).rev() {
            acc = acc * m + (&self.coeffs[k] << (prec as usize * (d - k)));
        }
        signum(&acc)
    }

    /// Integers `lo <= hi` with `lo / 2^prec <= 2cos(pi/n) <= hi / 2^prec`
    /// and `hi - lo <= 1`.
    pub fn root_enclosure(&self, prec: u32) -> (BigInt, BigInt) {
        if self.degree() == 1 {
            let root = -&self.coeffs[0];
            let scaled = root << prec as usize;
            return (scaled.clone(), scaled);
        }
        let mut roots = self.roots.lock().expect("root cache poisoned");
        if let Some(hit) = roots.get(&prec) {
            return hit.clone();
        }
        // Start from the finest coarser bracket if there is one.
        let coarser = roots.iter().filter(|(p, _)| **p < prec).max_by_key(|(p, _)| **p);
        let (mut lo, mut hi) = match coarser {
            Some((p, (lo, hi))) => {
                let shift = (prec - p) as usize;
                (lo << shift, hi << shift)
            }
            None => {
                // 2cos(2pi/n) sits strictly between the two largest roots.
                let guess = 2.0 * (2.0 * std::f64::consts::PI / self.n as f64).cos();
                let lo20 = BigInt::from((guess * (1u64 << 20) as f64).floor() as i64);
                let lo = if prec >= 20 {
                    lo20 << (prec - 20) as usize
                } else {
                    lo20 >> (20 - prec) as usize
                };
                (lo, BigInt::from(2) << prec as usize)
            }
        };
        debug_assert!(self.sign_at_dyadic(&lo, prec) < 0);
        debug_assert!(self.sign_at_dyadic(&hi, prec) > 0);
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1usize;
            match self.sign_at_dyadic(&mid, prec) {
                s if s < 0 => lo = mid,
                s if s > 0 => hi = mid,
                _ => {
                    lo = mid.clone();
                    hi = mid;
                }
            }
        }
        roots.insert(prec, (lo.clone(), hi.clone()));
        (lo, hi)
    }
}

fn signum(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient by a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

fn x_pow_minus_one(d: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d as usize + 1];
    v[0] = BigInt::from(-1);
    v[d as usize] = BigInt::one();
    v
}

/// Cyclotomic polynomial via the Moebius product over divisors.
fn cyclotomic(m: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        match mobius(m / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

/// Rewrite a palindromic polynomial of degree `2D` in `z` as a polynomial
/// of degree `D` in `t = z + 1/z`.
fn trace_polynomial(pal: &[BigInt]) -> Vec<BigInt> {
    let half = (pal.len() - 1) / 2;
    // v[k] = z^k + z^-k as a polynomial in t.
    let mut v: Vec<Vec<BigInt>> = vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 2..=half {
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in v[k - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in v[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        v.push(next);
    }
    let mut out = vec![BigInt::zero(); half + 1];
    out[0] = pal[half].clone();
    for k in 1..=half {
        for (i, c) in v[k].iter().enumerate() {
            out[i] += &pal[half + k] * c;
        }
    }
    debug_assert!(out[half].is_one());
    out
}

/// Euler totient, used by tests and by degree checks.
pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}
