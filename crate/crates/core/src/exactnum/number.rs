use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::minpoly::{minpoly_2cos_pi_over, MinPoly};
use super::ExactError;

const START_PRECISION: u32 = 64;

/// The field Q(alpha, beta) with alpha = 2cos(pi/p), beta = 2cos(pi/q).
#[derive(Debug)]
pub struct Field {
    p: u32,
    q: u32,
    alpha_poly: Arc<MinPoly>,
    beta_poly: Arc<MinPoly>,
    /// Enclosures of alpha^i beta^j (row-major) keyed by precision.
    monomials: RwLock<HashMap<u32, Arc<Vec<(BigInt, BigInt)>>>>,
}

static FIELDS: OnceLock<RwLock<HashMap<(u32, u32), Arc<Field>>>> = OnceLock::new();

impl Field {
    /// Shared field for the coprime pair `(p, q)`.
    pub fn new(p: u32, q: u32) -> Result<Arc<Field>, ExactError> {
        if p < 2 || q < 2 || (p as u64).gcd(&(q as u64)) != 1 {
            return Err(ExactError::Domain(format!(
                "field needs coprime p, q >= 2, got ({p}, {q})"
            )));
        }
        let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = cache.read().expect("field cache poisoned").get(&(p, q)) {
            return Ok(Arc::clone(f));
        }
        let field = Arc::new(Field {
            p,
            q,
            alpha_poly: minpoly_2cos_pi_over(p)?,
            beta_poly: minpoly_2cos_pi_over(q)?,
            monomials: RwLock::new(HashMap::new()),
        });
        let mut guard = cache.write().expect("field cache poisoned");
        Ok(Arc::clone(guard.entry((p, q)).or_insert(field)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alpha_degree(&self) -> usize {
        self.alpha_poly.degree()
    }

    pub fn beta_degree(&self) -> usize {
        self.beta_poly.degree()
    }

    fn dim(&self) -> usize {
        self.alpha_degree() * self.beta_degree()
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraicNumber {
        AlgebraicNumber {
            field: Arc::clone(self),
            num: vec![BigInt::zero(); self.dim()],
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(self: &Arc<Self>, k: BigInt) -> AlgebraicNumber {
        let mut x = self.zero();
        x.num[0] = k;
        x
    }

    pub fn from_int(self: &Arc<Self>, k: i64) -> AlgebraicNumber {
        self.from_bigint(BigInt::from(k))
    }

    pub fn one(self: &Arc<Self>) -> AlgebraicNumber {
        self.from_int(1)
    }

    pub fn from_rational(self: &Arc<Self>, r: &BigRational) -> AlgebraicNumber {
        self.reduce(&[(0, 0, r.clone())])
    }

    /// 2cos(pi/p).
    pub fn alpha(self: &Arc<Self>) -> AlgebraicNumber {
        self.reduce(&[(1, 0, BigRational::one())])
    }

    /// 2cos(pi/q).
    pub fn beta(self: &Arc<Self>) -> AlgebraicNumber {
        self.reduce(&[(0, 1, BigRational::one())])
    }

    /// Canonical form of `sum c * alpha^i * beta^j` over the given terms.
    pub fn reduce(self: &Arc<Self>, terms: &[(usize, usize, BigRational)]) -> AlgebraicNumber {
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, _, c)| acc.lcm(c.denom()));
        let rows = terms.iter().map(|t| t.0 + 1).max().unwrap_or(1).max(self.alpha_degree());
        let cols = terms.iter().map(|t| t.1 + 1).max().unwrap_or(1).max(self.beta_degree());
        let mut grid = vec![vec![BigInt::zero(); cols]; rows];
        for (i, j, c) in terms {
            grid[*i][*j] += c.numer() * (&den / c.denom());
        }
        self.from_grid(grid, den)
    }

    fn from_grid(self: &Arc<Self>, mut grid: Vec<Vec<BigInt>>, den: BigInt) -> AlgebraicNumber {
        let da = self.alpha_degree();
        let db = self.beta_degree();
        let ap = self.alpha_poly.coeffs();
        let bp = self.beta_poly.coeffs();
        // alpha^da = -sum_{k<da} ap[k] alpha^k
        for i in (da..grid.len()).rev() {
            let row = std::mem::take(&mut grid[i]);
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for k in 0..da {
                    if !ap[k].is_zero() {
                        grid[i - da + k][j] -= c * &ap[k];
                    }
                }
            }
        }
        grid.truncate(da);
        for row in grid.iter_mut() {
            for j in (db..row.len()).rev() {
                let c = std::mem::take(&mut row[j]);
                if c.is_zero() {
                    continue;
                }
                for k in 0..db {
                    if !bp[k].is_zero() {
                        row[j - db + k] -= &c * &bp[k];
                    }
                }
            }
            row.truncate(db);
        }
        let num = grid.into_iter().flatten().collect();
        let mut x = AlgebraicNumber {
            field: Arc::clone(self),
            num,
            den,
        };
        x.normalize();
        x
    }

    /// Enclosures of every basis monomial at `prec` bits.
    fn monomial_enclosures(&self, prec: u32) -> Arc<Vec<(BigInt, BigInt)>> {
        if let Some(hit) = self.monomials.read().expect("enclosure cache poisoned").get(&prec) {
            return Arc::clone(hit);
        }
        let alpha = self.alpha_poly.root_enclosure(prec);
        let beta = self.beta_poly.root_enclosure(prec);
        let one = BigInt::one() << prec as usize;
        let powers = |base: &(BigInt, BigInt), count: usize| {
            let mut out = vec![(one.clone(), one.clone())];
            for _ in 1..count {
                let next = interval_mul(out.last().unwrap(), base, prec);
                out.push(next);
            }
            out
        };
        let apow = powers(&alpha, self.alpha_degree());
        let bpow = powers(&beta, self.beta_degree());
        let mut table = Vec::with_capacity(self.dim());
        for a in &apow {
            for b in &bpow {
                table.push(interval_mul(a, b, prec));
            }
        }
        let table = Arc::new(table);
        self.monomials
            .write()
            .expect("enclosure cache poisoned")
            .insert(prec, Arc::clone(&table));
        table
    }
}

fn floor_shift(x: &BigInt, prec: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << prec as usize))
}

fn ceil_shift(x: &BigInt, prec: u32) -> BigInt {
    -floor_shift(&-x, prec)
}

/// Product of two fixed-point intervals, rounded outward.
fn interval_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt), prec: u32) -> (BigInt, BigInt) {
    let cands = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = cands.iter().min().unwrap();
    let hi = cands.iter().max().unwrap();
    (floor_shift(lo, prec), ceil_shift(hi, prec))
}

/// Exact sign together with the precision that separated it from zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignCertificate {
    pub value: i32,
    pub precision_bits: u32,
}

/// Element of Q(alpha, beta) in the canonical basis `alpha^i beta^j`,
/// stored as integer numerators over one positive common denominator.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: Arc<Field>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl AlgebraicNumber {
    fn normalize(&mut self) {
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |acc, c| acc.gcd(c));
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let g = if self.den.is_negative() { -g } else { g };
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Coefficient of `alpha^i beta^j` as an exact rational.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        let db = self.field.beta_degree();
        BigRational::new(self.num[i * db + j].clone(), self.den.clone())
    }

    /// All coefficients, row-major in `(i, j)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The value as a rational, when it lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// The value as an integer, when it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Largest bit length among numerators and denominator.
    pub fn bit_size(&self) -> u64 {
        self.num
            .iter()
            .map(|c| c.bits())
            .chain(std::iter::once(self.den.bits()))
            .max()
            .unwrap_or(0)
    }

    fn numerator_enclosure(&self, prec: u32) -> (BigInt, BigInt) {
        let table = self.field.monomial_enclosures(prec);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (c, (mlo, mhi)) in self.num.iter().zip(table.iter()) {
            if c.is_positive() {
                lo += c * mlo;
                hi += c * mhi;
            } else if c.is_negative() {
                lo += c * mhi;
                hi += c * mlo;
            }
        }
        (lo, hi)
    }

    /// Certified sign of the real value.
    pub fn sign(&self) -> SignCertificate {
        if self.is_zero() {
            return SignCertificate { value: 0, precision_bits: 0 };
        }
        let mut prec = START_PRECISION;
        loop {
            let (lo, hi) = self.numerator_enclosure(prec);
            if lo.is_positive() {
                return SignCertificate { value: 1, precision_bits: prec };
            }
            if hi.is_negative() {
                return SignCertificate { value: -1, precision_bits: prec };
            }
            prec *= 2;
        }
    }

    /// Shorthand for `sign().value`.
    pub fn signum(&self) -> i32 {
        self.sign().value
    }

    /// Nearest double, with relative accuracy near machine precision.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mut prec = 2 * START_PRECISION;
        loop {
            let (lo, hi) = self.numerator_enclosure(prec);
            let width = &hi - &lo;
            let tight = (&width << 64usize) <= lo.abs().min(hi.abs());
            if (tight && lo.signum() == hi.signum()) || prec >= 1 << 14 {
                let scale = &self.den << (prec as usize + 1);
                return BigRational::new(lo + hi, scale).to_f64().unwrap_or(f64::NAN);
            }
            prec *= 2;
        }
    }

    pub fn pow(&self, e: u32) -> AlgebraicNumber {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> AlgebraicNumber {
        let mut x = AlgebraicNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        };
        x.normalize();
        x
    }

    pub fn scale_rational(&self, k: &BigRational) -> AlgebraicNumber {
        let mut x = AlgebraicNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| c * k.numer()).collect(),
            den: &self.den * k.denom(),
        };
        x.normalize();
        x
    }

    fn same_field(&self, other: &Self) {
        assert!(
            self.field.p == other.field.p && self.field.q == other.field.q,
            "mixed fields ({}, {}) and ({}, {})",
            self.field.p,
            self.field.q,
            other.field.p,
            other.field.q
        );
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.p == other.field.p
            && self.field.q == other.field.q
            && self.den == other.den
            && self.num == other.num
    }
}

impl Eq for AlgebraicNumber {}

impl std::hash::Hash for AlgebraicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.p.hash(state);
        self.field.q.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{})", self.to_f64())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let db = self.field.beta_degree();
        let mut terms = Vec::new();
        for (idx, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (idx / db, idx % db);
            let mut t = c.to_string();
            if i > 0 {
                t.push_str(&if i == 1 { "*a".to_string() } else { format!("*a^{i}") });
            }
            if j > 0 {
                t.push_str(&if j == 1 { "*b".to_string() } else { format!("*b^{j}") });
            }
            terms.push(t);
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.same_field(rhs);
        let den = self.den.lcm(&rhs.den);
        let ls = &den / &self.den;
        let rs = &den / &rhs.den;
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &ls + b * &rs)
            .collect();
        let mut x = AlgebraicNumber {
            field: Arc::clone(&self.field),
            num,
            den,
        };
        x.normalize();
        x
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        self.same_field(rhs);
        let da = self.field.alpha_degree();
        let db = self.field.beta_degree();
        if da * db == 1 {
            let mut x = AlgebraicNumber {
                field: Arc::clone(&self.field),
                num: vec![&self.num[0] * &rhs.num[0]],
                den: &self.den * &rhs.den,
            };
            x.normalize();
            return x;
        }
        let mut grid = vec![vec![BigInt::zero(); 2 * db - 1]; 2 * da - 1];
        for (x, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (y, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                grid[x / db + y / db][x % db + y % db] += a * b;
            }
        }
        self.field.from_grid(grid, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Chebyshev polynomial of the second kind, `C_n(x) = sin(nt)/sin(t)` at
/// `x = cos t`, by the three-term recurrence.
pub fn chebyshev_c(n: i64, x: &AlgebraicNumber) -> AlgebraicNumber {
    let field = x.field();
    if n < 0 {
        return -chebyshev_c(-n, x);
    }
    let two_x = x.scale(&BigInt::from(2));
    let mut prev = field.zero();
    let mut cur = field.one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}
