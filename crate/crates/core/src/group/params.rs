use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::matrix::Matrix2;
use super::GroupError;
use crate::exactnum::{chebyshev_c, AlgebraicNumber, Field};

/// A coprime pair `2 <= p < q` together with the exact generator data.
pub struct GroupParams {
    p: u32,
    q: u32,
    field: Arc<Field>,
    lambda: AlgebraicNumber,
    /// `S^k` for `0 <= k < 2p`.
    s_powers: Vec<Matrix2>,
    /// `U^k` for `0 <= k < 2q`.
    u_powers: Vec<Matrix2>,
}

static PARAMS: OnceLock<RwLock<HashMap<(u32, u32), Arc<GroupParams>>>> = OnceLock::new();

impl GroupParams {
    pub fn new(p: u32, q: u32) -> Result<Arc<GroupParams>, GroupError> {
        if p < 2 || p >= q {
            return Err(GroupError::InvalidParams(format!("need 2 <= p < q, got ({p}, {q})")));
        }
        if (p as u64).gcd(&(q as u64)) != 1 {
            return Err(GroupError::InvalidParams(format!("p and q must be coprime, got ({p}, {q})")));
        }
        let cache = PARAMS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(hit) = cache.read().expect("params cache poisoned").get(&(p, q)) {
            return Ok(Arc::clone(hit));
        }
        let field = Field::new(p, q)?;
        let alpha = field.alpha();
        let beta = field.beta();
        let lambda = &alpha + &beta;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let s_powers = (0..2 * p as i64)
            .map(|n| elliptic_power(&alpha.scale_rational(&half), n, true))
            .collect();
        let u_powers = (0..2 * q as i64)
            .map(|n| elliptic_power(&beta.scale_rational(&half), n, false))
            .collect();
        let params = Arc::new(GroupParams {
            p,
            q,
            field,
            lambda,
            s_powers,
            u_powers,
        });
        let mut guard = cache.write().expect("params cache poisoned");
        Ok(Arc::clone(guard.entry((p, q)).or_insert(params)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pq(&self) -> i64 {
        self.p as i64 * self.q as i64
    }

    /// `pq - p - q`.
    pub fn r(&self) -> i64 {
        self.pq() - self.p as i64 - self.q as i64
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn alpha(&self) -> AlgebraicNumber {
        self.field.alpha()
    }

    pub fn beta(&self) -> AlgebraicNumber {
        self.field.beta()
    }

    /// Translation length of the parabolic generator, `alpha + beta`.
    pub fn lambda(&self) -> &AlgebraicNumber {
        &self.lambda
    }

    pub fn same_as(&self, other: &GroupParams) -> bool {
        self.p == other.p && self.q == other.q
    }

    /// `S^n` for any integer `n`.
    pub fn s_power(&self, n: i64) -> &Matrix2 {
        &self.s_powers[n.rem_euclid(2 * self.p as i64) as usize]
    }

    /// `U^n` for any integer `n`.
    pub fn u_power(&self, n: i64) -> &Matrix2 {
        &self.u_powers[n.rem_euclid(2 * self.q as i64) as usize]
    }

    /// `(S_p, U_q, T)` with `T = -U_q S_p = (1 lambda; 0 1)`.
    pub fn generators(&self) -> (Matrix2, Matrix2, Matrix2) {
        let t = Matrix2::from_entries(
            self.field.one(),
            self.lambda.clone(),
            self.field.zero(),
            self.field.one(),
        )
        .expect("T has determinant 1");
        (self.s_power(1).clone(), self.u_power(1).clone(), t)
    }
}

/// `S^n = (-C_{n-1}, -C_n; C_n, C_{n+1})` and
/// `U^n = (C_{n+1}, -C_n; C_n, -C_{n-1})`, Chebyshev values at `cos(pi/k)`.
fn elliptic_power(cos: &AlgebraicNumber, n: i64, is_s: bool) -> Matrix2 {
    let prev = chebyshev_c(n - 1, cos);
    let cur = chebyshev_c(n, cos);
    let next = chebyshev_c(n + 1, cos);
    let m = if is_s {
        Matrix2::from_entries(-prev, -&cur, cur, next)
    } else {
        Matrix2::from_entries(next, -&cur, cur, -prev)
    };
    m.expect("Chebyshev matrices have determinant 1")
}

impl fmt::Debug for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupParams({}, {})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(GroupParams::new(2, 3).is_ok());
        assert!(GroupParams::new(3, 2).is_err());
        assert!(GroupParams::new(2, 4).is_err());
        assert!(GroupParams::new(1, 3).is_err());
        assert!(GroupParams::new(3, 3).is_err());
    }

    #[test]
    fn r_is_coprime_to_2pq() {
        for (p, q) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5), (5, 7), (7, 10)] {
            let g = GroupParams::new(p, q).unwrap();
            assert!(g.r() >= 1);
            assert_eq!(g.r().gcd(&(2 * g.pq())), 1);
            assert_eq!(g.lambda().signum(), 1);
        }
    }

    #[test]
    fn generators_23() {
        let g = GroupParams::new(2, 3).unwrap();
        let (s, u, t) = g.generators();
        let f = g.field();
        let m = |a, b, c, d| Matrix2::from_entries(f.from_int(a), f.from_int(b), f.from_int(c), f.from_int(d)).unwrap();
        assert_eq!(s, m(0, -1, 1, 0));
        assert_eq!(t, m(1, 1, 0, 1));
        assert_eq!(u, m(1, -1, 1, 0));
    }

    #[test]
    fn golden_lambda() {
        let g = GroupParams::new(2, 5).unwrap();
        assert!((g.lambda().to_f64() - 1.618033988749895).abs() < 1e-14);
        let l = g.lambda();
        assert_eq!(l * l, l + &g.field().one());
    }

    #[test]
    fn orders_and_t_relation() {
        for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5), (4, 5), (5, 7)] {
            let g = GroupParams::new(p, q).unwrap();
            let (s, u, t) = g.generators();
            let minus = Matrix2::identity(g.field()).neg();
            assert_eq!(s.pow(p), minus);
            assert_eq!(u.pow(q), minus);
            assert_eq!((&u * &s).neg(), t);
            for n in 0..=(2 * p as i64) {
                assert_eq!(g.s_power(n), &s.pow(n as u32), "S^{n}");
            }
            for n in 0..=(2 * q as i64) {
                assert_eq!(g.u_power(n), &u.pow(n as u32), "U^{n}");
            }
        }
    }
}
