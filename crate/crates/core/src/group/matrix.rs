use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use super::GroupError;
use crate::exactnum::{AlgebraicNumber, Field};

/// `(a b; c d)` with exact entries and determinant 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    a: AlgebraicNumber,
    b: AlgebraicNumber,
    c: AlgebraicNumber,
    d: AlgebraicNumber,
}

impl Matrix2 {
    pub fn from_entries(
        a: AlgebraicNumber,
        b: AlgebraicNumber,
        c: AlgebraicNumber,
        d: AlgebraicNumber,
    ) -> Result<Matrix2, GroupError> {
        let m = Matrix2 { a, b, c, d };
        let det = &(&m.a * &m.d) - &(&m.b * &m.c);
        if det != m.a.field().one() {
            return Err(GroupError::Domain(format!("determinant is {det}, not 1")));
        }
        Ok(m)
    }

    pub(crate) fn from_entries_unchecked(
        a: AlgebraicNumber,
        b: AlgebraicNumber,
        c: AlgebraicNumber,
        d: AlgebraicNumber,
    ) -> Matrix2 {
        Matrix2 { a, b, c, d }
    }

    /// Integer matrix in the field of `(p, q)`.
    pub fn from_integers(field: &Arc<Field>, entries: [[i64; 2]; 2]) -> Result<Matrix2, GroupError> {
        Matrix2::from_entries(
            field.from_int(entries[0][0]),
            field.from_int(entries[0][1]),
            field.from_int(entries[1][0]),
            field.from_int(entries[1][1]),
        )
    }

    pub fn identity(field: &Arc<Field>) -> Matrix2 {
        Matrix2 {
            a: field.one(),
            b: field.zero(),
            c: field.zero(),
            d: field.one(),
        }
    }

    pub fn a(&self) -> &AlgebraicNumber {
        &self.a
    }
    pub fn b(&self) -> &AlgebraicNumber {
        &self.b
    }
    pub fn c(&self) -> &AlgebraicNumber {
        &self.c
    }
    pub fn d(&self) -> &AlgebraicNumber {
        &self.d
    }

    pub fn trace(&self) -> AlgebraicNumber {
        &self.a + &self.d
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn inverse(&self) -> Matrix2 {
        Matrix2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn pow(&self, n: u32) -> Matrix2 {
        let mut acc = Matrix2::identity(self.a.field());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity(self.a.field())
    }

    /// `+1` for `I`, `-1` for `-I`, `0` otherwise.
    pub fn central_sign(&self) -> i32 {
        let id = Matrix2::identity(self.a.field());
        if *self == id {
            1
        } else if *self == id.neg() {
            -1
        } else {
            0
        }
    }

    /// Entries as integers, when they all are.
    pub fn to_integers(&self) -> Option<[[i64; 2]; 2]> {
        use num_traits::ToPrimitive;
        let int = |x: &AlgebraicNumber| x.to_integer().and_then(|v| v.to_i64());
        Some([[int(&self.a)?, int(&self.b)?], [int(&self.c)?, int(&self.d)?]])
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [[self.a.to_f64(), self.b.to_f64()], [self.c.to_f64(), self.d.to_f64()]]
    }

    pub fn bit_size(&self) -> u64 {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|x| x.bit_size())
            .max()
            .unwrap_or(0)
    }
}

impl<'a> Mul<&'a Matrix2> for &'a Matrix2 {
    type Output = Matrix2;
    fn mul(self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}
