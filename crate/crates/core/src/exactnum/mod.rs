//! Exact arithmetic in Q(2cos(pi/p), 2cos(pi/q)) with a certified sign.
//!
//! Values are kept in the basis `alpha^i beta^j` (`i < deg alpha`,
//! `j < deg beta`), fully reduced, so equality is structural. Signs of
//! nonzero values come from dyadic interval enclosures whose precision
//! doubles until zero is excluded.

mod minpoly;
mod number;

pub use minpoly::{minpoly_2cos_pi_over, totient, MinPoly};
pub use number::{chebyshev_c, AlgebraicNumber, Field, SignCertificate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("domain error: {0}")]
    Domain(String),
}
