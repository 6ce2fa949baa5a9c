//! The triangle group generated by `S_p = (0 -1; 1 alpha)` and
//! `U_q = (beta -1; 1 0)`, as words and as exact matrices.
//!
//! Words are reduced to the normal form of the amalgam
//! `Z/2p *_{Z/2} Z/2q`: alternating syllables with `S`-exponents in
//! `1..p` and `U`-exponents in `1..q`, and the central `-I` kept as a
//! separate sign.

mod cyclic;
mod element;
mod matrix;
mod params;
mod recognize;
mod word;

pub use cyclic::{cyclic_reduce, is_primitive, primitive_root};
pub(crate) use cyclic::{canonical_rotation, cyclic_period};
pub use element::{asai_sign, cocycle_w, lift_inverse, lift_multiply, Classification, Element, LiftedElement};
pub use matrix::Matrix2;

pub(crate) mod element_internals {
    pub(crate) use super::element::w_from_signs;
}
pub use params::GroupParams;
pub use recognize::matrix_to_word;
pub use word::{normal_form, parse_word, random_word, word_to_matrix, Generator, GroupWord, Syllable};

use crate::exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not recognized as a group element: {0}")]
    NotAGroupElement(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl From<ExactError> for GroupError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Domain(m) => GroupError::InvalidParams(m),
        }
    }
}
