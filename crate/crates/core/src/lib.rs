//! Rademacher symbols for the triangle groups of signature (p, q, infinity)
//! and linking numbers of modular knots around the (p, q) torus knot.

pub mod exactnum;
pub mod group;
pub mod symbols;
pub mod linking;
pub mod analytic;
pub mod verify;
