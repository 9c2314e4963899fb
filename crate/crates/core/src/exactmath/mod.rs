//! Exact arithmetic: rationals, univariate polynomials, resultants and
//! discriminants, number fields and integer Smith normal form.

mod intmatrix;
mod multipoly;
mod numfield;
mod poly;
mod prs;
mod rational;

pub use intmatrix::{smith_normal_form, IntegerMatrix, SmithForm};
pub use multipoly::MultiPoly;
pub use numfield::{nf_invert, NfElement, NumberField};
pub use poly::Polynomial;
pub use prs::{discriminant, discriminant_in_z, poly_resultant, resultant_in_z, BivariatePolynomial};
pub use rational::{exact_string, int, parse_rational, rat, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial degree {0} is too small for this operation")]
    DegreeTooSmall(usize),
    #[error("degree {0} exceeds the supported bound")]
    DegreeTooLarge(usize),
    #[error("`{element}` is not invertible modulo `{modulus}` (modulus is reducible)")]
    NotInvertible { element: String, modulus: String },
    #[error("modulus `{0}` must be monic of positive degree")]
    BadModulus(String),
    #[error("modulus `{0}` is reducible over the rationals")]
    Reducible(String),
    #[error("cannot parse polynomial `{0}`")]
    Parse(String),
}
