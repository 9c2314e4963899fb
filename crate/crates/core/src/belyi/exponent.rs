use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::BelyiError;
use crate::exactmath::{exact_string, Polynomial, Rational};

/// Exponents of `g(t) = Π (t − r_i)^{m_i}` for distinct rationals `r_i`.
///
/// With `y_i = 1/Π_{j≠i}(r_i − r_j)` and `N` the least common denominator
/// of the `y_i`, `m_i = N·y_i`. Then `Σ m_i Π_{j≠i}(t − r_j) = N`, which is
/// the numerator of the logarithmic derivative `g'/g`; so `g` has no
/// critical points outside the `r_i` and ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentData {
    pub r: Vec<Rational>,
    pub y: Vec<Rational>,
    pub n: BigInt,
    pub m: Vec<BigInt>,
}

/// Value of `g` at ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueAtInfinity {
    Finite(Rational),
    Infinite,
}

pub fn exponent_data(r: &[Rational]) -> Result<ExponentData, BelyiError> {
    if r.is_empty() {
        return Err(BelyiError::EmptyValues);
    }
    let mut y = Vec::with_capacity(r.len());
    for (i, ri) in r.iter().enumerate() {
        let mut prod = Rational::one();
        for (j, rj) in r.iter().enumerate() {
            if i != j {
                let d = ri - rj;
                if d.is_zero() {
                    return Err(BelyiError::DuplicateValue(exact_string(ri)));
                }
                prod *= d;
            }
        }
        y.push(prod.recip());
    }
    let n = y.iter().fold(BigInt::one(), |acc, yi| acc.lcm(yi.denom()));
    let m: Vec<BigInt> = y.iter().map(|yi| (yi * Rational::from_integer(n.clone())).to_integer()).collect();
    let data = ExponentData { r: r.to_vec(), y, n, m };
    if data.identity_lhs() != Polynomial::constant(Rational::from_integer(data.n.clone())) {
        return Err(BelyiError::IdentityFailed);
    }
    Ok(data)
}

impl ExponentData {
    /// `Σ m_i Π_{j≠i}(t − r_j)`, expanded.
    pub fn identity_lhs(&self) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, mi) in self.m.iter().enumerate() {
            let mut term = Polynomial::constant(Rational::from_integer(mi.clone()));
            for (j, rj) in self.r.iter().enumerate() {
                if i != j {
                    term = &term * &Polynomial::linear_root(rj);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn exponent_sum(&self) -> BigInt {
        self.m.iter().sum()
    }

    /// Limit of `g(t)` as `t → ∞`. The factors are monic, so the limit is 1
    /// when the exponents sum to zero.
    pub fn value_at_infinity(&self) -> ValueAtInfinity {
        let s = self.exponent_sum();
        if s.is_zero() {
            ValueAtInfinity::Finite(Rational::one())
        } else if s.is_positive() {
            ValueAtInfinity::Infinite
        } else {
            ValueAtInfinity::Finite(Rational::zero())
        }
    }
}
