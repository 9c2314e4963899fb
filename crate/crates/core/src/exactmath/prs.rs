//! Resultants and discriminants by the subresultant pseudo-remainder
//! sequence, generic over the coefficient domain so that the same code runs
//! over the rationals and over `Q[y]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::rational::Rational;
use super::ExactError;

/// Integral domain with exact division, as needed by the subresultant PRS.
pub(crate) trait Domain: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics (debug) if the division is not exact.
    fn exact_div(&self, o: &Self) -> Self;

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Domain for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Domain for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o).expect("division by zero polynomial");
        debug_assert!(r.is_zero(), "inexact division in subresultant sequence");
        q
    }
}

fn trim<R: Domain>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn deg<R: Domain>(v: &[R]) -> usize {
    v.len() - 1
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a = q·b + r`.
fn prem<R: Domain>(a: &[R], b: &[R]) -> Vec<R> {
    let db = deg(b);
    let lb = b.last().unwrap().clone();
    let mut r: Vec<R> = a.to_vec();
    let mut e = deg(a) + 1 - db;
    while !r.is_empty() && deg(&r) >= db {
        let shift = deg(&r) - db;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + shift] = r[j + shift].sub(&lr.mul(bj));
        }
        trim(&mut r);
        e -= 1;
    }
    let f = lb.pow(e);
    for c in r.iter_mut() {
        *c = c.mul(&f);
    }
    r
}

/// Resultant of two coefficient vectors (ascending, trimmed). Zero when
/// either input is zero.
pub(crate) fn subresultant<R: Domain>(a: &[R], b: &[R]) -> R {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let mut negate = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = R::one();
    let mut h = R::one();
    while deg(&b) > 0 {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r.iter().map(|c| c.exact_div(&divisor)).collect();
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
        if b.is_empty() {
            return R::zero();
        }
    }
    let da = deg(&a);
    let lb = b[0].clone();
    let res = if da == 0 { R::one() } else { lb.pow(da).exact_div(&h.pow(da - 1)) };
    if negate {
        res.neg()
    } else {
        res
    }
}

/// Resultant of two rational polynomials with respect to their variable.
///
/// Uses the convention `res(p, q) = lc(p)^deg q · Π_{p(α)=0} q(α)`, the
/// determinant of the Sylvester matrix.
pub fn poly_resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational, ExactError> {
    if p.is_zero() && q.is_zero() {
        return Err(ExactError::BothZero);
    }
    Ok(subresultant(p.coeffs(), q.coeffs()))
}

/// Polynomial in `z` whose coefficients are polynomials in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: Vec<Polynomial>,
}

impl BivariatePolynomial {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        trim(&mut coeffs);
        BivariatePolynomial { coeffs }
    }

    /// `p(z) - y`.
    pub fn minus_y(p: &Polynomial) -> Self {
        let mut coeffs: Vec<Polynomial> = p.coeffs().iter().cloned().map(Polynomial::constant).collect();
        if coeffs.is_empty() {
            coeffs.push(Polynomial::zero());
        }
        coeffs[0] = &coeffs[0] - &Polynomial::x();
        Self::new(coeffs)
    }

    /// `y - p(z)`.
    pub fn y_minus(p: &Polynomial) -> Self {
        let m = Self::minus_y(p);
        Self::new(m.coeffs.iter().map(|c| -c).collect())
    }

    /// Lifts a polynomial in `z` with constant coefficients.
    pub fn from_z(p: &Polynomial) -> Self {
        Self::new(p.coeffs().iter().cloned().map(Polynomial::constant).collect())
    }

    pub fn z_coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn z_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn z_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Substitutes `y = y0`, leaving a polynomial in `z`.
    pub fn specialize_y(&self, y0: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c.eval(y0)).collect())
    }
}

/// Resultant with respect to `z`; a polynomial in `y`.
pub fn resultant_in_z(p: &BivariatePolynomial, q: &BivariatePolynomial) -> Polynomial {
    subresultant(&p.coeffs, &q.coeffs)
}

/// `disc_z(p)`, normalized monic in `y`.
///
/// Vanishes at `y0` exactly when `p(z, y0)` has a repeated root in `z` (for
/// `p` whose leading `z`-coefficient does not vanish at `y0`). The zero
/// polynomial is returned unnormalized when `p` is not squarefree in `z`.
pub fn discriminant_in_z(p: &BivariatePolynomial) -> Result<Polynomial, ExactError> {
    let n = match p.z_degree() {
        Some(n) if n >= 2 => n,
        d => return Err(ExactError::DegreeTooSmall(d.unwrap_or(0))),
    };
    let res = resultant_in_z(p, &p.z_derivative());
    let lc = p.coeffs.last().unwrap();
    let mut disc = Domain::exact_div(&res, lc);
    if (n * (n - 1) / 2) % 2 == 1 {
        disc = -&disc;
    }
    Ok(disc.monic())
}

/// Discriminant of a univariate polynomial (unnormalized, standard sign).
pub fn discriminant(p: &Polynomial) -> Result<Rational, ExactError> {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        d => return Err(ExactError::DegreeTooSmall(d.unwrap_or(0))),
    };
    if n == 1 {
        return Ok(<Rational as One>::one());
    }
    let res = subresultant(p.coeffs(), p.derivative().coeffs());
    let mut disc = res / p.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        disc = -disc;
    }
    Ok(disc)
}
