use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use super::poly::Polynomial;
use super::rational::{exact_string, Rational};
use super::ExactError;

/// The field `Q[x]/(m)` for a fixed monic irreducible modulus `m`.
///
/// The rationals themselves are the field with modulus `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Arc<Polynomial>,
}

impl NumberField {
    /// Checks that the modulus is monic and irreducible.
    pub fn new(modulus: Polynomial) -> Result<Self, ExactError> {
        if modulus.degree().unwrap_or(0) < 1 || !modulus.is_monic() {
            return Err(ExactError::BadModulus(modulus.to_string()));
        }
        if !modulus.is_irreducible()? {
            return Err(ExactError::Reducible(modulus.to_string()));
        }
        Ok(Self::new_unchecked(modulus))
    }

    /// No irreducibility check; inversion reports `NotInvertible` when the
    /// modulus turns out to be reducible.
    pub fn new_unchecked(modulus: Polynomial) -> Self {
        NumberField { modulus: Arc::new(modulus) }
    }

    pub fn rationals() -> Self {
        Self::new_unchecked(Polynomial::x())
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn element(&self, rep: Polynomial) -> NfElement {
        let rep = rep.rem(&self.modulus).expect("modulus is nonzero");
        NfElement { field: self.clone(), rep }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> NfElement {
        self.element(Polynomial::x())
    }

    pub fn rational(&self, q: Rational) -> NfElement {
        self.element(Polynomial::constant(q))
    }

    pub fn int(&self, n: i64) -> NfElement {
        self.rational(Rational::from_integer(n.into()))
    }

    pub fn zero(&self) -> NfElement {
        self.element(Polynomial::zero())
    }

    pub fn one(&self) -> NfElement {
        self.int(1)
    }
}

/// Element of a [`NumberField`], stored as its reduced representative.
///
/// Arithmetic between elements of different fields panics; use
/// [`NfElement::same_field`] to check beforehand where inputs come from
/// outside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NfElement {
    field: NumberField,
    rep: Polynomial,
}

impl NfElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn representative(&self) -> &Polynomial {
        &self.rep
    }

    pub fn same_field(&self, other: &NfElement) -> bool {
        Arc::ptr_eq(&self.field.modulus, &other.field.modulus) || self.field == other.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.rep.is_constant() {
            Some(self.rep.coeff(0))
        } else {
            None
        }
    }

    pub fn invert(&self) -> Result<NfElement, ExactError> {
        nf_invert(self)
    }

    pub fn pow(&self, e: usize) -> NfElement {
        let mut acc = self.field.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates a rational polynomial at this element.
    pub fn apply(&self, p: &Polynomial) -> NfElement {
        p.coeffs().iter().rev().fold(self.field.zero(), |acc, c| &(&acc * self) + &self.field.rational(c.clone()))
    }

    fn assert_same(&self, other: &NfElement) {
        assert!(self.same_field(other), "number field mismatch: {} vs {}", self.field.modulus, other.field.modulus);
    }
}

/// Inverse modulo the field's modulus via the extended Euclidean algorithm.
pub fn nf_invert(e: &NfElement) -> Result<NfElement, ExactError> {
    if e.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    let (g, s, _) = e.rep.ext_gcd(&e.field.modulus);
    if !g.is_one_poly() {
        return Err(ExactError::NotInvertible { element: e.rep.to_string(), modulus: e.field.modulus.to_string() });
    }
    Ok(e.field.element(s))
}

impl Polynomial {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl Add for &NfElement {
    type Output = NfElement;
    fn add(self, rhs: &NfElement) -> NfElement {
        self.assert_same(rhs);
        NfElement { field: self.field.clone(), rep: &self.rep + &rhs.rep }
    }
}

impl Sub for &NfElement {
    type Output = NfElement;
    fn sub(self, rhs: &NfElement) -> NfElement {
        self.assert_same(rhs);
        NfElement { field: self.field.clone(), rep: &self.rep - &rhs.rep }
    }
}

impl Mul for &NfElement {
    type Output = NfElement;
    fn mul(self, rhs: &NfElement) -> NfElement {
        self.assert_same(rhs);
        self.field.element(&self.rep * &rhs.rep)
    }
}

impl Neg for &NfElement {
    type Output = NfElement;
    fn neg(self) -> NfElement {
        NfElement { field: self.field.clone(), rep: -&self.rep }
    }
}

impl fmt::Display for NfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => f.write_str(&exact_string(&q)),
            None => write!(f, "{} mod ({})", self.rep.display_in("x"), self.field.modulus.display_in("x")),
        }
    }
}

/// Ordering used for canonical sorting: by representative coefficients.
impl PartialOrd for NfElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NfElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |e: &NfElement| {
            (e.rep.degree().map_or(0, |d| d + 1), e.rep.coeffs().iter().rev().cloned().collect::<Vec<_>>())
        };
        key(self).cmp(&key(other)).then_with(|| self.field.modulus.cmp(&other.field.modulus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;
    use num_traits::Zero;

    fn sqrt2_field() -> NumberField {
        NumberField::new(Polynomial::from_ints(&[-2, 0, 1])).unwrap()
    }

    #[test]
    fn invert_examples() {
        let k = sqrt2_field();
        let s = k.generator();
        assert_eq!(nf_invert(&s).unwrap(), k.element(Polynomial::new(vec![Rational::zero(), rat(1, 2)])));
        assert_eq!(nf_invert(&k.one()).unwrap(), k.one());
        let e = &k.one() + &s;
        assert_eq!(nf_invert(&e).unwrap(), &s - &k.one());
        assert!(matches!(nf_invert(&k.zero()), Err(ExactError::DivisionByZero)));
    }

    #[test]
    fn reducible_modulus_reported() {
        assert!(matches!(NumberField::new(Polynomial::from_ints(&[-1, 0, 1])), Err(ExactError::Reducible(_))));
        let k = NumberField::new_unchecked(Polynomial::from_ints(&[-1, 0, 1]));
        let e = &k.generator() - &k.one();
        assert!(matches!(nf_invert(&e), Err(ExactError::NotInvertible { .. })));
    }

    #[test]
    fn arithmetic_reduces() {
        let k = sqrt2_field();
        let s = k.generator();
        assert_eq!(&s * &s, k.int(2));
        assert_eq!(s.pow(3), &k.int(2) * &s);
        assert_eq!(s.apply(&Polynomial::from_ints(&[-2, 0, 1])), k.zero());
        assert_eq!((&s * &s).as_rational(), Some(rat(2, 1)));
        assert_eq!(s.to_string(), "x mod (x^2 - 2)");
    }

    #[test]
    #[should_panic(expected = "number field mismatch")]
    fn mixing_fields_panics() {
        let k = sqrt2_field();
        let _ = &k.one() + &NumberField::rationals().one();
    }
}
