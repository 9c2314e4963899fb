//! Branch sets `{−2g, 0, 1, ..., 2g−1, a}` of the hyperelliptic curves
//! `w² = (z − a)(z + 2g) Π_{i=0}^{2g−1} (z − i)` and their projective
//! equivalence over a number field.
//!
//! A hyperelliptic curve is determined up to isomorphism by its branch set
//! up to Möbius transformations, so everything here works with branch
//! sets only. No curve models are built.

use std::collections::HashSet;

use thiserror::Error;

use crate::exactmath::{ExactError, NfElement, NumberField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("genus {0} is below 3")]
    GenusTooSmall(usize),
    #[error("special point {0} collides with a rational branch point")]
    Collision(String),
    #[error("points live in different number fields")]
    FieldMismatch,
    #[error("degenerate Möbius map")]
    Degenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSet {
    field: NumberField,
    points: Vec<NfElement>,
}

/// Branch set of the genus-`g` curve with special point `a`.
pub fn branch_set(g: usize, a: &NfElement) -> Result<BranchSet, CurveError> {
    if g < 3 {
        return Err(CurveError::GenusTooSmall(g));
    }
    let field = a.field().clone();
    let mut points = vec![field.int(-2 * g as i64)];
    points.extend((0..2 * g as i64).map(|i| field.int(i)));
    if points.contains(a) {
        return Err(CurveError::Collision(a.to_string()));
    }
    points.push(a.clone());
    Ok(BranchSet { field, points })
}

impl BranchSet {
    /// Arbitrary finite set of distinct points of one field. Used for small
    /// test configurations.
    pub fn from_points(points: Vec<NfElement>) -> Result<Self, CurveError> {
        let field = points.first().ok_or(CurveError::Precondition("empty point set".into()))?.field().clone();
        if points.iter().any(|p| p.field() != &field) {
            return Err(CurveError::FieldMismatch);
        }
        let distinct: HashSet<&NfElement> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(CurveError::Precondition("repeated point".into()));
        }
        Ok(BranchSet { field, points })
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn points(&self) -> &[NfElement] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// `t ↦ (αt + β)/(γt + δ)` with `αδ − βγ ≠ 0`, scaled so that the first
/// nonzero coefficient is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    coeffs: [NfElement; 4],
}

impl MoebiusMap {
    pub fn new(alpha: NfElement, beta: NfElement, gamma: NfElement, delta: NfElement) -> Result<Self, CurveError> {
        let det = &(&alpha * &delta) - &(&beta * &gamma);
        if det.is_zero() {
            return Err(CurveError::Degenerate);
        }
        let coeffs = [alpha, beta, gamma, delta];
        let lead = coeffs.iter().find(|c| !c.is_zero()).unwrap().invert()?;
        Ok(MoebiusMap { coeffs: coeffs.map(|c| &c * &lead) })
    }

    pub fn identity(field: &NumberField) -> Self {
        MoebiusMap { coeffs: [field.one(), field.zero(), field.zero(), field.one()] }
    }

    pub fn coefficients(&self) -> &[NfElement; 4] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        let [a, b, c, d] = &self.coeffs;
        b.is_zero() && c.is_zero() && a == d
    }

    /// Image of a finite point; `None` stands for ∞.
    pub fn apply(&self, t: &NfElement) -> Option<NfElement> {
        let [a, b, c, d] = &self.coeffs;
        let den = &(c * t) + d;
        if den.is_zero() {
            return None;
        }
        Some(&(&(a * t) + b) * &den.invert().ok()?)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> Result<MoebiusMap, CurveError> {
        let [a, b, c, d] = &self.coeffs;
        let [e, f, g, h] = &other.coeffs;
        MoebiusMap::new(&(a * e) + &(b * g), &(a * f) + &(b * h), &(c * e) + &(d * g), &(c * f) + &(d * h))
    }

    /// The map sending `p1, p2, p3` to `0, 1, ∞`.
    fn to_standard_frame(p: [&NfElement; 3]) -> Result<MoebiusMap, CurveError> {
        let [p1, p2, p3] = p;
        let u = p2 - p3;
        let v = p2 - p1;
        MoebiusMap::new(u.clone(), -&(&u * p1), v.clone(), -&(&v * p3))
    }

    fn inverse(&self) -> Result<MoebiusMap, CurveError> {
        let [a, b, c, d] = &self.coeffs;
        MoebiusMap::new(d.clone(), -b, -c, a.clone())
    }

    /// The unique map sending `p_i` to `q_i` for three distinct points each.
    pub fn from_frames(p: [&NfElement; 3], q: [&NfElement; 3]) -> Result<MoebiusMap, CurveError> {
        Self::to_standard_frame(q)?.inverse()?.compose(&Self::to_standard_frame(p)?)
    }
}

/// A Möbius map carrying `b1` onto `b2` as sets, or `None`.
///
/// Any such map sends the first three points of `b1` to some ordered triple
/// of `b2`, and three points determine the map. So it suffices to try the
/// ordered triples of `b2` in lexicographic index order; the first hit is
/// returned. Candidates that send a point to ∞ are rejected, since neither
/// set contains ∞.
pub fn projectively_equivalent(b1: &BranchSet, b2: &BranchSet) -> Result<Option<MoebiusMap>, CurveError> {
    if b1.field != b2.field {
        return Err(CurveError::FieldMismatch);
    }
    let n = b1.len();
    if n != b2.len() {
        return Ok(None);
    }
    if n < 3 {
        return Err(CurveError::Precondition("need at least three points".into()));
    }
    let target: HashSet<&NfElement> = b2.points.iter().collect();
    let frame = [&b1.points[0], &b1.points[1], &b1.points[2]];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let m = MoebiusMap::from_frames(frame, [&b2.points[i], &b2.points[j], &b2.points[k]])?;
                let ok = b1.points[3..].iter().all(|x| m.apply(x).is_some_and(|y| target.contains(&y)));
                if ok {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// Whether the genus-`g` branch sets with special points `a` and `b` are
/// projectively equivalent over their common field.
///
/// Accepted inputs: `g ≥ 3` with `a` irrational, or `g ≥ 6` with any
/// admissible `a` and `b`. For these inputs the answer is expected to be
/// `a == b`.
pub fn lemma1_decision(g: usize, a: &NfElement, b: &NfElement) -> Result<bool, CurveError> {
    if !a.same_field(b) {
        return Err(CurveError::FieldMismatch);
    }
    if g < 3 {
        return Err(CurveError::GenusTooSmall(g));
    }
    if g < 6 && a.as_rational().is_some() {
        return Err(CurveError::Precondition(format!("rational special point needs genus at least 6, got {g}")));
    }
    let b1 = branch_set(g, a)?;
    let b2 = branch_set(g, b)?;
    Ok(projectively_equivalent(&b1, &b2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Polynomial;

    fn sqrt2() -> NfElement {
        NumberField::new(Polynomial::from_ints(&[-2, 0, 1])).unwrap().generator()
    }

    #[test]
    fn branch_sets() {
        let a = sqrt2();
        let b = branch_set(3, &a).unwrap();
        assert_eq!(b.len(), 8);
        let k = a.field().clone();
        assert!(matches!(branch_set(3, &k.int(2)), Err(CurveError::Collision(_))));
        assert!(matches!(branch_set(2, &a), Err(CurveError::GenusTooSmall(2))));
        let q = NumberField::rationals();
        let b = branch_set(6, &q.int(13)).unwrap();
        assert_eq!(b.len(), 14);
        assert_eq!(b.points()[0], q.int(-12));
    }

    #[test]
    fn frames_and_maps() {
        let q = NumberField::rationals();
        let pts = |v: &[i64]| BranchSet::from_points(v.iter().map(|&x| q.int(x)).collect()).unwrap();
        let m = projectively_equivalent(&pts(&[0, 1, 2]), &pts(&[1, 2, 3])).unwrap().unwrap();
        assert_eq!(m, MoebiusMap::new(q.int(1), q.int(1), q.int(0), q.int(1)).unwrap());
        let b = branch_set(3, &sqrt2()).unwrap();
        assert!(projectively_equivalent(&b, &b).unwrap().unwrap().is_identity());
    }

    #[test]
    fn conjugate_special_points() {
        let a = sqrt2();
        let b = -&a;
        assert!(lemma1_decision(3, &a, &a).unwrap());
        assert!(!lemma1_decision(3, &a, &b).unwrap());
        let q = NumberField::rationals();
        assert!(!lemma1_decision(6, &q.int(100), &q.int(101)).unwrap());
        assert!(lemma1_decision(3, &q.int(100), &q.int(100)).is_err());
    }

    #[test]
    fn moebius_algebra() {
        let q = NumberField::rationals();
        let (p1, p2, p3) = (q.int(2), q.int(5), q.int(-1));
        let m = MoebiusMap::from_frames([&p1, &p2, &p3], [&q.int(0), &q.int(1), &q.int(7)]).unwrap();
        assert_eq!(m.apply(&p1), Some(q.int(0)));
        assert_eq!(m.apply(&p2), Some(q.int(1)));
        assert_eq!(m.apply(&p3), Some(q.int(7)));
        assert!(MoebiusMap::new(q.int(1), q.int(2), q.int(2), q.int(4)).is_err());
    }
}
