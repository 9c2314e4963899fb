//! Belyi functions for the hyperelliptic curves of [`crate::curves`].
//!
//! Starting from the double cover `f: C_a → P¹` the chain composes the
//! minimal polynomial `P` of `a`, then the successive discriminants
//! `h_1 = disc_z(P(z) − y)`, `h_{i+1} = disc_z(h_i(z) − y)` while they have
//! positive degree, then `g(t) = Π (t − r_i)^{m_i}`, then the scaling
//! `z ↦ z/g(∞)`. Only critical values are tracked, using
//! `CV(h∘F) = h(CV(F)) ∪ CV(h)`; composite maps are never expanded.

mod exponent;

pub use exponent::{exponent_data, ExponentData, ValueAtInfinity};

use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::curves::{branch_set, BranchSet, CurveError};
use crate::exactmath::{
    discriminant_in_z, exact_string, resultant_in_z, BivariatePolynomial, ExactError, NfElement, NumberField,
    Polynomial, Rational,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BelyiError {
    #[error("minimal polynomial must have degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("duplicate critical value {0}")]
    DuplicateValue(String),
    #[error("no finite critical values")]
    EmptyValues,
    #[error("exponent identity failed")]
    IdentityFailed,
    #[error("critical values are not all rational at step {0}")]
    NotRational(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A finite set of critical values plus possibly ∞.
///
/// Values in the number field are listed in `points`. Values outside it are
/// the roots of `algebraic`, a monic squarefree rational polynomial without
/// rational roots (the constant 1 when there are none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValues {
    points: Vec<NfElement>,
    algebraic: Polynomial,
    infinity: bool,
}

impl CriticalValues {
    fn normalized(field: &NumberField, mut points: Vec<NfElement>, algebraic: Polynomial, infinity: bool) -> Self {
        let mut alg = if algebraic.is_zero() { Polynomial::one() } else { algebraic.squarefree_part() };
        for q in alg.rational_roots() {
            points.push(field.rational(q.clone()));
            alg = alg.div_rem(&Polynomial::linear_root(&q)).expect("nonzero divisor").0;
        }
        points.sort();
        points.dedup();
        CriticalValues { points, algebraic: alg.monic(), infinity }
    }

    pub fn points(&self) -> &[NfElement] {
        &self.points
    }

    pub fn algebraic(&self) -> &Polynomial {
        &self.algebraic
    }

    pub fn has_infinity(&self) -> bool {
        self.infinity
    }

    /// The finite values, if they are all rational.
    pub fn rationals(&self) -> Option<Vec<Rational>> {
        if !self.algebraic.is_constant() {
            return None;
        }
        let mut v: Vec<Rational> = self.points.iter().map(NfElement::as_rational).collect::<Option<_>>()?;
        v.sort();
        Some(v)
    }

    /// Whether the set lies in `{0, 1, ∞}`.
    pub fn within_zero_one_infinity(&self) -> bool {
        self.rationals().is_some_and(|v| v.iter().all(|q| q.is_zero() || q.is_one()))
    }

    fn to_json(&self) -> Value {
        json!({
            "finite": self.points.iter().map(NfElement::to_string).collect::<Vec<_>>(),
            "algebraic": self.algebraic.to_string(),
            "infinity": self.infinity,
        })
    }
}

impl std::fmt::Display for CriticalValues {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = self.points.iter().map(NfElement::to_string).collect();
        if !self.algebraic.is_constant() {
            parts.push(format!("roots of {}", self.algebraic.display_in("y")));
        }
        if self.infinity {
            parts.push("oo".into());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    DoubleCover { genus: usize, branch: BranchSet },
    Polynomial { name: String, poly: Polynomial },
    Exponent(ExponentData),
    Affine { scale: Rational },
}

impl Step {
    pub fn kind(&self) -> &'static str {
        match self {
            Step::DoubleCover { .. } => "double_cover",
            Step::Polynomial { .. } => "polynomial",
            Step::Exponent(_) => "exponent",
            Step::Affine { .. } => "affine",
        }
    }

    fn to_json(&self) -> Value {
        let strs = |v: &[Rational]| v.iter().map(exact_string).collect::<Vec<_>>();
        match self {
            Step::DoubleCover { genus, branch } => json!({
                "kind": self.kind(),
                "genus": genus,
                "branch_set": branch.points().iter().map(NfElement::to_string).collect::<Vec<_>>(),
            }),
            Step::Polynomial { name, poly } => json!({
                "kind": self.kind(),
                "name": name,
                "polynomial": poly.display_in("z"),
            }),
            Step::Exponent(d) => json!({
                "kind": self.kind(),
                "r": strs(&d.r),
                "y": strs(&d.y),
                "N": d.n.to_string(),
                "m": d.m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            }),
            Step::Affine { scale } => json!({ "kind": self.kind(), "scale": exact_string(scale) }),
        }
    }
}

/// Steps together with the critical-value set after each step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalValueChain {
    field: NumberField,
    steps: Vec<Step>,
    values: Vec<CriticalValues>,
}

impl CriticalValueChain {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn values(&self) -> &[CriticalValues] {
        &self.values
    }

    pub fn last_values(&self) -> &CriticalValues {
        self.values.last().expect("chain starts with the double cover")
    }

    pub fn polynomial_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Polynomial { .. })).count()
    }

    pub fn exponent(&self) -> Option<&ExponentData> {
        self.steps.iter().find_map(|s| match s {
            Step::Exponent(d) => Some(d),
            _ => None,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.modulus().display_in("x"),
            "steps": self
                .steps
                .iter()
                .zip(&self.values)
                .map(|(s, v)| {
                    let mut o = s.to_json();
                    o["critical_values"] = v.to_json();
                    o
                })
                .collect::<Vec<_>>(),
        })
    }

    fn push(&mut self, step: Step, values: CriticalValues) {
        self.steps.push(step);
        self.values.push(values);
    }
}

fn initial_values(branch: &BranchSet) -> CriticalValues {
    CriticalValues::normalized(branch.field(), branch.points().to_vec(), Polynomial::one(), false)
}

/// `h(S)` for a polynomial `h`.
fn image(field: &NumberField, cv: &CriticalValues, h: &Polynomial) -> CriticalValues {
    let points = cv.points.iter().map(|p| p.apply(h)).collect();
    let algebraic = if cv.algebraic.is_constant() {
        Polynomial::one()
    } else {
        resultant_in_z(&BivariatePolynomial::from_z(&cv.algebraic), &BivariatePolynomial::y_minus(h))
    };
    CriticalValues::normalized(field, points, algebraic, cv.infinity)
}

fn union(field: &NumberField, a: CriticalValues, b: CriticalValues) -> CriticalValues {
    let mut points = a.points;
    points.extend(b.points);
    CriticalValues::normalized(field, points, &a.algebraic * &b.algebraic, a.infinity || b.infinity)
}

/// Critical values of `h`, via the discriminant of `h(z) − y`.
fn polynomial_critical_values(field: &NumberField, h: &Polynomial) -> Result<CriticalValues, ExactError> {
    let deg = h.degree().unwrap_or(0);
    if deg < 2 {
        return Ok(CriticalValues::normalized(field, vec![], Polynomial::one(), false));
    }
    let disc = discriminant_in_z(&BivariatePolynomial::minus_y(h))?;
    Ok(CriticalValues::normalized(field, vec![], disc, true))
}

/// The chain through `h ∘ P ∘ f`, whose critical values are rational.
pub fn discriminant_chain(g: usize, p: &Polynomial) -> Result<CriticalValueChain, BelyiError> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return Err(BelyiError::DegreeTooSmall(deg));
    }
    let field = NumberField::new(p.clone())?;
    let branch = branch_set(g, &field.generator())?;
    let start = initial_values(&branch);
    let mut chain = CriticalValueChain { field: field.clone(), steps: vec![], values: vec![] };
    chain.push(Step::DoubleCover { genus: g, branch }, start);

    let mut current = p.clone();
    let mut name = "P".to_string();
    let mut index = 0;
    loop {
        let next = image(&field, chain.last_values(), &current);
        let next = union(&field, next, polynomial_critical_values(&field, &current)?);
        chain.push(Step::Polynomial { name, poly: current.clone() }, next);
        if current.degree().unwrap_or(0) < 2 {
            break;
        }
        current = discriminant_in_z(&BivariatePolynomial::minus_y(&current))?;
        index += 1;
        name = format!("h{index}");
    }
    if chain.last_values().rationals().is_none() {
        return Err(BelyiError::NotRational(chain.steps.len() - 1));
    }
    Ok(chain)
}

fn exponent_values(field: &NumberField, prev: &CriticalValues, d: &ExponentData) -> CriticalValues {
    let at_inf = d.value_at_infinity();
    let ramified_at_inf = d.r.len() >= 2 || prev.infinity;
    let mut points = Vec::new();
    let mut infinity = d.m.iter().any(|m| m < &num_bigint::BigInt::zero());
    if d.m.iter().any(|m| m > &num_bigint::BigInt::zero()) {
        points.push(field.zero());
    }
    if ramified_at_inf {
        match &at_inf {
            ValueAtInfinity::Finite(v) => points.push(field.rational(v.clone())),
            ValueAtInfinity::Infinite => infinity = true,
        }
    }
    CriticalValues::normalized(field, points, Polynomial::one(), infinity)
}

fn affine_scale(d: &ExponentData) -> Rational {
    match d.value_at_infinity() {
        ValueAtInfinity::Finite(v) if !v.is_zero() => v.recip(),
        _ => Rational::one(),
    }
}

fn scaled(field: &NumberField, prev: &CriticalValues, scale: &Rational) -> CriticalValues {
    let s = field.rational(scale.clone());
    let points = prev.points.iter().map(|p| p * &s).collect();
    let alg = prev.algebraic.compose(&Polynomial::new(vec![Rational::zero(), scale.recip()]));
    CriticalValues::normalized(field, points, alg, prev.infinity)
}

/// The complete chain ending in `z ↦ z/g(∞)`.
pub fn build_belyi(g: usize, p: &Polynomial) -> Result<CriticalValueChain, BelyiError> {
    let mut chain = discriminant_chain(g, p)?;
    let field = chain.field.clone();
    let prev = chain.last_values().clone();
    let r = prev.rationals().ok_or(BelyiError::NotRational(chain.steps.len() - 1))?;
    let data = exponent_data(&r)?;
    let after_g = exponent_values(&field, &prev, &data);
    let scale = affine_scale(&data);
    chain.push(Step::Exponent(data), after_g.clone());
    let fin = scaled(&field, &after_g, &scale);
    chain.push(Step::Affine { scale }, fin);
    Ok(chain)
}

/// Result of re-auditing a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAudit {
    pub ok: bool,
    /// Index of the first step whose recorded values disagree, with the
    /// recomputed and recorded sets.
    pub first_divergence: Option<(usize, String, String)>,
}

/// Critical values of `h` through a second route: `h(z)` at the roots of
/// `h'`, that is the roots of `res_z(h'(z), y − h(z))`.
fn critical_values_by_derivative(field: &NumberField, h: &Polynomial) -> CriticalValues {
    if h.degree().unwrap_or(0) < 2 {
        return CriticalValues::normalized(field, vec![], Polynomial::one(), false);
    }
    let res = resultant_in_z(&BivariatePolynomial::from_z(&h.derivative()), &BivariatePolynomial::y_minus(h));
    CriticalValues::normalized(field, vec![], res, true)
}

/// Recomputes every step's critical values from the step definitions and
/// compares them with the recorded ones.
pub fn verify_chain(c: &CriticalValueChain) -> ChainAudit {
    let field = &c.field;
    let mut prev: Option<CriticalValues> = None;
    let mut last_exponent: Option<&ExponentData> = None;
    for (i, (step, recorded)) in c.steps.iter().zip(&c.values).enumerate() {
        let computed = match (step, &prev) {
            (Step::DoubleCover { branch, .. }, None) => Some(initial_values(branch)),
            (Step::Polynomial { poly, .. }, Some(p)) => {
                Some(union(field, image(field, p, poly), critical_values_by_derivative(field, poly)))
            }
            (Step::Exponent(d), Some(p)) => {
                last_exponent = Some(d);
                match p.rationals().map(|r| exponent_data(&r)) {
                    Some(Ok(fresh)) if &fresh == d => Some(exponent_values(field, p, d)),
                    _ => None,
                }
            }
            (Step::Affine { scale }, Some(p)) => match last_exponent {
                Some(d) if affine_scale(d) == *scale => Some(scaled(field, p, scale)),
                _ => None,
            },
            _ => None,
        };
        match computed {
            Some(v) if &v == recorded => prev = Some(v),
            other => {
                let shown = other.map_or_else(|| "step definition inconsistent".to_string(), |v| v.to_string());
                return ChainAudit { ok: false, first_divergence: Some((i, shown, recorded.to_string())) };
            }
        }
    }
    ChainAudit { ok: true, first_divergence: None }
}
