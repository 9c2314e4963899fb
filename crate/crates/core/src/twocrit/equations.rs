use std::fmt;

use super::TwoCritError;
use crate::exactmath::{MultiPoly, NfElement};
use crate::perm::CycleType;

/// Equations on the roots of a normalized polynomial
/// `P(z) = Π (z − β_i)^{m_i}` with `P(z) − 1 = Π (z − γ_k)^{n_k}`.
///
/// `F1 = Σ m_i β_i` and `F2 = Σ n_k γ_k` say that the `z^{n−1}` terms of `P`
/// and `P − 1` vanish. `F3, ..., F_{n+1}` are the coefficients of
/// `z^{n−2}, ..., z^0` in `Π (z − β_i)^{m_i} − 1 − Π (z − γ_k)^{n_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCritEquations {
    degree: usize,
    m: Vec<usize>,
    nk: Vec<usize>,
    names: Vec<String>,
    equations: Vec<MultiPoly>,
}

/// `Π (z − x_i)^{e_i}` with multivariate coefficients, lowest degree first.
fn expand(nvars: usize, exps: &[usize], offset: usize) -> Vec<MultiPoly> {
    let mut coeffs = vec![MultiPoly::constant(nvars, 1)];
    for (i, &e) in exps.iter().enumerate() {
        let x = MultiPoly::var(nvars, offset + i);
        for _ in 0..e {
            let mut next = vec![MultiPoly::zero(nvars); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &x);
            }
            coeffs = next;
        }
    }
    coeffs
}

pub fn build_equations(n: usize, t0: &CycleType, t1: &CycleType) -> Result<TwoCritEquations, TwoCritError> {
    for t in [t0, t1] {
        if t.degree() != n {
            return Err(TwoCritError::WrongDegree(t.to_string(), n));
        }
    }
    let (r, s) = (t0.cycle_count(), t1.cycle_count());
    if r + s != n + 1 {
        return Err(TwoCritError::Unbalanced(r + s, n + 1));
    }
    let nvars = r + s;
    let mut names: Vec<String> = (1..=r).map(|i| format!("beta{i}")).collect();
    names.extend((1..=s).map(|k| format!("gamma{k}")));

    let linear = |exps: &[usize], offset: usize| {
        exps.iter()
            .enumerate()
            .fold(MultiPoly::zero(nvars), |acc, (i, &e)| &acc + &MultiPoly::var(nvars, offset + i).scale(e as i64))
    };
    let mut equations = vec![linear(t0.parts(), 0), linear(t1.parts(), r)];

    let p = expand(nvars, t0.parts(), 0);
    let q = expand(nvars, t1.parts(), r);
    let one = MultiPoly::constant(nvars, 1);
    for k in (0..=n - 2).rev() {
        let mut f = &p[k] - &q[k];
        if k == 0 {
            f = &f - &one;
        }
        equations.push(f);
    }
    Ok(TwoCritEquations { degree: n, m: t0.parts().to_vec(), nk: t1.parts().to_vec(), names, equations })
}

impl TwoCritEquations {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn beta_count(&self) -> usize {
        self.m.len()
    }

    pub fn gamma_count(&self) -> usize {
        self.nk.len()
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }
}

impl fmt::Display for TwoCritEquations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.equations.iter().enumerate() {
            writeln!(f, "F{} = {}", i + 1, e.display_with(&self.names))?;
        }
        Ok(())
    }
}

/// Whether `(β, γ)` satisfies every equation exactly.
pub fn verify_point(eqs: &TwoCritEquations, beta: &[NfElement], gamma: &[NfElement]) -> Result<bool, TwoCritError> {
    if beta.len() != eqs.beta_count() {
        return Err(TwoCritError::Arity(eqs.beta_count(), beta.len()));
    }
    if gamma.len() != eqs.gamma_count() {
        return Err(TwoCritError::Arity(eqs.gamma_count(), gamma.len()));
    }
    let point: Vec<NfElement> = beta.iter().chain(gamma).cloned().collect();
    if point.iter().any(|x| !x.same_field(&point[0])) {
        return Err(TwoCritError::FieldMismatch);
    }
    Ok(eqs.equations.iter().all(|e| e.eval(&point).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat, NumberField, Polynomial};

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn cubic_system() {
        let e = build_equations(3, &ct("2,1"), &ct("2,1")).unwrap();
        assert_eq!(e.variable_names().len(), 4);
        assert_eq!(e.equations().len(), 4);
        let text = e.to_string();
        assert!(text.starts_with("F1 = 2*beta1 + beta2\nF2 = 2*gamma1 + gamma2\n"), "{text}");

        // b^3 = 1/4, β = (b, -2b), γ = (-b, 2b)
        let k = NumberField::new(Polynomial::new(vec![rat(-1, 4), int(0), int(0), int(1)])).unwrap();
        let b = k.generator();
        let two = k.int(2);
        let beta = [b.clone(), -&(&two * &b)];
        let gamma = [-&b, &two * &b];
        assert!(verify_point(&e, &beta, &gamma).unwrap());
        let zero = [k.zero(), k.zero()];
        assert!(!verify_point(&e, &zero, &zero).unwrap());
        let bumped = [&b + &k.one(), -&(&two * &b)];
        assert!(!verify_point(&e, &bumped, &gamma).unwrap());
    }

    #[test]
    fn quadratic_sanity_system() {
        // P = z^2, P - 1 = (z - 1)(z + 1)
        let e = build_equations(2, &ct("2"), &ct("1,1")).unwrap();
        assert_eq!(e.equations().len(), 3);
        let q = NumberField::rationals();
        assert!(verify_point(&e, &[q.zero()], &[q.one(), q.int(-1)]).unwrap());
        assert!(verify_point(&e, &[q.zero()], &[q.one()]).is_err());
    }

    #[test]
    fn degree_seven_shape() {
        let e = build_equations(7, &ct("2,2,1,1,1"), &ct("3,2,2")).unwrap();
        assert_eq!((e.beta_count(), e.gamma_count()), (5, 3));
        assert_eq!(e.equations().len(), 8);
        assert!(matches!(build_equations(3, &ct("1,1,1"), &ct("1,1,1")), Err(TwoCritError::Unbalanced(6, 4))));
    }
}
