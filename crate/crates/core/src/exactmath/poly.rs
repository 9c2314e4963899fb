use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{exact_string, Rational};
use super::ExactError;

/// Dense univariate polynomial with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`; trailing zeros are always trimmed,
/// so the zero polynomial has an empty coefficient list and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading().recip();
        self.scale(&lc)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let inv_lc = divisor.leading().recip();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial, ExactError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
        let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| &(&acc * inner) + &Polynomial::constant(c.clone()))
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd of nonzero polynomial").0.monic()
    }

    /// Integer multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        for c in ints.iter_mut() {
            *c = &*c / &g * &sign;
        }
        ints
    }

    /// All distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_constant() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        // strip x^k
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            let k = p.coeffs.iter().take_while(|c| c.is_zero()).count();
            p = Polynomial::new(p.coeffs[k..].to_vec());
        }
        if !p.is_constant() {
            let ints = p.primitive_integer();
            let a0 = ints[0].abs();
            let an = ints.last().unwrap().abs();
            let nums = divisors(&a0);
            let dens = divisors(&an);
            for n in &nums {
                for d in &dens {
                    for sign in [1i32, -1] {
                        let cand = Rational::new(n * BigInt::from(sign), d.clone());
                        if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Irreducibility over the rationals.
    ///
    /// Degrees up to 3 use the rational root test. Higher degrees run
    /// Kronecker's interpolation search for a factor of degree at most
    /// `deg / 2`, which is exponential in the degree; inputs above degree 8
    /// are rejected.
    pub fn is_irreducible(&self) -> Result<bool, ExactError> {
        let Some(d) = self.degree() else {
            return Ok(false);
        };
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        if !self.rational_roots().is_empty() {
            return Ok(false);
        }
        if d <= 3 {
            return Ok(true);
        }
        if d > 8 {
            return Err(ExactError::DegreeTooLarge(d));
        }
        let ints = self.primitive_integer();
        Ok(!kronecker_has_factor(&ints, d))
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&exact_string(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", exact_string(&a), mono));
            }
        }
        out
    }

    /// Parses expressions like `x^2-2`, `3/2*x^3 + x - 1/4` or `2y^2+y`.
    /// Any single ASCII letter is accepted as the variable, used consistently.
    pub fn parse(s: &str) -> Result<Polynomial, ExactError> {
        let bad = || ExactError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut var: Option<char> = None;
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            let prev_is_caret = i > 0 && compact[..i].ends_with('^');
            if (ch == '+' || ch == '-') && !cur.is_empty() && !prev_is_caret {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut result = Polynomial::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let letter_pos = body.find(|c: char| c.is_ascii_alphabetic());
            let (coef, deg) = match letter_pos {
                None => (super::rational::parse_rational(body).ok_or_else(bad)?, 0usize),
                Some(p) => {
                    let v = body[p..].chars().next().unwrap();
                    if *var.get_or_insert(v) != v {
                        return Err(bad());
                    }
                    let c_str = body[..p].trim_end_matches('*');
                    let coef = if c_str.is_empty() {
                        Rational::one()
                    } else {
                        super::rational::parse_rational(c_str).ok_or_else(bad)?
                    };
                    let rest = &body[p + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?
                    };
                    (coef, deg)
                }
            };
            let coef = if sign < 0 { -coef } else { coef };
            result = &result + &Polynomial::monomial(coef, deg);
        }
        Ok(result)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Kronecker: a factor of degree `k` is determined by its values at `k + 1`
/// integer points, each of which divides the value of `f` there.
fn kronecker_has_factor(f: &[BigInt], d: usize) -> bool {
    let fp = Polynomial::new(f.iter().map(|c| Rational::from_integer(c.clone())).collect());
    let mut points: Vec<i64> = Vec::new();
    let mut values: Vec<BigInt> = Vec::new();
    let mut x = 0i64;
    // no rational roots, so f(x) != 0 at integers
    while points.len() <= d / 2 {
        let v = fp.eval(&Rational::from_integer(x.into())).to_integer();
        points.push(x);
        values.push(v);
        x = if x <= 0 { -x + 1 } else { -x };
    }
    for k in 2..=d / 2 {
        let pts = &points[..=k];
        let choices: Vec<Vec<BigInt>> = values[..=k]
            .iter()
            .map(|v| {
                let ds = divisors(v);
                ds.iter().flat_map(|q| [q.clone(), -q.clone()]).collect()
            })
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let vals: Vec<Rational> =
                idx.iter().enumerate().map(|(i, &j)| Rational::from_integer(choices[i][j].clone())).collect();
            let g = interpolate(pts, &vals);
            if g.degree() == Some(k) && g.coeffs.iter().all(|c| c.is_integer()) {
                if let Ok((_, r)) = fp.div_rem(&g) {
                    if r.is_zero() {
                        return true;
                    }
                }
            }
            let mut pos = 0;
            loop {
                if pos > k {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos > k {
                break;
            }
        }
    }
    false
}

fn interpolate(xs: &[i64], ys: &[Rational]) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (i, (&xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Polynomial::one();
        let mut denom = Rational::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &Polynomial::linear_root(&Rational::from_integer(xj.into()));
                denom *= Rational::from_integer((xi - xj).into());
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

impl FromStr for Polynomial {
    type Err = ExactError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Polynomial::parse(s)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
