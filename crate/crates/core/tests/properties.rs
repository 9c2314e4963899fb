use std::sync::Arc;

use dessins::belyi::{build_belyi, exponent_data, verify_chain};
use dessins::cover::{coset_action, galois_closure, MonodromyMap};
use dessins::exactmath::{
    discriminant_in_z, int, nf_invert, poly_resultant, rat, smith_normal_form, BivariatePolynomial, IntegerMatrix,
    NumberField, Polynomial, Rational,
};
use dessins::perm::{simultaneous_conjugator, PermGroup, Permutation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn small_poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 1..=max_degree + 1).prop_map(|c| Polynomial::from_ints(&c))
}

/// Determinant by rational Gaussian elimination.
fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else { return Rational::zero() };
        if p != col {
            m.swap(p, col);
            d = -d;
        }
        d *= m[col][col].clone();
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let f = &row[col] / &pivot[col];
            for (x, p) in row.iter_mut().zip(pivot).skip(col) {
                *x -= p * &f;
            }
        }
    }
    d
}

fn sylvester_resultant(p: &Polynomial, q: &Polynomial) -> Rational {
    let (m, n) = (p.degree().unwrap(), q.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::new();
    for (poly, deg, copies) in [(p, m, n), (q, n, m)] {
        for i in 0..copies {
            let mut row = vec![Rational::zero(); size];
            for k in 0..=deg {
                row[i + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    det(rows)
}

fn minors_gcd(m: &[Vec<i64>], k: usize) -> BigInt {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut g = BigInt::zero();
    for rows in subsets(m.len(), k) {
        for cols in subsets(m[0].len(), k) {
            let sub = rows.iter().map(|&r| cols.iter().map(|&c| int(m[r][c])).collect()).collect();
            let d = det(sub).to_integer();
            g = num_integer::Integer::gcd(&g, &d);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_sylvester_and_gcd(p in small_poly(4), q in small_poly(4)) {
        prop_assume!(p.degree().is_some() && q.degree().is_some());
        let r = poly_resultant(&p, &q).unwrap();
        prop_assert_eq!(&r, &sylvester_resultant(&p, &q));
        prop_assert_eq!(r.is_zero(), p.gcd(&q).degree().unwrap_or(0) > 0);
    }

    #[test]
    fn discriminant_specializes(h in small_poly(4), ys in prop::collection::vec((-30i64..=30, 1i64..=4), 50)) {
        prop_assume!(h.degree().unwrap_or(0) >= 2);
        let d = discriminant_in_z(&BivariatePolynomial::minus_y(&h)).unwrap();
        let oracle = |y0: &Rational| {
            let f = &h - &Polynomial::constant(y0.clone());
            sylvester_resultant(&f, &f.derivative())
        };
        // both sides are polynomials in y0 that agree up to a constant factor
        let base = (0..).map(int).find(|y| !d.eval(y).is_zero()).unwrap();
        for (a, b) in ys {
            let y0 = rat(a, b);
            prop_assert_eq!(d.eval(&y0) * oracle(&base), d.eval(&base) * oracle(&y0));
        }
    }

    #[test]
    fn nf_inverse_is_an_involution(which in 0usize..4, coeffs in prop::collection::vec(-5i64..=5, 1..4)) {
        let moduli = [vec![-2, 0, 1], vec![-2, 0, 0, 1], vec![-1, -1, 0, 1], vec![1, 0, 0, 0, 1]];
        let k = NumberField::new(Polynomial::from_ints(&moduli[which])).unwrap();
        let e = k.element(Polynomial::from_ints(&coeffs));
        prop_assume!(!e.is_zero());
        let inv = nf_invert(&e).unwrap();
        prop_assert_eq!(&(&e * &inv), &k.one());
        prop_assert_eq!(nf_invert(&inv).unwrap(), e);
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-3i64..=3, 16),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * 4..r * 4 + cols].to_vec()).collect();
        let s = smith_normal_form(&IntegerMatrix::from_dense(&m));
        for w in s.diagonal.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        let mut acc = BigInt::one();
        for k in 1..=rows.min(cols) {
            let g = minors_gcd(&m, k);
            if k <= s.rank {
                acc *= &s.diagonal[k - 1];
                prop_assert_eq!(&acc, &g);
            } else {
                prop_assert!(g.is_zero());
            }
        }
        if rows == cols && s.rank == rows {
            let d: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            prop_assert_eq!(Rational::from_integer(s.torsion_order()), det(d).abs());
        }
    }

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
    }

    #[test]
    fn cycle_type_is_a_class_invariant(a in perm(8), c in perm(8)) {
        prop_assert_eq!(a.conjugate_by(&c).cycle_type(), a.cycle_type());
    }

    #[test]
    fn simultaneous_conjugator_agrees_with_brute_force(
        n in 2usize..=5,
        seed in prop::collection::vec(any::<prop::sample::Index>(), 5),
        conjugate in any::<bool>(),
    ) {
        let sn = PermGroup::symmetric(n);
        let pick = |i: usize| seed[i].get(sn.elements()).clone();
        let a = vec![pick(0), pick(1)];
        let b = if conjugate {
            let c = pick(2);
            a.iter().map(|x| x.conjugate_by(&c)).collect()
        } else {
            vec![pick(3), pick(4)]
        };
        let brute = sn.elements().iter().any(|c| a.iter().zip(&b).all(|(x, y)| &x.conjugate_by(c) == y));
        let found = simultaneous_conjugator(&a, &b, None).unwrap();
        prop_assert_eq!(found.is_some(), brute);
        if let Some(c) = found {
            prop_assert!(a.iter().zip(&b).all(|(x, y)| &x.conjugate_by(&c) == y));
        }
    }

    #[test]
    fn exponent_identity_on_random_sets(vals in prop::collection::btree_set((-20i64..=20, 1i64..=6), 1..8)) {
        let mut r: Vec<Rational> = vals.into_iter().map(|(p, q)| rat(p, q)).collect();
        r.sort();
        r.dedup();
        let d = exponent_data(&r).unwrap();
        prop_assert_eq!(d.identity_lhs(), Polynomial::constant(Rational::from_integer(d.n.clone())));
        prop_assert!(d.n.is_positive());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn stabilizer_quotient_recovers_the_cover((a, b) in (2usize..=6).prop_flat_map(|n| (perm(n), perm(n)))) {
        prop_assume!(MonodromyMap::from_pair(&a, &b).is_ok());
        let m = MonodromyMap::from_pair(&a, &b).unwrap();
        let closure = galois_closure(&m).unwrap();
        let h = closure.group().point_stabilizer(0);
        let q = coset_action(&closure, &h).unwrap();
        prop_assert_eq!(q.degree(), m.degree());
        prop_assert!(q.equivalent(&m));
    }
}

#[test]
fn lagrange_in_a7() {
    use rand::{Rng, SeedableRng};
    let a7 = PermGroup::alternating(7);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let x = a7.elements()[rng.gen_range(0..a7.order())].clone();
        let y = a7.elements()[rng.gen_range(0..a7.order())].clone();
        assert_eq!(2520 % x.order(), 0);
        let h = dessins::perm::generate(&[x, y]).unwrap();
        assert_eq!(2520 % h.order(), 0);
        assert!(a7.is_subgroup(h.elements()));
    }
}

#[test]
fn belyi_grid_over_quadratic_fields() {
    let mut count = 0;
    for g in [3, 4] {
        for b in -4i64..=4 {
            for c in -10i64..=10 {
                let disc = b * b - 4 * c;
                if disc.abs() > 20 || (0..=5).any(|r| r * r == disc) {
                    continue;
                }
                let p = Polynomial::from_ints(&[c, b, 1]);
                let chain = match build_belyi(g, &p) {
                    Ok(chain) => chain,
                    // a root whose branch set collides is outside the construction
                    Err(dessins::belyi::BelyiError::Curve(dessins::curves::CurveError::Collision(_))) => continue,
                    Err(e) => panic!("g={g} p={p:?}: {e}"),
                };
                assert!(chain.last_values().within_zero_one_infinity(), "g={g} b={b} c={c}");
                assert!(verify_chain(&chain).ok, "g={g} b={b} c={c}");
                count += 1;
            }
        }
    }
    assert!(count > 50, "{count}");
}

#[test]
fn regular_cover_of_trivial_images_is_rejected() {
    let g = Arc::new(PermGroup::symmetric(3));
    assert!(dessins::cover::regular_cover(g, vec![]).is_err());
}
