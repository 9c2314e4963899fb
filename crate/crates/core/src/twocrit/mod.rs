//! Polynomials with two finite critical values, studied through their
//! monodromy `(σ_0, σ_1)` over `0` and `1` and through the equations
//! satisfied by their roots.

mod equations;

pub use equations::{build_equations, verify_point, TwoCritEquations};

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::ExactError;
use crate::perm::{centralizer, generate, simultaneous_conjugator, CycleType, PermError, PermGroup, Permutation};
use crate::spherical::{SphericalError, SphericalSystem};

/// Largest degree accepted by [`enumerate_classes`].
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoCritError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("monodromy at infinity is {0}, not a full cycle")]
    NotFullCycle(String),
    #[error("cycle type {0} is not a partition of {1}")]
    WrongDegree(String, usize),
    #[error("degree {0} exceeds the cap {1}")]
    DegreeCap(usize, usize),
    #[error("types give {0} unknowns, expected n + 1 = {1}")]
    Unbalanced(usize, usize),
    #[error("expected {0} coordinates, got {1}")]
    Arity(usize, usize),
    #[error("coordinates live in different number fields")]
    FieldMismatch,
}

/// Monodromy of a polynomial of degree `n` with finite critical values in
/// `{0, 1}`: `σ_∞ = (σ_0 σ_1)⁻¹` is an `n`-cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyMonodromy {
    s0: Permutation,
    s1: Permutation,
    sinf: Permutation,
}

impl PolyMonodromy {
    pub fn new(s0: Permutation, s1: Permutation) -> Result<Self, TwoCritError> {
        let sinf = s0.compose(&s1)?.inverse();
        if sinf.cycle_type().parts() != [s0.degree()] {
            return Err(TwoCritError::NotFullCycle(sinf.to_string()));
        }
        Ok(PolyMonodromy { s0, s1, sinf })
    }

    pub fn degree(&self) -> usize {
        self.s0.degree()
    }

    pub fn sigma0(&self) -> &Permutation {
        &self.s0
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.s1
    }

    pub fn sigma_infinity(&self) -> &Permutation {
        &self.sinf
    }

    /// `(σ_0⁻¹, σ_1⁻¹)`, the monodromy of the complex conjugate polynomial.
    pub fn inverse_pair(&self) -> PolyMonodromy {
        PolyMonodromy::new(self.s0.inverse(), self.s1.inverse()).expect("inverse of a full cycle is a full cycle")
    }
}

/// A class of monodromies under simultaneous conjugation in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyClass {
    /// Lexicographically least `(σ_0, σ_1)` in the class.
    pub representative: PolyMonodromy,
    /// Number of ordered pairs in the class.
    pub size: usize,
    /// Fixed by `(σ_0, σ_1) ↦ (σ_0⁻¹, σ_1⁻¹)` up to conjugation.
    pub real: bool,
}

fn check_type(t: &CycleType, n: usize) -> Result<(), TwoCritError> {
    if t.degree() != n {
        return Err(TwoCritError::WrongDegree(t.to_string(), n));
    }
    Ok(())
}

/// All conjugacy classes of pairs with the given cycle types and an
/// `n`-cycle at infinity, sorted by representative.
///
/// `σ_0` is pinned to the least permutation of type `t0`; the remaining
/// freedom is the centralizer of `σ_0` acting on the candidates for `σ_1`.
pub fn enumerate_classes(n: usize, t0: &CycleType, t1: &CycleType) -> Result<Vec<MonodromyClass>, TwoCritError> {
    check_type(t0, n)?;
    check_type(t1, n)?;
    if n > MAX_DEGREE {
        return Err(TwoCritError::DegreeCap(n, MAX_DEGREE));
    }
    let sn = PermGroup::symmetric(n);
    let s0 = t0.least_permutation();
    let candidates: Vec<Permutation> = sn
        .elements()
        .par_iter()
        .filter(|s1| &s1.cycle_type() == t1 && s0.then(s1).cycle_type().parts() == [n])
        .cloned()
        .collect();
    let index: HashMap<&Permutation, usize> = candidates.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let cent = centralizer(std::slice::from_ref(&s0), None)?;
    let class0 = sn.order() / cent.len();

    let mut orbit_of = vec![usize::MAX; candidates.len()];
    let mut orbits: Vec<(usize, usize)> = Vec::new(); // (least member index, size)
    for i in 0..candidates.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut size = 0;
        for c in &cent {
            let j = index[&candidates[i].conjugate_by(c)];
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = id;
                size += 1;
            }
        }
        // candidates are sorted, so `i` is the least member
        orbits.push((i, size));
    }

    // conjugating σ_0⁻¹ back to σ_0 carries σ_1⁻¹ into the candidate list
    let back = simultaneous_conjugator(&[s0.inverse()], std::slice::from_ref(&s0), None)?
        .expect("a permutation is conjugate to its inverse");
    Ok(orbits
        .iter()
        .enumerate()
        .map(|(id, &(i, size))| {
            let s1 = &candidates[i];
            let mirror = s1.inverse().conjugate_by(&back);
            MonodromyClass {
                representative: PolyMonodromy::new(s0.clone(), s1.clone()).expect("filtered"),
                size: size * class0,
                real: orbit_of[index[&mirror]] == id,
            }
        })
        .collect())
}

/// The classes fixed by inversion.
pub fn real_classes(classes: &[MonodromyClass]) -> Vec<MonodromyClass> {
    classes.iter().filter(|c| c.real).cloned().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub order: usize,
    pub is_alternating: bool,
    pub is_symmetric: bool,
}

pub fn monodromy_group_check(c: &PolyMonodromy) -> Result<GroupCheck, TwoCritError> {
    let g = generate(&[c.s0.clone(), c.s1.clone()])?;
    Ok(GroupCheck { order: g.order(), is_alternating: g.is_alternating(), is_symmetric: g.is_symmetric() })
}

/// `(σ_0, σ_1, σ_∞)` as a spherical system of the monodromy group: the
/// branch data of the normal closure.
pub fn closure_triangle_system(c: &PolyMonodromy) -> Result<SphericalSystem, TwoCritError> {
    let g = Arc::new(generate(&[c.s0.clone(), c.s1.clone()])?);
    let entries: Vec<Permutation> = [&c.s0, &c.s1, &c.sinf].into_iter().filter(|p| !p.is_identity()).cloned().collect();
    Ok(SphericalSystem::new(g, entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    fn brute_force_pairs(n: usize, t0: &CycleType, t1: &CycleType) -> usize {
        let sn = PermGroup::symmetric(n);
        let of = |t: &CycleType| sn.elements().iter().filter(|p| &p.cycle_type() == t).cloned().collect::<Vec<_>>();
        let (a, b) = (of(t0), of(t1));
        a.iter().map(|x| b.iter().filter(|y| x.then(y).cycle_type().parts() == [n]).count()).sum()
    }

    #[test]
    fn degree_three() {
        let cl = enumerate_classes(3, &ct("2,1"), &ct("2,1")).unwrap();
        assert_eq!(cl.len(), 1);
        assert_eq!(cl[0].size, 6);
        assert!(cl[0].real);
        let g = monodromy_group_check(&cl[0].representative).unwrap();
        assert_eq!((g.order, g.is_symmetric), (6, true));
        let s = closure_triangle_system(&cl[0].representative).unwrap();
        assert_eq!(s.unordered_type().orders(), &[2, 2, 3]);
    }

    #[test]
    fn degenerate_cases() {
        assert!(enumerate_classes(2, &ct("2"), &ct("2")).unwrap().is_empty());
        let t = Permutation::parse_cycles("(1,2)", 2).unwrap();
        assert!(matches!(PolyMonodromy::new(t.clone(), t), Err(TwoCritError::NotFullCycle(_))));
        assert!(enumerate_classes(3, &ct("2,1"), &ct("2,2")).is_err());
    }

    #[test]
    fn sizes_partition_pairs() {
        for (n, a, b) in [(4, "2,1,1", "3,1"), (5, "2,2,1", "3,1,1"), (5, "2,1,1,1", "4,1"), (6, "2,2,1,1", "3,2,1")] {
            let (t0, t1) = (ct(a), ct(b));
            let cl = enumerate_classes(n, &t0, &t1).unwrap();
            let total: usize = cl.iter().map(|c| c.size).sum();
            assert_eq!(total, brute_force_pairs(n, &t0, &t1), "n={n} {a} {b}");
            for c in &cl {
                let r = &c.representative;
                assert!(r.sigma0().then(r.sigma1()).then(r.sigma_infinity()).is_identity());
            }
        }
    }

    #[test]
    fn some_class_is_not_real() {
        // r + s = n + 1 with n = 6 means 7 cycles in total
        let parts = ["3,2,1", "2,2,1,1", "4,1,1", "3,1,1,1", "2,1,1,1,1", "3,3", "4,2", "5,1", "2,2,2"];
        let mut found = false;
        for a in parts {
            for b in parts {
                let (t0, t1) = (ct(a), ct(b));
                if t0.cycle_count() + t1.cycle_count() != 7 {
                    continue;
                }
                let cl = enumerate_classes(6, &t0, &t1).unwrap();
                let real = real_classes(&cl);
                assert_eq!(real_classes(&real), real);
                found |= real.len() < cl.len();
            }
        }
        assert!(found);
    }
}
