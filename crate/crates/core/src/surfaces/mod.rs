//! Surfaces `S = (C_1 × C_2)/G` with `G` acting diagonally, where each
//! `C_i → C_i/G ≅ P¹` is the regular cover given by a spherical system.
//!
//! Covers freeness, the numerical invariants, surface-group epimorphisms
//! and a Reidemeister–Schreier presentation of `π_1(S)` as a finite-index
//! subgroup of a product of polygonal groups.

mod presentation;

pub use presentation::{
    abelianization, free_reduce, invert_word, presentation_from_images, FiberProductPresentation, Word,
};

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cover::{regular_cover, CoverError};
use crate::perm::{generate, simultaneous_conjugator, PermError, PermGroup, Permutation};
use crate::spherical::{hurwitz_classify, stabilizer_set, SphericalError, SphericalSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Spherical(#[from] SphericalError),
    #[error("systems belong to different groups")]
    GroupMismatch,
    #[error("polygonal type needs at least 3 orders, each at least 2")]
    BadType,
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("{0} is not an integer")]
    NotIntegral(String),
    #[error("diagonal action is not free")]
    NotFree,
    #[error("genus g' must be at least 2 with g' images")]
    BadGenus,
}

/// `T(r_1, ..., r_n) = ⟨x_1, ..., x_{n−1} | x_i^{r_i}, (x_1 ⋯ x_{n−1})^{r_n}⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolygonalGroupData {
    orders: Vec<u64>,
}

impl PolygonalGroupData {
    pub fn new(orders: Vec<u64>) -> Result<Self, SurfaceError> {
        if orders.len() < 3 || orders.iter().any(|&r| r < 2) {
            return Err(SurfaceError::BadType);
        }
        Ok(PolygonalGroupData { orders })
    }

    /// The type realized by a system, in entry order.
    pub fn of_system(s: &SphericalSystem) -> Result<Self, SurfaceError> {
        Self::new(s.orders())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len() - 1
    }
}

impl fmt::Display for PolygonalGroupData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.orders.iter().map(u64::to_string).collect();
        write!(f, "T({})", s.join(","))
    }
}

/// Two spherical systems of one group and the genera of their curves.
#[derive(Clone, Debug)]
pub struct ProductQuotientData {
    group: Arc<PermGroup>,
    system1: SphericalSystem,
    system2: SphericalSystem,
    genus1: u64,
    genus2: u64,
}

impl ProductQuotientData {
    pub fn new(system1: SphericalSystem, system2: SphericalSystem) -> Result<Self, SurfaceError> {
        if system1.group() != system2.group() {
            return Err(SurfaceError::GroupMismatch);
        }
        let group = system1.group().clone();
        let genus1 = regular_cover(group.clone(), system1.entries().to_vec())?.genus()?;
        let genus2 = regular_cover(group.clone(), system2.entries().to_vec())?.genus()?;
        Ok(ProductQuotientData { group, system1, system2, genus1, genus2 })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn system1(&self) -> &SphericalSystem {
        &self.system1
    }

    pub fn system2(&self) -> &SphericalSystem {
        &self.system2
    }

    pub fn genera(&self) -> (u64, u64) {
        (self.genus1, self.genus2)
    }
}

/// The diagonal action is free iff no nontrivial element has fixed points
/// on both curves.
pub fn diagonal_action_free(d: &ProductQuotientData) -> bool {
    stabilizer_set(&d.system1).is_disjoint(&stabilizer_set(&d.system2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub euler: i64,
    pub chi: i64,
    pub ksquared: i64,
}

/// `e = 4(g_1 − 1)(g_2 − 1)/|G|`, `χ = e/4`, `K² = 8χ`.
pub fn invariants_from_genera(g1: u64, g2: u64, order: usize) -> Result<SurfaceInvariants, SurfaceError> {
    let num = 4 * (g1 as i64 - 1) * (g2 as i64 - 1);
    let order = order as i64;
    if num % order != 0 {
        return Err(SurfaceError::NotIntegral(format!("{num}/{order}")));
    }
    let euler = num / order;
    if euler % 4 != 0 {
        return Err(SurfaceError::NotIntegral(format!("{euler}/4")));
    }
    Ok(SurfaceInvariants { euler, chi: euler / 4, ksquared: 2 * euler })
}

pub fn surface_invariants(d: &ProductQuotientData) -> Result<SurfaceInvariants, SurfaceError> {
    if !diagonal_action_free(d) {
        return Err(SurfaceError::NotFree);
    }
    invariants_from_genera(d.genus1, d.genus2, d.group.order())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpimorphismData {
    /// The surface relator `Π [α_i, β_i]` maps to the identity.
    pub relator_killed: bool,
    /// The images generate the target group.
    pub surjective: bool,
    pub image_order: usize,
}

/// The map from the genus-`g'` surface group sending `α_i` and `β_i` to
/// `images[i]`. Every commutator `[λ_i, λ_i]` is trivial, so the surface
/// relator is killed; this is rechecked by evaluating it.
pub fn surface_group_epimorphism(
    gprime: usize,
    images: &[Permutation],
    target: &PermGroup,
) -> Result<EpimorphismData, SurfaceError> {
    if gprime < 2 || images.len() != gprime {
        return Err(SurfaceError::BadGenus);
    }
    if !images.iter().all(|p| target.contains(p)) {
        return Err(SurfaceError::TypeMismatch("image outside the target group".into()));
    }
    let relator = images.iter().fold(target.identity(), |acc, l| {
        let (a, b) = (l, l);
        acc.then(a).then(b).then(&a.inverse()).then(&b.inverse())
    });
    let image_order = generate(images)?.order();
    Ok(EpimorphismData {
        relator_killed: relator.is_identity(),
        surjective: image_order == target.order(),
        image_order,
    })
}

pub fn fiber_product_presentation(
    t1: &PolygonalGroupData,
    s1: &SphericalSystem,
    t2: &PolygonalGroupData,
    s2: &SphericalSystem,
) -> Result<FiberProductPresentation, SurfaceError> {
    if s1.group() != s2.group() {
        return Err(SurfaceError::GroupMismatch);
    }
    for (t, s) in [(t1, s1), (t2, s2)] {
        if t.orders() != s.orders().as_slice() {
            return Err(SurfaceError::TypeMismatch(format!("{t} vs orders {:?}", s.orders())));
        }
    }
    let k1 = t1.generator_count();
    let k2 = t2.generator_count();
    presentation_from_images(s1.group(), t1, &s1.entries()[..k1], t2, &s2.entries()[..k2])
}

/// Data of `1 → Π_{g1} × Π_{g2} → π_1(S) → G → 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi1Report {
    pub kernel_genera: (u64, u64),
    pub quotient_order: usize,
    pub types: (Vec<u64>, Vec<u64>),
    pub free: bool,
}

impl Pi1Report {
    pub fn sequence(&self) -> String {
        format!(
            "1 -> Pi_{} x Pi_{} -> pi_1(S) -> G -> 1, |G| = {}",
            self.kernel_genera.0, self.kernel_genera.1, self.quotient_order
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kernel_genera": [self.kernel_genera.0, self.kernel_genera.1],
            "quotient_order": self.quotient_order,
            "types": [self.types.0, self.types.1],
            "free": self.free,
            "sequence": self.sequence(),
        })
    }
}

pub fn pi1_exact_sequence_report(d: &ProductQuotientData) -> Result<Pi1Report, SurfaceError> {
    let free = diagonal_action_free(d);
    if !free {
        return Err(SurfaceError::NotFree);
    }
    Ok(Pi1Report {
        kernel_genera: d.genera(),
        quotient_order: d.group.order(),
        types: (d.system1.orders(), d.system2.orders()),
        free,
    })
}

/// How two surfaces built on the same second system differ in their first
/// systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemComparison {
    pub simultaneously_conjugate: bool,
    pub same_braid_orbit: bool,
    pub same_ambient_class: bool,
}

/// Compares the first systems of `a` and `b` at every granularity, with
/// conjugation taken in `ambient`.
pub fn compare_first_systems(
    a: &ProductQuotientData,
    b: &ProductQuotientData,
    ambient: &PermGroup,
) -> Result<SystemComparison, SurfaceError> {
    let (s, t) = (&a.system1, &b.system1);
    let conj = simultaneous_conjugator(s.entries(), t.entries(), Some(ambient))?.is_some();
    let c = hurwitz_classify(&[s.clone(), t.clone()], Some(ambient))?;
    Ok(SystemComparison {
        simultaneously_conjugate: conj,
        same_braid_orbit: c.braid.len() == 1,
        same_ambient_class: c.ambient.len() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::hurwitz_neighbors;

    fn p3(s: &str) -> Permutation {
        Permutation::parse_cycles(s, 3).unwrap()
    }

    fn s3_pair() -> (SphericalSystem, SphericalSystem) {
        let g = Arc::new(PermGroup::symmetric(3));
        let s1 = SphericalSystem::new(g.clone(), vec![p3("(1,2)"), p3("(2,3)"), p3("(1,2,3)")]).unwrap();
        let s2 = SphericalSystem::new(g, vec![p3("(1,2)"), p3("(1,2)"), p3("(2,3)"), p3("(2,3)")]).unwrap();
        (s1, s2)
    }

    fn present(s1: &SphericalSystem, s2: &SphericalSystem) -> FiberProductPresentation {
        let t1 = PolygonalGroupData::of_system(s1).unwrap();
        let t2 = PolygonalGroupData::of_system(s2).unwrap();
        fiber_product_presentation(&t1, s1, &t2, s2).unwrap()
    }

    #[test]
    fn invariants() {
        let i = invariants_from_genera(241, 505, 2520).unwrap();
        assert_eq!((i.euler, i.chi, i.ksquared), (192, 48, 384));
        let i = invariants_from_genera(2, 2, 1).unwrap();
        assert_eq!((i.euler, i.chi, i.ksquared), (4, 1, 8));
        assert!(invariants_from_genera(3, 3, 5).is_err());
    }

    #[test]
    fn freeness() {
        let (s1, s2) = s3_pair();
        let d = ProductQuotientData::new(s1.clone(), s1.clone()).unwrap();
        assert!(!diagonal_action_free(&d));
        assert!(surface_invariants(&d).is_err());
        // every element of S3 has prime order 2 or 3, and both systems
        // contain transpositions, so this pair is not free either
        assert!(!diagonal_action_free(&ProductQuotientData::new(s1, s2).unwrap()));
    }

    fn z5_squared() -> (SphericalSystem, SphericalSystem) {
        let a = Permutation::parse_cycles("(1,2,3,4,5)", 10).unwrap();
        let b = Permutation::parse_cycles("(6,7,8,9,10)", 10).unwrap();
        let g = Arc::new(generate(&[a.clone(), b.clone()]).unwrap());
        let e = |i: i64, j: i64| a.pow(i).then(&b.pow(j));
        let s1 = SphericalSystem::new(g.clone(), vec![e(1, 0), e(0, 1), e(4, 4)]).unwrap();
        let s2 = SphericalSystem::new(g, vec![e(1, 2), e(3, 4), e(1, 4)]).unwrap();
        (s1, s2)
    }

    #[test]
    fn z5_squared_is_free() {
        let (s1, s2) = z5_squared();
        let d = ProductQuotientData::new(s1.clone(), s2.clone()).unwrap();
        assert_eq!(d.genera(), (6, 6));
        assert!(diagonal_action_free(&d));
        let i = surface_invariants(&d).unwrap();
        assert_eq!((i.euler, i.chi, i.ksquared), (4, 1, 8));
        let r = pi1_exact_sequence_report(&d).unwrap();
        assert_eq!(r.sequence(), "1 -> Pi_6 x Pi_6 -> pi_1(S) -> G -> 1, |G| = 25");
        let p = present(&s1, &s2);
        assert_eq!(p.generator_count(), 25 * 4 - 24);
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank(), 0);
        assert!(!ab.torsion().is_empty());
    }

    #[test]
    fn epimorphisms() {
        let s3 = PermGroup::symmetric(3);
        let e = surface_group_epimorphism(3, &[p3("(1,2)"), p3("(2,3)"), p3("()")], &s3).unwrap();
        assert!(e.relator_killed && e.surjective);
        let e = surface_group_epimorphism(2, &[p3("()"), p3("()")], &s3).unwrap();
        assert!(e.relator_killed && !e.surjective);
        assert!(surface_group_epimorphism(1, &[p3("()")], &s3).is_err());
    }

    #[test]
    fn s3_presentation_counts() {
        let (s1, s2) = s3_pair();
        let p = present(&s1, &s2);
        assert_eq!(p.coset_count(), 6);
        let k = 2 + 3;
        assert_eq!(p.original_generator_count(), k);
        assert_eq!(p.generator_count(), 6 * k - 5);
        // (3 + 4 power relators + 2*3 commutators) per coset
        assert_eq!(p.relator_count(), 6 * 13);
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank(), 0);
    }

    #[test]
    fn rewriting_expands_to_conjugated_relators() {
        let (s1, s2) = s3_pair();
        let p = present(&s1, &s2);
        for (c, ri, w) in p.relators() {
            let t = p.transversal(*c);
            let mut conj = t.to_vec();
            conj.extend(&p.original_relators()[*ri]);
            conj.extend(invert_word(t));
            assert_eq!(p.expand(w), free_reduce(&conj));
        }
    }

    #[test]
    fn abelianization_constant_on_braid_orbit() {
        let (s1, s2) = s3_pair();
        let base = abelianization(&present(&s1, &s2));
        for n in hurwitz_neighbors(&s1) {
            assert_eq!(abelianization(&present(&n, &s2)), base);
        }
        for n in hurwitz_neighbors(&s2) {
            assert_eq!(abelianization(&present(&s1, &n)), base);
        }
    }

    #[test]
    fn trivial_group_product() {
        let g = PermGroup::symmetric(1);
        let t = PolygonalGroupData::new(vec![2, 2, 2, 2]).unwrap();
        let id = vec![Permutation::identity(1); 3];
        let p = presentation_from_images(&g, &t, &id, &t, &id).unwrap();
        assert_eq!((p.coset_count(), p.generator_count()), (1, 6));
        let ab = abelianization(&p);
        assert_eq!(ab.torsion().len(), 6);
        assert!(ab.torsion().iter().all(|d| d == &2.into()));
        assert_eq!(ab.free_rank(), 0);
        assert!(p.to_string().starts_with("< x1_0, x2_0, x3_0, y1_0, y2_0, y3_0 | x1_0^2, "));
    }
}
