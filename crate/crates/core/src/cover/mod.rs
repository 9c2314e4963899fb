//! Branched covers of the line described by monodromy, their genus, normal
//! closures, coset quotients and fibre powers.
//!
//! A cover of degree `d` branched over `k` points is given by permutations
//! `μ_1, ..., μ_k` of the fibre with `μ_1 ⋯ μ_k = 1` generating a
//! transitive group.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::perm::{generate, product, PermError, PermGroup, Permutation};

/// Largest degree [`fibre_power_components`] accepts.
pub const FIBRE_POWER_MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("branch images multiply to {0}, not the identity")]
    ProductNotIdentity(String),
    #[error("monodromy group is not transitive")]
    NotTransitive,
    #[error("Riemann-Hurwitz count {0} is odd or negative")]
    BadGenus(i64),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("degree {0} exceeds the cap {1}")]
    DegreeCap(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyMap {
    degree: usize,
    images: Vec<Permutation>,
}

impl MonodromyMap {
    /// Identity images are dropped, since they mark unbranched points.
    pub fn new(degree: usize, images: Vec<Permutation>) -> Result<Self, CoverError> {
        for p in &images {
            if p.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, p.degree()).into());
            }
        }
        if let Some(prod) = product(&images) {
            if !prod.is_identity() {
                return Err(CoverError::ProductNotIdentity(prod.to_string()));
            }
        }
        let images: Vec<Permutation> = images.into_iter().filter(|p| !p.is_identity()).collect();
        if !orbit_is_everything(degree, &images) {
            return Err(CoverError::NotTransitive);
        }
        Ok(MonodromyMap { degree, images })
    }

    /// Three branch points `σ_0, σ_1, (σ_0 σ_1)⁻¹`.
    pub fn from_pair(s0: &Permutation, s1: &Permutation) -> Result<Self, CoverError> {
        let inf = s0.compose(s1)?.inverse();
        Self::new(s0.degree(), vec![s0.clone(), s1.clone(), inf])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn group(&self) -> Result<PermGroup, CoverError> {
        if self.images.is_empty() {
            return Ok(generate(&[Permutation::identity(self.degree)])?);
        }
        Ok(generate(&self.images)?)
    }

    /// Same cover up to relabeling of the fibre.
    pub fn equivalent(&self, other: &MonodromyMap) -> bool {
        self.degree == other.degree
            && self.images.len() == other.images.len()
            && (self.images.is_empty()
                || crate::perm::simultaneous_conjugator(&self.images, &other.images, None).ok().flatten().is_some())
    }
}

fn orbit_is_everything(degree: usize, gens: &[Permutation]) -> bool {
    if degree == 0 {
        return false;
    }
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == degree
}

/// Genus of the cover from Riemann–Hurwitz over a genus-0 base:
/// `2g - 2 = -2d + Σ (d - #cycles(μ_i))`.
pub fn riemann_hurwitz_genus(m: &MonodromyMap) -> Result<u64, CoverError> {
    let d = m.degree as i64;
    let ramification: i64 = m.images.iter().map(|p| d - p.cycle_type().cycle_count() as i64).sum();
    let twice = ramification - 2 * d + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(CoverError::BadGenus(twice));
    }
    Ok((twice / 2) as u64)
}

/// A regular cover: the group with the branch images as elements of it.
/// The fibre is the group itself.
#[derive(Clone, Debug)]
pub struct RegularCover {
    group: Arc<PermGroup>,
    images: Vec<Permutation>,
}

impl RegularCover {
    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    /// Branch orders, one per branch image.
    pub fn branch_orders(&self) -> Vec<u64> {
        self.images.iter().map(Permutation::order).collect()
    }

    /// The action on the fibre `G`: `μ` sends `τ` to `τ·μ`, which in
    /// composition notation is `μ ∘ τ`, the left translation. Points are
    /// numbered by position in the sorted element list.
    pub fn monodromy(&self) -> MonodromyMap {
        let images = self.images.iter().map(|a| translation(&self.group, a)).collect();
        MonodromyMap { degree: self.degree(), images }
    }

    /// Genus via the closed form `|G|/2 · (k - 2 - Σ 1/r_i) + 1`, computed
    /// in integers as `(|G|(k - 2) - Σ |G|/r_i)/2 + 1`.
    pub fn genus(&self) -> Result<u64, CoverError> {
        let n = self.degree() as i64;
        let k = self.images.len() as i64;
        let sum: i64 = self.images.iter().map(|a| n / a.order() as i64).sum();
        let twice = n * (k - 2) - sum + 2;
        if twice < 0 || twice % 2 != 0 {
            return Err(CoverError::BadGenus(twice));
        }
        Ok((twice / 2) as u64)
    }
}

fn translation(group: &PermGroup, a: &Permutation) -> Permutation {
    let images = group.elements().iter().map(|t| group.index_of(&t.then(a)).expect("group is closed") as u32).collect();
    Permutation::from_images(images).expect("translation is a bijection")
}

/// Normal closure of a cover: the monodromy group acting on itself.
pub fn galois_closure(m: &MonodromyMap) -> Result<RegularCover, CoverError> {
    Ok(RegularCover { group: Arc::new(m.group()?), images: m.images.clone() })
}

/// Regular cover from a group and branch images in it. The images must
/// multiply to one and generate the group.
pub fn regular_cover(group: Arc<PermGroup>, images: Vec<Permutation>) -> Result<RegularCover, CoverError> {
    if !images.iter().all(|a| group.contains(a)) {
        return Err(CoverError::NotSubgroup);
    }
    let prod = images.iter().fold(group.identity(), |acc, a| acc.then(a));
    if !prod.is_identity() {
        return Err(CoverError::ProductNotIdentity(prod.to_string()));
    }
    let images: Vec<Permutation> = images.into_iter().filter(|p| !p.is_identity()).collect();
    let generated = if images.is_empty() { 1 } else { generate(&images)?.order() };
    if generated != group.order() {
        return Err(CoverError::NotSubgroup);
    }
    Ok(RegularCover { group, images })
}

/// The quotient by `h`: monodromy on right cosets `Hg`, where `μ` sends `Hg`
/// to `Hg·μ`. Cosets are numbered in order of their least element.
pub fn coset_action(r: &RegularCover, h: &[Permutation]) -> Result<MonodromyMap, CoverError> {
    if !r.group.is_subgroup(h) {
        return Err(CoverError::NotSubgroup);
    }
    let mut label: HashMap<&Permutation, usize> = HashMap::new();
    let mut reps: Vec<&Permutation> = Vec::new();
    for g in r.group.elements() {
        if label.contains_key(g) {
            continue;
        }
        let id = reps.len();
        reps.push(g);
        for x in h {
            let y = r.group.index_of(&x.then(g)).unwrap();
            label.insert(&r.group.elements()[y], id);
        }
    }
    let images = r
        .images
        .iter()
        .map(|a| {
            let imgs = reps.iter().map(|g| label[&g.then(a)] as u32).collect();
            Permutation::from_images(imgs).expect("coset action is a bijection")
        })
        .collect();
    MonodromyMap::new(reps.len(), images)
}

/// Components of the fibre power with the diagonal removed.
///
/// An injective `d`-tuple over a point is a bijection `τ` from `{1..d}` to
/// the fibre, and `μ` acts by `τ ↦ τ·μ`. Each orbit is one component; its
/// points are numbered in increasing order of `τ`.
pub fn fibre_power_components(m: &MonodromyMap) -> Result<Vec<MonodromyMap>, CoverError> {
    let d = m.degree;
    if d > FIBRE_POWER_MAX_DEGREE {
        return Err(CoverError::DegreeCap(d, FIBRE_POWER_MAX_DEGREE));
    }
    let all = PermGroup::symmetric(d);
    let mut component = vec![usize::MAX; all.order()];
    let mut out = Vec::new();
    for start in 0..all.order() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        component[start] = id;
        let mut i = 0;
        while i < members.len() {
            let t = &all.elements()[members[i]];
            for a in &m.images {
                let y = all.index_of(&t.then(a)).unwrap();
                if component[y] == usize::MAX {
                    component[y] = id;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let local: HashMap<usize, u32> = members.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
        let images = m
            .images
            .iter()
            .map(|a| {
                let imgs = members.iter().map(|&x| local[&all.index_of(&all.elements()[x].then(a)).unwrap()]).collect();
                Permutation::from_images(imgs).expect("orbit action is a bijection")
            })
            .collect();
        out.push(MonodromyMap::new(members.len(), images)?);
    }
    Ok(out)
}

/// Every fibre-power component is equivalent to the closure's translation
/// action.
pub fn fibre_power_matches_closure(m: &MonodromyMap) -> Result<bool, CoverError> {
    let closure = galois_closure(m)?.monodromy();
    let comps = fibre_power_components(m)?;
    Ok(comps.iter().all(|c| c.degree() == closure.degree() && c.equivalent(&closure)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    fn s3_map() -> MonodromyMap {
        MonodromyMap::from_pair(&p("(1,2)", 3), &p("(2,3)", 3)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(MonodromyMap::new(3, vec![p("(1,2)", 3), p("(1,2)", 3)]), Err(CoverError::NotTransitive)));
        assert!(matches!(
            MonodromyMap::new(3, vec![p("(1,2)", 3), p("(2,3)", 3)]),
            Err(CoverError::ProductNotIdentity(_))
        ));
        let m = MonodromyMap::new(3, vec![p("(1,2)", 3), p("()", 3), p("(1,2)", 3), p("(1,2,3)", 3), p("(1,3,2)", 3)]);
        assert_eq!(m.unwrap().images().len(), 4);
    }

    #[test]
    fn genera() {
        assert_eq!(riemann_hurwitz_genus(&s3_map()).unwrap(), 0);
        let c = galois_closure(&s3_map()).unwrap();
        assert_eq!(c.degree(), 6);
        assert_eq!(c.branch_orders(), vec![2, 2, 3]);
        assert_eq!(c.genus().unwrap(), 0);
        assert_eq!(riemann_hurwitz_genus(&c.monodromy()).unwrap(), 0);
    }

    #[test]
    fn closure_is_regular() {
        let c = galois_closure(&s3_map()).unwrap();
        let reg = c.monodromy();
        let g = reg.group().unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.elements().iter().all(|x| x.is_identity() || x.fixed_points() == 0));
        // closing an already regular cover changes nothing
        let again = galois_closure(&reg).unwrap();
        assert!(again.monodromy().equivalent(&reg));
    }

    #[test]
    fn quotients() {
        let m = s3_map();
        let c = galois_closure(&m).unwrap();
        let stab = c.group().point_stabilizer(0);
        assert!(coset_action(&c, &stab).unwrap().equivalent(&m));
        let top = coset_action(&c, c.group().elements()).unwrap();
        assert_eq!((top.degree(), top.images().len()), (1, 0));
        let bottom = coset_action(&c, &[c.group().identity()]).unwrap();
        assert!(bottom.equivalent(&c.monodromy()));
        assert!(coset_action(&c, &[p("(1,2)", 3), p("()", 3), p("(2,3)", 3)]).is_err());
    }

    #[test]
    fn fibre_powers() {
        let m = s3_map();
        let comps = fibre_power_components(&m).unwrap();
        let closure = galois_closure(&m).unwrap().monodromy();
        assert_eq!(comps.len(), 1);
        assert!(comps.iter().all(|c| c.equivalent(&closure)));

        let double = MonodromyMap::new(2, vec![p("(1,2)", 2), p("(1,2)", 2)]).unwrap();
        let comps = fibre_power_components(&double).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].degree(), 2);

        // regular degree-4 input: Klein four-group; 4!/4 = 6 components
        let v = MonodromyMap::new(4, vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4), p("(1,4)(2,3)", 4)]).unwrap();
        let comps = fibre_power_components(&v).unwrap();
        assert_eq!(comps.len(), 6);
        assert!(comps.iter().all(|c| c.degree() == 4 && c.equivalent(&v)));

        let big = MonodromyMap::from_pair(&p("(1,2)", 7), &p("(1,2,3,4,5,6,7)", 7)).unwrap();
        assert!(matches!(fibre_power_components(&big), Err(CoverError::DegreeCap(7, 6))));
    }
}
