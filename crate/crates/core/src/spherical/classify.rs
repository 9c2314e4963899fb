use std::collections::{HashMap, HashSet, VecDeque};

use super::{raw_neighbors, SphericalError, SphericalSystem};
use crate::perm::{PermGroup, Permutation};

/// One class of a classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least input system in the class.
    pub representative: SphericalSystem,
    /// Number of input systems in the class.
    pub members: usize,
    /// Size of the full class, counting tuples of every ordering of the
    /// type (braid moves permute the orders).
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct Classification {
    /// Orbits under braid moves alone, sorted by representative.
    pub braid: Vec<Orbit>,
    /// Orbits under braid moves and conjugation by the ambient group.
    pub ambient: Vec<Orbit>,
}

/// The full braid orbit of a tuple, in BFS order from the start.
pub fn orbit_of(entries: &[Permutation]) -> Vec<Vec<Permutation>> {
    let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
    seen.insert(entries.to_vec());
    let mut order = vec![entries.to_vec()];
    let mut queue = VecDeque::from([entries.to_vec()]);
    while let Some(t) = queue.pop_front() {
        for n in raw_neighbors(&t) {
            if seen.insert(n.clone()) {
                order.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    order
}

struct OrbitTable {
    index: HashMap<Vec<Permutation>, usize>,
    sizes: Vec<usize>,
    starts: Vec<Vec<Permutation>>,
}

impl OrbitTable {
    fn locate(&mut self, entries: &[Permutation]) -> usize {
        if let Some(&i) = self.index.get(entries) {
            return i;
        }
        let id = self.sizes.len();
        let orbit = orbit_of(entries);
        self.sizes.push(orbit.len());
        self.starts.push(entries.to_vec());
        for t in orbit {
            self.index.insert(t, id);
        }
        id
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Partitions `systems` into braid orbits and into the coarser classes
/// obtained by also conjugating with the generators of `ambient` (which
/// must normalize the group). Without an ambient group both partitions
/// coincide.
///
/// Output is independent of input order.
pub fn hurwitz_classify(
    systems: &[SphericalSystem],
    ambient: Option<&PermGroup>,
) -> Result<Classification, SphericalError> {
    let mut table = OrbitTable { index: HashMap::new(), sizes: Vec::new(), starts: Vec::new() };
    let ids: Vec<usize> = systems.iter().map(|s| table.locate(s.entries())).collect();

    let mut parent: Vec<usize> = (0..table.sizes.len()).collect();
    if let (Some(amb), Some(first)) = (ambient, systems.first()) {
        let group = first.group();
        for g in amb.generators() {
            if group.generators().iter().any(|x| !group.contains(&x.conjugate_by(g))) {
                return Err(SphericalError::NotNormalizing);
            }
        }
        // orbits discovered here may hold no input system; they still link
        // input orbits together, so keep going until no new orbit appears
        let mut next = 0;
        while next < table.sizes.len() {
            let rep = table.starts[next].clone();
            for g in amb.generators() {
                let conj: Vec<Permutation> = rep.iter().map(|a| a.conjugate_by(g)).collect();
                let other = table.locate(&conj);
                while parent.len() < table.sizes.len() {
                    parent.push(parent.len());
                }
                let (ra, rb) = (find(&mut parent, next), find(&mut parent, other));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
            next += 1;
        }
    }

    let collect = |key: &dyn Fn(usize) -> usize| -> Vec<Orbit> {
        let mut groups: HashMap<usize, (usize, usize, Option<&SphericalSystem>)> = HashMap::new();
        for (s, &id) in systems.iter().zip(&ids) {
            let e = groups.entry(key(id)).or_insert((0, 0, None));
            e.1 += 1;
            if e.2.is_none_or(|r| s.entries() < r.entries()) {
                e.2 = Some(s);
            }
        }
        let mut out: Vec<Orbit> = groups
            .into_iter()
            .map(|(k, (_, members, rep))| Orbit {
                representative: rep.unwrap().clone(),
                members,
                size: (0..table.sizes.len()).filter(|&o| key(o) == k).map(|o| table.sizes[o]).sum(),
            })
            .collect();
        out.sort_by(|a, b| a.representative.entries().cmp(b.representative.entries()));
        out
    };

    let braid = collect(&|id| id);
    let mut roots = parent.clone();
    let roots: Vec<usize> = (0..parent.len()).map(|i| find(&mut roots, i)).collect();
    let ambient = collect(&|id| roots[id]);
    Ok(Classification { braid, ambient })
}

/// How complex conjugation reindexes a tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RealityConvention {
    /// `(a_n⁻¹, ..., a_1⁻¹)`.
    ReversedInverse,
    /// `(a_1⁻¹, ..., a_{n-1}⁻¹, c)` with `c` closing the product to one.
    BasePoint,
}

impl RealityConvention {
    pub fn apply(self, entries: &[Permutation]) -> Vec<Permutation> {
        match self {
            RealityConvention::ReversedInverse => entries.iter().rev().map(Permutation::inverse).collect(),
            RealityConvention::BasePoint => {
                let n = entries.len();
                let mut out: Vec<Permutation> = entries[..n - 1].iter().map(Permutation::inverse).collect();
                let prod = crate::perm::product(&out).expect("nonempty");
                out.push(prod.inverse());
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reality {
    /// The conjugate system lies in the same braid orbit.
    pub braid: bool,
    /// The conjugate system lies in the same class up to braid moves and
    /// ambient conjugation.
    pub ambient: bool,
}

/// Reality of `s` under `convention`, at both granularities. The ambient
/// test tries every ambient element, so `ambient` should be small (for
/// example a symmetric group of degree at most 8).
pub fn is_real(s: &SphericalSystem, ambient: Option<&PermGroup>, convention: RealityConvention) -> Reality {
    if s.is_empty() {
        return Reality { braid: true, ambient: true };
    }
    let orbit: HashSet<Vec<Permutation>> = orbit_of(s.entries()).into_iter().collect();
    let conj = convention.apply(s.entries());
    let braid = orbit.contains(&conj);
    let ambient = match ambient {
        None => braid,
        Some(amb) => {
            braid
                || amb
                    .elements()
                    .iter()
                    .any(|c| orbit.contains(&conj.iter().map(|a| a.conjugate_by(c)).collect::<Vec<_>>()))
        }
    };
    Reality { braid, ambient }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::enumerate_systems;
    use std::sync::Arc;

    #[test]
    fn s3_single_orbit() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let all = enumerate_systems(&s3, &"2,2,3".parse().unwrap()).unwrap();
        let c = hurwitz_classify(&all, Some(&PermGroup::symmetric(3))).unwrap();
        assert_eq!(c.braid.len(), 1);
        assert_eq!(c.braid[0].members, 6);
        // three orderings of the type, six tuples each
        assert_eq!(c.braid[0].size, 18);
        assert_eq!(c.ambient.len(), 1);
        let single = hurwitz_classify(&all[..1], None).unwrap();
        assert_eq!(single.braid.len(), 1);
        assert_eq!(single.braid[0].representative, all[0]);
    }

    #[test]
    fn input_order_irrelevant() {
        let s4 = Arc::new(PermGroup::symmetric(4));
        let all = enumerate_systems(&s4, &"2,3,4".parse().unwrap()).unwrap();
        let mut rev = all.clone();
        rev.reverse();
        let a = hurwitz_classify(&all, Some(&s4)).unwrap();
        let b = hurwitz_classify(&rev, Some(&s4)).unwrap();
        assert_eq!(a.braid, b.braid);
        assert_eq!(a.ambient, b.ambient);
        let total: usize = a.braid.iter().map(|o| o.members).sum();
        assert_eq!(total, all.len());
    }

    #[test]
    fn cyclic_group_not_real() {
        // Z/7 generated by a 7-cycle; (x, x^2, x^4) is not braid equivalent
        // to its conjugate (x^-4, x^-2, x^-1), since in an abelian group
        // braid moves only permute entries
        let x = Permutation::parse_cycles("(1,2,3,4,5,6,7)", 7).unwrap();
        let g = Arc::new(crate::perm::generate(std::slice::from_ref(&x)).unwrap());
        let s = SphericalSystem::new(g, vec![x.clone(), x.pow(2), x.pow(4)]).unwrap();
        let r = is_real(&s, None, RealityConvention::ReversedInverse);
        assert!(!r.braid);
        assert!(!is_real(&s, None, RealityConvention::BasePoint).braid);
        // exponents {1, 2, 6, 5} are closed under negation, so the
        // conjugate is a reordering and hence braid equivalent
        let t = SphericalSystem::new(s.group().clone(), vec![x.clone(), x.pow(2), x.pow(6), x.pow(5)]).unwrap();
        for conv in [RealityConvention::ReversedInverse, RealityConvention::BasePoint] {
            assert_eq!(is_real(&t, None, conv), Reality { braid: true, ambient: true });
        }
    }
}
