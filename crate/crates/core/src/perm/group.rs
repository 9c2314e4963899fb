use std::collections::HashSet;

use super::{PermError, Permutation};

/// Element cap for [`generate`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_000_000;

/// A permutation group with its full element list materialized.
///
/// Elements are kept sorted (lexicographic on image arrays), so results do
/// not depend on how the closure was traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

/// Closure of `gens` under composition, capped at [`DEFAULT_ELEMENT_CAP`].
pub fn generate(gens: &[Permutation]) -> Result<PermGroup, PermError> {
    generate_with_cap(gens, DEFAULT_ELEMENT_CAP)
}

pub fn generate_with_cap(gens: &[Permutation], cap: usize) -> Result<PermGroup, PermError> {
    let first = gens.first().ok_or(PermError::NoGenerators)?;
    let degree = first.degree();
    for g in gens {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(PermError::CapExceeded(cap));
                }
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(PermGroup { degree, generators: gens.to_vec(), elements })
}

impl PermGroup {
    pub fn symmetric(n: usize) -> PermGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_cycles(n, &[&[1, 2]]).unwrap());
        }
        if n >= 3 {
            let long: Vec<usize> = (1..=n).collect();
            gens.push(Permutation::from_cycles(n, &[&long]).unwrap());
        }
        if gens.is_empty() {
            gens.push(Permutation::identity(n));
        }
        generate(&gens).expect("symmetric group within cap")
    }

    pub fn alternating(n: usize) -> PermGroup {
        let mut gens: Vec<Permutation> = (3..=n).map(|k| Permutation::from_cycles(n, &[&[1, 2, k]]).unwrap()).collect();
        if gens.is_empty() {
            gens.push(Permutation::identity(n));
        }
        generate(&gens).expect("alternating group within cap")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Position in the sorted element list.
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn all_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }

    pub fn is_symmetric(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    pub fn is_alternating(&self) -> bool {
        self.degree >= 2 && self.all_even() && self.order() == factorial(self.degree) / 2
    }

    /// Stabilizer of a 0-based point, as a sorted element list.
    pub fn point_stabilizer(&self, point: usize) -> Vec<Permutation> {
        self.elements.iter().filter(|g| g.apply(point) == point).cloned().collect()
    }

    /// `{ c⁻¹ p c : c in G }`, sorted.
    pub fn conjugacy_class(&self, p: &Permutation) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self.elements.iter().map(|c| p.conjugate_by(c)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Checks that `subset` is a subgroup: nonempty, closed under products.
    pub fn is_subgroup(&self, subset: &[Permutation]) -> bool {
        if subset.is_empty() || !subset.iter().all(|h| self.contains(h)) {
            return false;
        }
        let set: HashSet<&Permutation> = subset.iter().collect();
        subset.iter().all(|a| subset.iter().all(|b| set.contains(&a.then(b))))
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn generate_examples() {
        let g = generate(&[p("(1,2)(3,4)", 7), p("(1,5,7)(2,3)(4,6)", 7)]).unwrap();
        assert_eq!(g.order(), 2520);
        assert!(g.is_transitive());
        assert!(g.all_even());
        assert!(g.is_alternating());

        let g = generate(&[Permutation::identity(5)]).unwrap();
        assert_eq!(g.order(), 1);

        let g = generate(&[p("(1,2)", 3), p("(2,3)", 3)]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_transitive());
        assert!(g.is_symmetric());
    }

    #[test]
    fn cap_is_enforced() {
        let err = generate_with_cap(&[p("(1,2)", 5), p("(1,2,3,4,5)", 5)], 100).unwrap_err();
        assert_eq!(err, PermError::CapExceeded(100));
        assert!(generate(&[]).is_err());
    }

    #[test]
    fn named_groups() {
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::symmetric(1).order(), 1);
    }

    #[test]
    fn subgroup_checks() {
        let s3 = PermGroup::symmetric(3);
        assert!(s3.is_subgroup(&s3.point_stabilizer(0)));
        assert!(!s3.is_subgroup(&[p("(1,2)", 3)]));
        assert_eq!(s3.conjugacy_class(&p("(1,2)", 3)).len(), 3);
    }
}
