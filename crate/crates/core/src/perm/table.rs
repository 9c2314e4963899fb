use std::collections::HashMap;

use rayon::prelude::*;

use super::{PermGroup, Permutation};

/// Multiplication table of a materialized group, elements numbered by their
/// position in [`PermGroup::elements`].
///
/// Memory is `4·|G|²` bytes, so this is meant for groups up to a few
/// thousand elements.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    identity: u32,
}

impl CayleyTable {
    pub fn new(group: &PermGroup) -> Self {
        let elements = group.elements().to_vec();
        let n = elements.len();
        let index: HashMap<Permutation, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let mul: Vec<u32> = elements
            .par_iter()
            .flat_map_iter(|a| elements.iter().map(|b| index[&a.then(b)]).collect::<Vec<_>>())
            .collect();
        let identity = index[&group.identity()];
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == identity {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        let orders = elements.iter().map(|p| p.order() as u32).collect();
        CayleyTable { elements, index, mul, inv, orders, identity }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `c⁻¹ a c`.
    pub fn conj(&self, a: u32, c: u32) -> u32 {
        self.mul(self.mul(self.inv(c), a), c)
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    pub fn product(&self, entries: &[u32]) -> u32 {
        entries.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// Conjugacy class of `a`, sorted.
    pub fn class_of(&self, a: u32) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.order() as u32).map(|c| self.conj(a, c)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `gens` generate the whole group. A subgroup with more than
    /// half the elements is everything, so the closure stops there.
    pub fn generates(&self, gens: &[u32]) -> bool {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[self.identity as usize] = true;
        let mut count = 1usize;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    if 2 * count > n {
                        return true;
                    }
                    stack.push(y);
                }
            }
        }
        count == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_agrees_with_permutations() {
        let g = PermGroup::symmetric(4);
        let t = CayleyTable::new(&g);
        assert_eq!(t.order(), 24);
        for a in 0..24u32 {
            assert_eq!(t.mul(a, t.inv(a)), t.identity());
            for b in 0..24u32 {
                assert_eq!(t.element(t.mul(a, b)), &t.element(a).then(t.element(b)));
            }
        }
        let tr = t.index_of(&Permutation::parse_cycles("(1,2)", 4).unwrap()).unwrap();
        let cyc = t.index_of(&Permutation::parse_cycles("(1,2,3,4)", 4).unwrap()).unwrap();
        assert!(t.generates(&[tr, cyc]));
        assert!(!t.generates(&[tr]));
        assert_eq!(t.class_of(tr).len(), 6);
        assert_eq!(t.element_order(cyc), 4);
    }
}
