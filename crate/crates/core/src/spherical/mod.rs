//! Spherical systems of generators: tuples `(a_1, ..., a_n)` of nontrivial
//! elements of a permutation group `G` with `a_1 ⋯ a_n = 1` that generate
//! `G`. Includes enumeration by type, braid (Hurwitz) moves, orbit
//! classification at two granularities and reality tests.

mod classify;

pub use classify::{hurwitz_classify, is_real, orbit_of, Classification, Orbit, Reality, RealityConvention};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{product, CayleyTable, PermError, PermGroup, Permutation};

/// Largest group order [`enumerate_systems`] accepts by default. The Cayley
/// table needs `4·|G|²` bytes.
pub const DEFAULT_ENUMERATION_CAP: usize = 6000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SphericalError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("entries multiply to {0}, not the identity")]
    ProductNotIdentity(String),
    #[error("entries generate a group of order {got}, expected {expected}")]
    NotGenerating { got: usize, expected: usize },
    #[error("entry {0} is the identity")]
    IdentityEntry(usize),
    #[error("entry {0} is not in the group")]
    NotInGroup(usize),
    #[error("type must have at least 3 entries, got {0}")]
    TypeTooShort(usize),
    #[error("group order {0} exceeds the enumeration cap {1}")]
    CapExceeded(usize, usize),
    #[error("ambient group does not normalize the group")]
    NotNormalizing,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Multiset of element orders, kept in ascending order. The ascending
/// ordering is the one used for enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnorderedType(Vec<u64>);

impl UnorderedType {
    pub fn new(mut orders: Vec<u64>) -> Self {
        orders.sort_unstable();
        UnorderedType(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for UnorderedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for UnorderedType {
    type Err = SphericalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let orders: Result<Vec<u64>, _> = t.split(',').map(|x| x.trim().parse::<u64>()).collect();
        match orders {
            Ok(v) if !v.is_empty() && !v.contains(&0) => Ok(UnorderedType::new(v)),
            _ => Err(SphericalError::Parse(format!("bad type `{s}`"))),
        }
    }
}

#[derive(Clone)]
pub struct SphericalSystem {
    group: Arc<PermGroup>,
    entries: Vec<Permutation>,
}

impl SphericalSystem {
    /// Validates membership, nontriviality, product one and generation.
    pub fn new(group: Arc<PermGroup>, entries: Vec<Permutation>) -> Result<Self, SphericalError> {
        for (i, a) in entries.iter().enumerate() {
            if a.degree() != group.degree() {
                return Err(PermError::DegreeMismatch(group.degree(), a.degree()).into());
            }
            if !group.contains(a) {
                return Err(SphericalError::NotInGroup(i));
            }
            if a.is_identity() {
                return Err(SphericalError::IdentityEntry(i));
            }
        }
        let prod = product(&entries).unwrap_or_else(|| group.identity());
        if !prod.is_identity() {
            return Err(SphericalError::ProductNotIdentity(prod.to_string()));
        }
        let got = if entries.is_empty() { 1 } else { crate::perm::generate(&entries)?.order() };
        if got != group.order() {
            return Err(SphericalError::NotGenerating { got, expected: group.order() });
        }
        Ok(SphericalSystem { group, entries })
    }

    /// For entries obtained from a valid system by braid moves or by
    /// conjugation with a normalizing element.
    pub(crate) fn new_unchecked(group: Arc<PermGroup>, entries: Vec<Permutation>) -> Self {
        SphericalSystem { group, entries }
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn entries(&self) -> &[Permutation] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Element orders in entry order.
    pub fn orders(&self) -> Vec<u64> {
        self.entries.iter().map(Permutation::order).collect()
    }

    pub fn unordered_type(&self) -> UnorderedType {
        UnorderedType::new(self.orders())
    }

    /// Entrywise conjugation `a_i ↦ c⁻¹ a_i c`. The caller is responsible for
    /// `c` normalizing the group.
    pub fn conjugate_by(&self, c: &Permutation) -> SphericalSystem {
        let entries = self.entries.iter().map(|a| a.conjugate_by(c)).collect();
        SphericalSystem::new_unchecked(self.group.clone(), entries)
    }

    /// `group-tag | orders | e1 ; e2 ; ...`
    pub fn to_line(&self, tag: &str) -> String {
        let orders: Vec<String> = self.orders().iter().map(u64::to_string).collect();
        let entries: Vec<String> = self.entries.iter().map(Permutation::to_string).collect();
        format!("{} | {} | {}", tag, orders.join(","), entries.join(" ; "))
    }

    /// Inverse of [`SphericalSystem::to_line`] for the tags understood by
    /// [`group_from_tag`]. The order field is checked against the entries.
    pub fn parse_line(line: &str) -> Result<(String, SphericalSystem), SphericalError> {
        let bad = || SphericalError::Parse(line.to_string());
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let [tag, orders, entries] = parts[..] else { return Err(bad()) };
        let group = Arc::new(group_from_tag(tag).ok_or_else(bad)?);
        let entries: Result<Vec<Permutation>, PermError> =
            entries.split(';').map(|e| Permutation::parse_cycles(e, group.degree())).collect();
        let sys = SphericalSystem::new(group, entries?)?;
        let want: Result<Vec<u64>, _> = orders.split(',').map(|x| x.trim().parse::<u64>()).collect();
        if want.map_err(|_| bad())? != sys.orders() {
            return Err(bad());
        }
        Ok((tag.to_string(), sys))
    }
}

impl PartialEq for SphericalSystem {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for SphericalSystem {}

impl fmt::Debug for SphericalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.entries.iter().map(Permutation::to_string).collect();
        write!(f, "SphericalSystem(|G|={}; {})", self.group.order(), entries.join(", "))
    }
}

/// Groups addressable by a short tag: `a<n>` and `s<n>`.
pub fn group_from_tag(tag: &str) -> Option<PermGroup> {
    let tag = tag.trim().to_ascii_lowercase();
    let (kind, n) = tag.split_at(1.min(tag.len()));
    let n: usize = n.parse().ok()?;
    if !(1..=8).contains(&n) {
        return None;
    }
    match kind {
        "a" => Some(PermGroup::alternating(n)),
        "s" => Some(PermGroup::symmetric(n)),
        _ => None,
    }
}

pub fn enumerate_systems(group: &Arc<PermGroup>, t: &UnorderedType) -> Result<Vec<SphericalSystem>, SphericalError> {
    enumerate_systems_with_cap(group, t, DEFAULT_ENUMERATION_CAP)
}

/// All systems of the ascending ordered type `t`, in lexicographic order of
/// their entry tuples.
pub fn enumerate_systems_with_cap(
    group: &Arc<PermGroup>,
    t: &UnorderedType,
    cap: usize,
) -> Result<Vec<SphericalSystem>, SphericalError> {
    if t.len() < 3 {
        return Err(SphericalError::TypeTooShort(t.len()));
    }
    if group.order() > cap {
        return Err(SphericalError::CapExceeded(group.order(), cap));
    }
    let table = CayleyTable::new(group);
    let by_order: Vec<Vec<u32>> = t
        .orders()
        .iter()
        .map(|&o| (0..table.order() as u32).filter(|&i| table.element_order(i) as u64 == o).collect())
        .collect();
    let k = t.len();
    let last_order = t.orders()[k - 1] as u32;

    let tuples: Vec<Vec<u32>> = by_order[0]
        .par_iter()
        .flat_map_iter(|&a0| {
            let mut out = Vec::new();
            let mut prefix = vec![a0];
            extend(&table, &by_order, last_order, &mut prefix, &mut out);
            out
        })
        .collect();

    Ok(tuples
        .into_iter()
        .map(|idx| {
            let entries = idx.iter().map(|&i| table.element(i).clone()).collect();
            SphericalSystem::new_unchecked(group.clone(), entries)
        })
        .collect())
}

fn extend(table: &CayleyTable, by_order: &[Vec<u32>], last_order: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = by_order.len();
    if prefix.len() == k - 1 {
        let last = table.inv(table.product(prefix));
        if last != table.identity() && table.element_order(last) == last_order {
            prefix.push(last);
            if table.generates(prefix) {
                out.push(prefix.clone());
            }
            prefix.pop();
        }
        return;
    }
    for &a in &by_order[prefix.len()] {
        prefix.push(a);
        extend(table, by_order, last_order, prefix, out);
        prefix.pop();
    }
}

/// Elementary braid moves at every adjacent position, `σ_i` then `σ_i⁻¹`:
///
/// * `σ_i`: `(a_i, a_{i+1}) ↦ (a_{i+1}, a_{i+1}⁻¹ a_i a_{i+1})`
/// * `σ_i⁻¹`: `(a_i, a_{i+1}) ↦ (a_i a_{i+1} a_i⁻¹, a_i)`
pub fn hurwitz_neighbors(s: &SphericalSystem) -> Vec<SphericalSystem> {
    raw_neighbors(s.entries()).into_iter().map(|e| SphericalSystem::new_unchecked(s.group.clone(), e)).collect()
}

pub(crate) fn braid_move(entries: &[Permutation], i: usize, forward: bool) -> Vec<Permutation> {
    let mut e = entries.to_vec();
    let (a, b) = (&entries[i], &entries[i + 1]);
    if forward {
        e[i] = b.clone();
        e[i + 1] = a.conjugate_by(b);
    } else {
        e[i] = b.conjugate_by(&a.inverse());
        e[i + 1] = a.clone();
    }
    e
}

pub(crate) fn raw_neighbors(entries: &[Permutation]) -> Vec<Vec<Permutation>> {
    let mut out = Vec::with_capacity(2 * entries.len().saturating_sub(1));
    for i in 0..entries.len().saturating_sub(1) {
        out.push(braid_move(entries, i, true));
        out.push(braid_move(entries, i, false));
    }
    out
}

/// Nonidentity elements of the group that are conjugate to a power of some
/// entry. These are exactly the elements with fixed points on the curve
/// attached to the system.
pub fn stabilizer_set(s: &SphericalSystem) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    for a in s.entries() {
        let ord = a.order() as i64;
        for k in 1..ord {
            let p = a.pow(k);
            if out.contains(&p) {
                continue;
            }
            out.extend(s.group.conjugacy_class(&p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a7() -> Arc<PermGroup> {
        Arc::new(PermGroup::alternating(7))
    }

    fn sys(g: &Arc<PermGroup>, entries: &[&str]) -> SphericalSystem {
        let e = entries.iter().map(|s| Permutation::parse_cycles(s, g.degree()).unwrap()).collect();
        SphericalSystem::new(g.clone(), e).unwrap()
    }

    #[test]
    fn validation() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        let p = |s: &str| Permutation::parse_cycles(s, 3).unwrap();
        assert!(matches!(
            SphericalSystem::new(s3.clone(), vec![p("(1,2)"), p("(1,2)"), p("(1,2,3)")]),
            Err(SphericalError::ProductNotIdentity(_))
        ));
        assert!(matches!(
            SphericalSystem::new(s3.clone(), vec![p("(1,2)"), p("(1,2)")]),
            Err(SphericalError::NotGenerating { got: 2, expected: 6 })
        ));
        assert!(matches!(
            SphericalSystem::new(s3, vec![p("()"), p("(1,2)"), p("(1,2)")]),
            Err(SphericalError::IdentityEntry(0))
        ));
    }

    #[test]
    fn s3_enumeration() {
        let s3 = Arc::new(PermGroup::symmetric(3));
        assert!(enumerate_systems(&s3, &"2,2,2".parse().unwrap()).unwrap().is_empty());
        // a_1, a_2 distinct transpositions (6 ordered pairs); a_3 their
        // product inverse, a 3-cycle
        let all = enumerate_systems(&s3, &"2,2,3".parse().unwrap()).unwrap();
        assert_eq!(all.len(), 6);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.entries().cmp(b.entries()));
        assert_eq!(sorted, all);
        assert!(enumerate_systems(&s3, &"2,3".parse().unwrap()).is_err());
    }

    #[test]
    fn neighbors_stay_valid() {
        let g = a7();
        let s = sys(&g, &["(1,2)(3,4)", "(1,5,7)(2,3)(4,6)", "(1,7,5,2,4,6,3)"]);
        let nb = hurwitz_neighbors(&s);
        assert_eq!(nb.len(), 4);
        let a = s.entries();
        assert_eq!(nb[0].entries(), &[a[1].clone(), a[0].conjugate_by(&a[1]), a[2].clone()]);
        for n in &nb {
            SphericalSystem::new(g.clone(), n.entries().to_vec()).unwrap();
            assert_eq!(n.unordered_type(), s.unordered_type());
        }
        for i in 0..2 {
            let there = braid_move(a, i, true);
            assert_eq!(braid_move(&there, i, false), a);
        }
    }

    #[test]
    fn line_round_trip() {
        let g = a7();
        let s = sys(&g, &["(1,7,6,5,4)", "(1,3,2,6,7)", "(2,3,4,5,6)"]);
        let line = s.to_line("a7");
        assert_eq!(line, "a7 | 5,5,5 | (1,7,6,5,4) ; (1,3,2,6,7) ; (2,3,4,5,6)");
        let (tag, back) = SphericalSystem::parse_line(&line).unwrap();
        assert_eq!(tag, "a7");
        assert_eq!(back.entries(), s.entries());
    }

    #[test]
    fn stabilizers() {
        let g = a7();
        let s = sys(&g, &["(1,7,6,5,4)", "(1,3,2,6,7)", "(2,3,4,5,6)"]);
        let st = stabilizer_set(&s);
        assert_eq!(st.len(), 504);
        assert!(st.iter().all(|p| p.order() == 5));
        let t = sys(&g, &["(1,2)(3,4)", "(1,5,7)(2,3)(4,6)", "(1,7,5,2,4,6,3)"]);
        let orders: BTreeSet<u64> = stabilizer_set(&t).iter().map(Permutation::order).collect();
        assert_eq!(orders, [2, 3, 6, 7].into_iter().collect());
        assert!(st.is_disjoint(&stabilizer_set(&t)));
    }
}
