//! The explicit systems used by the claim registry, the CLI and the tests.

use std::sync::Arc;

use crate::perm::{PermGroup, Permutation};
use crate::spherical::SphericalSystem;
use crate::surfaces::ProductQuotientData;

pub const TUPLE_1: [&str; 3] = ["(1,2)(3,4)", "(1,5,7)(2,3)(4,6)", "(1,7,5,2,4,6,3)"];
pub const TUPLE_2: [&str; 3] = ["(1,2)(3,4)", "(1,7,4)(2,5)(3,6)", "(1,3,6,4,7,2,5)"];
pub const TUPLE_555: [&str; 3] = ["(1,7,6,5,4)", "(1,3,2,6,7)", "(2,3,4,5,6)"];

pub fn a7() -> Arc<PermGroup> {
    Arc::new(PermGroup::alternating(7))
}

pub fn perms(cycles: &[&str], degree: usize) -> Vec<Permutation> {
    cycles.iter().map(|c| Permutation::parse_cycles(c, degree).expect("fixture parses")).collect()
}

pub fn a7_system(group: &Arc<PermGroup>, cycles: &[&str]) -> SphericalSystem {
    SphericalSystem::new(group.clone(), perms(cycles, 7)).expect("fixture is a spherical system")
}

/// `(C_j, C)` for `j = 1, 2`: the `(2,6,7)` curve from tuple `j` and the
/// `(5,5,5)` curve.
pub fn beauville_pair(group: &Arc<PermGroup>, j: usize) -> ProductQuotientData {
    let t = if j == 1 { TUPLE_1 } else { TUPLE_2 };
    ProductQuotientData::new(a7_system(group, &t), a7_system(group, &TUPLE_555)).expect("same group")
}

/// A small pair in `S_3` of types `(2,2,3)` and `(2,2,2,2)`.
pub fn s3_pair() -> (SphericalSystem, SphericalSystem) {
    let g = Arc::new(PermGroup::symmetric(3));
    let s1 = SphericalSystem::new(g.clone(), perms(&["(1,2)", "(2,3)", "(1,2,3)"], 3)).expect("valid");
    let s2 = SphericalSystem::new(g, perms(&["(1,2)", "(1,2)", "(2,3)", "(2,3)"], 3)).expect("valid");
    (s1, s2)
}
