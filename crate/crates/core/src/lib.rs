//! Exact, reproducible computations around dessins d'enfants: Belyi chains
//! for hyperelliptic curves, normal closures of branched covers, Hurwitz
//! classification of spherical generating systems, polynomials with two
//! critical values and Beauville surfaces isogenous to a product.
//!
//! Everything is exact. There is no floating point anywhere in the crate.

pub mod belyi;
pub mod claims;
pub mod cover;
pub mod curves;
pub mod dessin;
pub mod exactmath;
pub mod fixtures;
pub mod perm;
pub mod spherical;
pub mod surfaces;
pub mod twocrit;
