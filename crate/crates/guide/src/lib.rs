//! The book chapters, compiled as documentation so their code listings run
//! as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/spherical.md")]
pub mod spherical {}

#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}

#[doc = include_str!("../../../book/src/belyi.md")]
pub mod belyi {}

#[doc = include_str!("../../../book/src/twocrit.md")]
pub mod twocrit {}

#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}

#[doc = include_str!("../../../book/src/claims.md")]
pub mod claims {}
