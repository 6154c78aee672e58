//! A laboratory for computing with finite permutation groups, group classes,
//! and sigma-local formation machinery at desk scale.

pub mod classes;
pub mod construct;
pub mod error;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod manifest;
pub mod perm;
pub mod session;
pub mod sigma;
pub mod sigmalocal;
pub mod structure;
pub mod suites;

pub use error::{Error, Result};
pub use group::{PermGroup, Subgroup};
pub use perm::Perm;
pub use structure::Verdict;
