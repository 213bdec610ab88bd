//! Root systems, Weyl groups and staggered codimensions of Schubert
//! varieties on partial flag varieties, with exhaustive verification sweeps.

pub mod error;
pub mod invariants;
pub mod linalg;
pub mod perversity;
pub mod rootsys;
pub mod torusmod;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{CartanType, LatticeVector, LieType, RootSystem, RootVec};
pub use weyl::{Parabolic, WeylElement};
