#![no_std]
//! Finite soluble groups given by polycyclic presentations: Fitting height,
//! π-length, towers, and bounds for coprime factorisations `G = AB`.

extern crate alloc;

pub mod bounds;
pub mod constructors;
pub mod error;
mod fp;
pub mod invariants;
pub mod pc;
pub mod primes;
pub mod towers;

/// Engine version recorded in reports and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use constructors::{build, BuildConfig, GroupExpr, SylowBasis};
pub use error::{Error, Result};
pub use pc::{Element, PcGroup, Projection, Subgroup};
