//! Decreasingly minimal elements of M-convex sets.
//!
//! An instance is an integer-valued supermodular function `p` on a small
//! ground set; the M-convex set is the set of integer points of the base
//! polyhedron `B'(p)`. The crate computes dec-min elements several ways,
//! the canonical and principal partitions, the min-norm point, and checks
//! all of it against brute force.

pub mod cli;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod instance;
pub mod partitions;
pub mod relaxation;
pub mod setfn;
pub mod verify;

pub use error::{Error, Result};
pub use setfn::{Ext, GroundSet, IntVec, RatVec, Subset, SupermodularOracle};
