//! Canonical and principal partitions, the min-norm point and dec-min certificates.

pub mod canonical;
pub mod certify;
pub mod chain;
pub mod principal;
pub mod ratio;

pub use canonical::{
    canonical_from_decmin, canonical_from_principal, canonical_partition_direct,
    canonical_partition_iterative,
};
pub use certify::{certify_decmin, find_tightening_step, Certification, DecMinCertificate};
pub use chain::{CanonicalChain, PrincipalChain, ValuedChain};
pub use principal::{min_norm_from_principal, min_norm_point, principal_partition};
pub use ratio::{
    largest_maximizer, smallest_maximizer, DinkelbachRatio, ExhaustiveRatio, RatioMaximizer,
};
