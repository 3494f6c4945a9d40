//! Set-function foundation: subsets, extended values, vectors, the oracle and SFM.

mod ops;
pub mod oracle;
pub mod sfm;
pub mod subset;
pub mod value;
pub mod vector;

pub use oracle::{GroundSet, OracleStats, SupermodularOracle};
pub use sfm::{sfm_min, ExhaustiveSfm, SfmBackend, SfmResult};
pub use subset::Subset;
pub use value::Ext;
pub use vector::{IntVec, RatVec};
