//! Submodular function minimization over an interval `[lo, hi]` of the subset lattice.
//!
//! The default backend scans every subset. Minimizers of a submodular function
//! form a lattice, so the intersection and union of all minimizers are the
//! smallest and largest minimizers.

use serde::Serialize;

use super::{Ext, Subset};
use crate::error::{Error, Result};

/// Default bound on the number of free elements the exhaustive scan accepts.
pub const DEFAULT_ENUMERATION_BOUND: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SfmResult {
    pub min_value: Ext,
    pub smallest: Subset,
    pub largest: Subset,
}

/// Minimizes a submodular `f` over all `X` with `lo ⊆ X ⊆ hi`.
///
/// `f` may return `+inf`; it never returns `-inf` for the functions built in
/// this crate.
pub trait SfmBackend: Send + Sync {
    fn minimize(&self, lo: Subset, hi: Subset, f: &dyn Fn(Subset) -> Ext) -> Result<SfmResult>;

    fn name(&self) -> &'static str;
}

#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveSfm {
    pub max_free: usize,
}

impl Default for ExhaustiveSfm {
    fn default() -> Self {
        ExhaustiveSfm {
            max_free: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

impl SfmBackend for ExhaustiveSfm {
    fn minimize(&self, lo: Subset, hi: Subset, f: &dyn Fn(Subset) -> Ext) -> Result<SfmResult> {
        debug_assert!(lo.is_subset_of(hi));
        let free = hi.difference(lo);
        if free.len() > self.max_free {
            return Err(Error::EnumerationBound {
                what: "submodular minimization",
                n: free.len(),
                bound: self.max_free,
            });
        }
        let mut best = Ext::PosInf;
        let mut smallest = hi;
        let mut largest = lo;
        let mut seen = false;
        for sub in free.subsets() {
            let x = lo.union(sub);
            let v = f(x);
            if !seen || v < best {
                best = v;
                smallest = x;
                largest = x;
                seen = true;
            } else if v == best {
                smallest = smallest.intersection(x);
                largest = largest.union(x);
            }
        }
        Ok(SfmResult {
            min_value: best,
            smallest,
            largest,
        })
    }

    fn name(&self) -> &'static str {
        "exhaustive"
    }
}

/// Convenience wrapper: minimize over all subsets of `{0, .., n-1}` with the default backend.
pub fn sfm_min(n: usize, f: impl Fn(Subset) -> Ext) -> Result<SfmResult> {
    ExhaustiveSfm::default().minimize(Subset::EMPTY, Subset::full(n), &f)
}
