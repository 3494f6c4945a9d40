//! Recursive decomposition algorithms returning a square-sum minimizer of the M-convex set.

pub mod fujishige;
pub mod groenevelt;
pub mod trace;

pub use fujishige::{
    big_g_a, fujishige_decmin, g_a, minimize_ga, split_fujishige, FujishigeOptions,
};
pub use groenevelt::{
    groenevelt_decmin, minimal_dominating_in_q, single_constraint_solution, DominatorOrder,
    GroeneveltOptions, TieRule,
};
pub use trace::{DecompTrace, TraceNode};

use crate::setfn::{IntVec, Subset};

#[derive(Clone, Debug)]
pub struct DecompResult {
    pub z: IntVec,
    pub trace: DecompTrace,
}

/// Writes each local vector onto its part of `{0, .., n-1}`.
pub(crate) fn assemble(n: usize, parts: &[(Subset, &IntVec)]) -> IntVec {
    let mut out = IntVec::constant(n, 0);
    for (set, local) in parts {
        debug_assert_eq!(set.len(), local.dim());
        for (s, &v) in set.iter().zip(local.iter()) {
            out[s] = v;
        }
    }
    out
}
