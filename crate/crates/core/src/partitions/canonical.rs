use num::BigRational;

use super::chain::{CanonicalChain, PrincipalChain};
use super::ratio::{maximizers_above, smallest_maximizer_int, ExhaustiveRatio, RatioMaximizer};
use crate::error::{Error, Result};
use crate::setfn::vector::{rat_int, to_i64};
use crate::setfn::{IntVec, Subset, SupermodularOracle};

fn ceil_to_i64(q: &BigRational) -> Result<i64> {
    to_i64(&q.ceil().to_integer())
}

/// Canonical chain by iterated contraction: `β_j` is the rounded-up best
/// ratio on the contraction by `C_{j−1}`, and `C_j` the smallest maximizer
/// of `p(Y) − (β_j − 1)|Y|` over `Y ⊇ C_{j−1}`.
pub fn canonical_partition_iterative(p: &SupermodularOracle) -> Result<CanonicalChain> {
    canonical_partition_iterative_with(p, &ExhaustiveRatio::default())
}

pub fn canonical_partition_iterative_with(
    p: &SupermodularOracle,
    ratio: &dyn RatioMaximizer,
) -> Result<CanonicalChain> {
    let mut out = CanonicalChain {
        chain: Vec::new(),
        values: Vec::new(),
    };
    let mut c = Subset::EMPTY;
    while c != p.full() {
        let beta = ceil_to_i64(&ratio.max_ratio(p, c)?)?;
        let next = maximizers_above(p, c, &rat_int(beta as i128 - 1))?.smallest;
        if next == c {
            return Err(Error::Invalid(format!("canonical chain stalled at {c:?}")));
        }
        out.chain.push(next);
        out.values.push(beta);
        c = next;
    }
    Ok(out)
}

/// Canonical chain from the jumps of `β ↦ L(β)`: scans integer `β` downward
/// from `⌈max p(X)/|X|⌉` and keeps those with `L(β) ≠ L(β − 1)`, setting `C_j = L(β_j − 1)`.
pub fn canonical_partition_direct(p: &SupermodularOracle) -> Result<CanonicalChain> {
    canonical_partition_direct_with(p, &ExhaustiveRatio::default())
}

pub fn canonical_partition_direct_with(
    p: &SupermodularOracle,
    ratio: &dyn RatioMaximizer,
) -> Result<CanonicalChain> {
    let mut out = CanonicalChain {
        chain: Vec::new(),
        values: Vec::new(),
    };
    let mut beta = ceil_to_i64(&ratio.max_ratio(p, Subset::EMPTY)?)?;
    let mut current = smallest_maximizer_int(p, beta)?;
    loop {
        let below = smallest_maximizer_int(p, beta - 1)?;
        if below != current {
            out.chain.push(below);
            out.values.push(beta);
        }
        if below == p.full() {
            return Ok(out);
        }
        current = below;
        beta -= 1;
    }
}

/// Canonical chain read off the principal chain: `β` ranges over the
/// distinct `⌈λ_i⌉` and `C_j` is the last principal member whose critical value rounds up to `β_j`.
pub fn canonical_from_principal(pp: &PrincipalChain) -> Result<CanonicalChain> {
    let mut out = CanonicalChain {
        chain: Vec::new(),
        values: Vec::new(),
    };
    for (c, lambda) in pp.chain.iter().zip(&pp.values) {
        let beta = ceil_to_i64(lambda)?;
        if out.values.last() == Some(&beta) {
            *out.chain.last_mut().unwrap() = *c;
        } else {
            out.chain.push(*c);
            out.values.push(beta);
        }
    }
    Ok(out)
}

/// Canonical chain read off a dec-min element `m`: `β_j` is the largest
/// value of `m` outside `C_{j−1}`, and `C_j` the smallest `m`-tight set
/// containing `C_{j−1}` and every element of value at least `β_j`.
pub fn canonical_from_decmin(p: &SupermodularOracle, m: &IntVec) -> Result<CanonicalChain> {
    let mut out = CanonicalChain {
        chain: Vec::new(),
        values: Vec::new(),
    };
    let mut c = Subset::EMPTY;
    while c != p.full() {
        let rest = p.full().difference(c);
        let beta = rest.iter().map(|s| m[s]).max().unwrap();
        let upper: Subset = (0..p.n()).filter(|&s| m[s] >= beta).collect();
        let next = p.smallest_tight_containing(m, c.union(upper))?;
        out.chain.push(next);
        out.values.push(beta);
        c = next;
    }
    Ok(out)
}
