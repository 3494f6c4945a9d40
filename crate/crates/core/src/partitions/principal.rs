use super::chain::PrincipalChain;
use super::ratio::{maximizers_above, ExhaustiveRatio, RatioMaximizer};
use crate::error::{Error, Result};
use crate::setfn::{RatVec, Subset, SupermodularOracle};

/// Principal chain: at each step `λ` is the best ratio on the contraction by
/// the current member, and the next member is the largest maximizer of `p(Y) − λ|Y|` over `Y ⊇ C`.
pub fn principal_partition(p: &SupermodularOracle) -> Result<PrincipalChain> {
    principal_partition_with(p, &ExhaustiveRatio::default())
}

pub fn principal_partition_with(
    p: &SupermodularOracle,
    ratio: &dyn RatioMaximizer,
) -> Result<PrincipalChain> {
    let mut out = PrincipalChain {
        chain: Vec::new(),
        values: Vec::new(),
    };
    let mut c = Subset::EMPTY;
    while c != p.full() {
        let lambda = ratio.max_ratio(p, c)?;
        let next = maximizers_above(p, c, &lambda)?.largest;
        if next == c {
            return Err(Error::Invalid(format!("principal chain stalled at {c:?}")));
        }
        out.chain.push(next);
        out.values.push(lambda);
        c = next;
    }
    Ok(out)
}

/// Min-norm point of `B`: `λ_i` on the `i`-th principal block.
pub fn min_norm_point(p: &SupermodularOracle) -> Result<RatVec> {
    Ok(min_norm_from_principal(p.n(), &principal_partition(p)?))
}

pub fn min_norm_from_principal(n: usize, pp: &PrincipalChain) -> RatVec {
    let mut out = vec![num::BigRational::default(); n];
    for (block, lambda) in pp.blocks().into_iter().zip(&pp.values) {
        for s in block.iter() {
            out[s] = lambda.clone();
        }
    }
    RatVec(out)
}
