//! Maximizers of `p(X) − β|X|` and the ratio `max (p(X ∪ C) − p(C)) / |X|`.

use num::BigRational;

use crate::error::{Error, Result};
use crate::setfn::sfm::{SfmResult, DEFAULT_ENUMERATION_BOUND};
use crate::setfn::vector::{rat_int, to_i128};
use crate::setfn::{Ext, Subset, SupermodularOracle};

/// Maximizers of `p(Y) − β|Y|` over `Y ⊇ lo`, via SFM on `den·β·|Y| − den·p(Y)`.
pub fn maximizers_above(
    p: &SupermodularOracle,
    lo: Subset,
    beta: &BigRational,
) -> Result<SfmResult> {
    let num = to_i128(beta.numer())?;
    let den = to_i128(beta.denom())?;
    p.sfm().minimize(lo, p.full(), &|y| {
        Ext::Finite(num * y.len() as i128) - p.eval(y).scale(den)
    })
}

/// `L(β)`, the smallest maximizer of `p(X) − β|X|`.
pub fn smallest_maximizer(p: &SupermodularOracle, beta: &BigRational) -> Result<Subset> {
    Ok(maximizers_above(p, Subset::EMPTY, beta)?.smallest)
}

pub fn largest_maximizer(p: &SupermodularOracle, beta: &BigRational) -> Result<Subset> {
    Ok(maximizers_above(p, Subset::EMPTY, beta)?.largest)
}

pub fn smallest_maximizer_int(p: &SupermodularOracle, beta: i64) -> Result<Subset> {
    smallest_maximizer(p, &rat_int(beta as i128))
}

/// Computes `max over ∅ ≠ X ⊆ S − C of (p(X ∪ C) − p(C)) / |X|` for a chain member `C ≠ S`.
pub trait RatioMaximizer: Send + Sync {
    fn max_ratio(&self, p: &SupermodularOracle, base: Subset) -> Result<BigRational>;

    fn name(&self) -> &'static str;
}

/// Scans every nonempty `X`.
#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveRatio {
    pub max_free: usize,
}

impl Default for ExhaustiveRatio {
    fn default() -> Self {
        ExhaustiveRatio {
            max_free: DEFAULT_ENUMERATION_BOUND,
        }
    }
}

impl RatioMaximizer for ExhaustiveRatio {
    fn max_ratio(&self, p: &SupermodularOracle, base: Subset) -> Result<BigRational> {
        let free = p.full().difference(base);
        if free.len() > self.max_free {
            return Err(Error::EnumerationBound {
                what: "ratio maximization",
                n: free.len(),
                bound: self.max_free,
            });
        }
        let pc = p
            .eval(base)
            .finite()
            .ok_or(Error::InfiniteContractionBase)?;
        // (numerator, size) of the best ratio so far
        let mut best: Option<(i128, i128)> = None;
        for x in free.subsets().skip(1) {
            let Some(v) = p.eval(x.union(base)).finite() else {
                continue;
            };
            let cand = (v - pc, x.len() as i128);
            if best.is_none_or(|(bn, bd)| cand.0 * bd > bn * cand.1) {
                best = Some(cand);
            }
        }
        let (num, den) = best.expect("X = S − C has finite value");
        Ok(BigRational::new(num.into(), den.into()))
    }

    fn name(&self) -> &'static str {
        "exhaustive"
    }
}

/// Dinkelbach iteration driven by the oracle's SFM backend.
#[derive(Clone, Copy, Debug, Default)]
pub struct DinkelbachRatio;

impl RatioMaximizer for DinkelbachRatio {
    fn max_ratio(&self, p: &SupermodularOracle, base: Subset) -> Result<BigRational> {
        let pc = p
            .eval(base)
            .finite()
            .ok_or(Error::InfiniteContractionBase)?;
        let free = p.full().difference(base);
        let mut num = p.p_full() - pc;
        let mut den = free.len() as i128;
        loop {
            let r = p.sfm().minimize(base, p.full(), &|y| {
                Ext::Finite(num * y.difference(base).len() as i128) - (p.eval(y) - pc).scale(den)
            })?;
            if r.min_value >= Ext::ZERO {
                return Ok(BigRational::new(num.into(), den.into()));
            }
            let y = r.smallest;
            num = p.eval(y).finite().expect("minimizer has finite value") - pc;
            den = y.difference(base).len() as i128;
        }
    }

    fn name(&self) -> &'static str {
        "dinkelbach"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::setfn::vector::rat;

    #[test]
    fn smallest_maximizers_on_reference_tables() {
        let p = fixtures::line_segment();
        assert_eq!(smallest_maximizer_int(&p, 1).unwrap(), p.full());
        assert_eq!(smallest_maximizer_int(&p, 2).unwrap(), Subset::EMPTY);
        let q = fixtures::shifted_rank_two();
        assert_eq!(
            smallest_maximizer_int(&q, 1).unwrap(),
            Subset::from_elements([0, 1])
        );
        let r = fixtures::skewed_pair();
        assert_eq!(smallest_maximizer_int(&r, 2).unwrap(), Subset::singleton(0));
        assert_eq!(smallest_maximizer_int(&r, 3).unwrap(), Subset::EMPTY);
    }

    #[test]
    fn critical_value_has_two_maximizers() {
        let p = fixtures::line_segment();
        let r = maximizers_above(&p, Subset::EMPTY, &rat(3, 2)).unwrap();
        assert_eq!(r.smallest, Subset::EMPTY);
        assert_eq!(r.largest, p.full());
    }

    #[test]
    fn both_ratio_backends_agree() {
        for p in fixtures::all() {
            for base in p.full().subsets().filter(|&c| c != p.full()) {
                if !p.eval(base).is_finite() {
                    continue;
                }
                assert_eq!(
                    ExhaustiveRatio::default().max_ratio(&p, base).unwrap(),
                    DinkelbachRatio.max_ratio(&p, base).unwrap()
                );
            }
        }
        let q = fixtures::shifted_rank_two();
        assert_eq!(
            ExhaustiveRatio::default()
                .max_ratio(&q, Subset::EMPTY)
                .unwrap(),
            rat(3, 2)
        );
        assert_eq!(
            ExhaustiveRatio::default()
                .max_ratio(&q, Subset::from_elements([0, 1]))
                .unwrap(),
            rat(1, 2)
        );
    }
}
