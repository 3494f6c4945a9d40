//! Scan of the integer min-max identity for the square-sum:
//! `min W = max over integer π of p̂(π) − Σ ⌊π/2⌋⌈π/2⌉`.

use num::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setfn::vector::{format_rational, rat_int};
use crate::setfn::{IntVec, RatVec, Subset, SupermodularOracle};

pub const DUALITY_MAX_N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub min_square_sum: i128,
    pub scan_bound: i64,
    pub scanned: u64,
    pub best_dual: Option<i128>,
    pub best_pi: Option<Vec<i64>>,
    /// A scanned `π` whose dual value exceeds the primal minimum.
    pub weak_violation: Option<Vec<i64>>,
    pub equality_attained: bool,
    /// `Σ m_R(s)²` and the continuous dual value at `π = 2·m_R`.
    pub continuous_primal: String,
    pub continuous_dual: String,
    pub continuous_equal: bool,
}

impl DualityReport {
    pub fn weak_duality_holds(&self) -> bool {
        self.weak_violation.is_none()
    }
}

/// `2·max|bound| + 2`.
pub fn default_scan_bound(bounds: &[(i64, i64)]) -> i64 {
    let m = bounds
        .iter()
        .map(|&(lo, hi)| lo.abs().max(hi.abs()))
        .max()
        .unwrap_or(0);
    2 * m + 2
}

/// `p̂(π)` from a table; `None` when a positive gap meets `p = −∞`.
pub(crate) fn lovasz_from_table(table: &[Option<i128>], pi: &[i64]) -> Option<i128> {
    let n = pi.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pi[b].cmp(&pi[a]).then(a.cmp(&b)));
    let mut prefix = Subset::EMPTY;
    let mut total = 0i128;
    for j in 0..n {
        let s = order[j];
        prefix = prefix.with(s);
        let gap = match order.get(j + 1) {
            Some(&t) => pi[s] as i128 - pi[t] as i128,
            None => pi[s] as i128,
        };
        if gap != 0 {
            total += table[prefix.bits() as usize]? * gap;
        }
    }
    Some(total)
}

fn floor_ceil_half(k: i64) -> i128 {
    let k = k as i128;
    k.div_euclid(2) * (-(-k).div_euclid(2))
}

pub fn check_minmax_duality(
    p: &SupermodularOracle,
    members: &[IntVec],
    min_norm: &RatVec,
    scan_bound: i64,
) -> Result<DualityReport> {
    let n = p.n();
    if n > DUALITY_MAX_N {
        return Err(Error::EnumerationBound {
            what: "duality scan",
            n,
            bound: DUALITY_MAX_N,
        });
    }
    let min_w = members
        .iter()
        .map(IntVec::square_sum)
        .min()
        .ok_or_else(|| Error::Invalid("empty member list".into()))?;
    let table: Vec<Option<i128>> = p.table().into_iter().map(|v| v.finite()).collect();
    let mut pi = vec![-scan_bound; n];
    let mut scanned = 0u64;
    let mut best: Option<(i128, Vec<i64>)> = None;
    let mut violation = None;
    loop {
        scanned += 1;
        if let Some(hat) = lovasz_from_table(&table, &pi) {
            let dual = hat - pi.iter().map(|&k| floor_ceil_half(k)).sum::<i128>();
            if dual > min_w && violation.is_none() {
                violation = Some(pi.clone());
            }
            if best.as_ref().is_none_or(|(b, _)| dual > *b) {
                best = Some((dual, pi.clone()));
            }
        }
        let mut i = 0;
        while i < n && pi[i] == scan_bound {
            pi[i] = -scan_bound;
            i += 1;
        }
        if i == n {
            break;
        }
        pi[i] += 1;
    }

    let primal: BigRational = min_norm.square_sum();
    let two = rat_int(2);
    let doubled = RatVec(min_norm.iter().map(|q| q * &two).collect());
    let dual = p.lovasz_extension(&doubled)? - min_norm.square_sum();
    Ok(DualityReport {
        min_square_sum: min_w,
        scan_bound,
        scanned,
        equality_attained: best.as_ref().is_some_and(|(b, _)| *b == min_w),
        best_dual: best.as_ref().map(|(b, _)| *b),
        best_pi: best.map(|(_, pi)| pi),
        weak_violation: violation,
        continuous_equal: primal == dual,
        continuous_primal: format_rational(&primal),
        continuous_dual: format_rational(&dual),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::partitions::min_norm_point;
    use crate::verify::enumerate::{enumerate_members, DEFAULT_CAP};

    #[test]
    fn floor_ceil_products() {
        assert_eq!(floor_ceil_half(3), 2);
        assert_eq!(floor_ceil_half(4), 4);
        assert_eq!(floor_ceil_half(-3), 2);
        assert_eq!(floor_ceil_half(0), 0);
        assert_eq!(floor_ceil_half(1), 0);
    }

    #[test]
    fn zero_potential_gives_zero() {
        let p = fixtures::line_segment();
        let table: Vec<Option<i128>> = p.table().into_iter().map(|v| v.finite()).collect();
        assert_eq!(lovasz_from_table(&table, &[0, 0]), Some(0));
    }

    #[test]
    fn reference_tables_attain_equality() {
        for (p, w) in [
            (fixtures::line_segment(), 5),
            (fixtures::shifted_rank_two(), 6),
        ] {
            let e = enumerate_members(&p, DEFAULT_CAP).unwrap();
            let mr = min_norm_point(&p).unwrap();
            let r = check_minmax_duality(&p, &e.members, &mr, 8).unwrap();
            assert_eq!(r.min_square_sum, w);
            assert!(r.weak_duality_holds());
            assert!(r.equality_attained);
            assert!(r.continuous_equal);
        }
    }
}
