//! Enumeration of the M-convex set by pruned search over the coordinate box.
//!
//! Only table lookups are used, no SFM, so the result is an independent
//! reference for the oracle-based operations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setfn::{Ext, IntVec, Subset, SupermodularOracle};

pub const DEFAULT_CAP: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedSet {
    /// Members in lexicographic order.
    pub members: Vec<IntVec>,
    /// Per-element `[p({s}), p(S) − p(S − s)]`.
    pub bounds: Vec<(i64, i64)>,
}

impl EnumeratedSet {
    pub fn contains(&self, x: &IntVec) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

/// Table of `p` as `Option<i128>` (`None` for `−∞`), indexed by bitmask.
pub fn finite_table(p: &SupermodularOracle) -> Vec<Option<i128>> {
    p.table().into_iter().map(Ext::finite).collect()
}

/// Membership by checking every subset directly.
pub fn brute_is_member(table: &[Option<i128>], x: &IntVec) -> bool {
    let n = x.dim();
    let full = Subset::full(n);
    if table[full.bits() as usize] != Some(x.total()) {
        return false;
    }
    full.subsets().all(|z| match table[z.bits() as usize] {
        Some(v) => x.sum_over(z) >= v,
        None => true,
    })
}

pub fn component_bounds(p: &SupermodularOracle) -> Result<Vec<(i64, i64)>> {
    (0..p.n())
        .map(|s| {
            let lo = p
                .eval(Subset::singleton(s))
                .finite()
                .ok_or(Error::InfiniteBound(s))?;
            let hi = p
                .complement_b(Subset::singleton(s))
                .finite()
                .ok_or(Error::InfiniteBound(s))?;
            let lo = i64::try_from(lo).map_err(|_| Error::Overflow)?;
            let hi = i64::try_from(hi).map_err(|_| Error::Overflow)?;
            Ok((lo, hi))
        })
        .collect()
}

/// All integer points of `B'(p)`; fails when a bound is infinite or the box volume exceeds `cap`.
pub fn enumerate_members(p: &SupermodularOracle, cap: u128) -> Result<EnumeratedSet> {
    let bounds = component_bounds(p)?;
    let volume = bounds.iter().try_fold(1u128, |acc, &(lo, hi)| {
        let width = (hi - lo + 1).max(0) as u128;
        acc.checked_mul(width)
    });
    match volume {
        Some(v) if v <= cap => {}
        Some(v) => return Err(Error::CapExceeded { volume: v, cap }),
        None => {
            return Err(Error::CapExceeded {
                volume: u128::MAX,
                cap,
            })
        }
    }
    let table = finite_table(p);
    let n = p.n();
    let total = p.p_full();
    // suffix sums of the bounds, for pruning on the remaining total
    let mut min_rest = vec![0i128; n + 1];
    let mut max_rest = vec![0i128; n + 1];
    for s in (0..n).rev() {
        min_rest[s] = min_rest[s + 1] + bounds[s].0 as i128;
        max_rest[s] = max_rest[s + 1] + bounds[s].1 as i128;
    }
    let mut members = Vec::new();
    let mut x = IntVec::constant(n, 0);
    search(
        &table,
        &bounds,
        &min_rest,
        &max_rest,
        total,
        0,
        0,
        &mut x,
        &mut members,
    );
    members.retain(|m| brute_is_member(&table, m));
    members.sort();
    Ok(EnumeratedSet { members, bounds })
}

#[allow(clippy::too_many_arguments)]
fn search(
    table: &[Option<i128>],
    bounds: &[(i64, i64)],
    min_rest: &[i128],
    max_rest: &[i128],
    total: i128,
    k: usize,
    sum: i128,
    x: &mut IntVec,
    out: &mut Vec<IntVec>,
) {
    let n = bounds.len();
    if k == n {
        if sum == total {
            out.push(x.clone());
        }
        return;
    }
    let prefix = Subset::full(k);
    for v in bounds[k].0..=bounds[k].1 {
        let new_sum = sum + v as i128;
        let rest = total - new_sum;
        if rest < min_rest[k + 1] || rest > max_rest[k + 1] {
            continue;
        }
        x[k] = v;
        // lower bounds on sets inside the new prefix that contain k
        let ok = prefix.subsets().all(|z| {
            let z = z.with(k);
            match table[z.bits() as usize] {
                Some(pv) => x.sum_over(z) >= pv,
                None => true,
            }
        });
        if ok {
            search(
                table,
                bounds,
                min_rest,
                max_rest,
                total,
                k + 1,
                new_sum,
                x,
                out,
            );
        }
    }
    x[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::setfn::GroundSet;

    fn v(x: &[i64]) -> IntVec {
        IntVec(x.to_vec())
    }

    #[test]
    fn reference_sets() {
        let e = enumerate_members(&fixtures::line_segment(), DEFAULT_CAP).unwrap();
        assert_eq!(e.members, vec![v(&[0, 3]), v(&[1, 2]), v(&[2, 1])]);
        let e = enumerate_members(&fixtures::shifted_rank_two(), DEFAULT_CAP).unwrap();
        assert_eq!(
            e.members,
            vec![
                v(&[1, 2, 0, 1]),
                v(&[1, 2, 1, 0]),
                v(&[2, 1, 0, 1]),
                v(&[2, 1, 1, 0]),
                v(&[2, 2, 0, 0])
            ]
        );
        let e = enumerate_members(&fixtures::skewed_pair(), DEFAULT_CAP).unwrap();
        assert_eq!(e.members, vec![v(&[3, 2]), v(&[4, 1]), v(&[5, 0])]);
        assert_eq!(e.bounds, vec![(3, 5), (0, 2)]);
        let e = enumerate_members(&fixtures::crossed_pairs(), DEFAULT_CAP).unwrap();
        assert_eq!(e.members.len(), 4);
    }

    #[test]
    fn modular_set_is_a_point() {
        let w = [2i128, -3, 5];
        let p = SupermodularOracle::from_fn(GroundSet::new(3).unwrap(), move |x| {
            Ext::Finite(x.iter().map(|i| w[i]).sum())
        })
        .unwrap();
        let e = enumerate_members(&p, DEFAULT_CAP).unwrap();
        assert_eq!(e.members, vec![v(&[2, -3, 5])]);
    }

    #[test]
    fn infinite_bounds_and_cap() {
        let p = SupermodularOracle::from_table(
            GroundSet::new(2).unwrap(),
            vec![Ext::ZERO, Ext::NegInf, Ext::ZERO, Ext::Finite(1)],
        )
        .unwrap();
        assert_eq!(
            enumerate_members(&p, DEFAULT_CAP).unwrap_err(),
            Error::InfiniteBound(0)
        );
        let q = fixtures::skewed_pair();
        assert_eq!(
            enumerate_members(&q, 8).unwrap_err(),
            Error::CapExceeded { volume: 9, cap: 8 }
        );
    }

    #[test]
    fn members_agree_with_oracle_membership() {
        for p in fixtures::all() {
            let e = enumerate_members(&p, DEFAULT_CAP).unwrap();
            let table = finite_table(&p);
            let ranges: Vec<_> = e.bounds.clone();
            // every point of the bounds box
            let mut point = IntVec(ranges.iter().map(|r| r.0).collect());
            loop {
                let member = e.contains(&point);
                assert_eq!(member, p.is_member(&point).unwrap());
                assert_eq!(member, brute_is_member(&table, &point));
                let mut i = 0;
                while i < point.dim() && point[i] == ranges[i].1 {
                    point[i] = ranges[i].0;
                    i += 1;
                }
                if i == point.dim() {
                    break;
                }
                point[i] += 1;
            }
        }
    }
}
