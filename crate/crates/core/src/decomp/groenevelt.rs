//! Decomposition driven by the uniform single-constraint solution and a
//! minimal dominating vector in the supermodular polyhedron `Q`.

use super::trace::{DecompTrace, TraceNode};
use super::{assemble, DecompResult};
use crate::error::{Error, Result};
use crate::setfn::vector::floor_div;
use crate::setfn::{Ext, IntVec, Subset, SupermodularOracle};

/// Which `k` elements receive `a + 1` in the single-constraint solution.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieRule {
    #[default]
    Lowest,
    Highest,
}

/// Element order for the coordinate passes of [`minimal_dominating_in_q`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DominatorOrder {
    #[default]
    Index,
    Reverse,
}

impl DominatorOrder {
    fn order(self, n: usize) -> Vec<usize> {
        match self {
            DominatorOrder::Index => (0..n).collect(),
            DominatorOrder::Reverse => (0..n).rev().collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroeneveltOptions {
    /// Replaces the single-constraint solution at the root node.
    pub root_start: Option<IntVec>,
    pub tie: TieRule,
    pub dominator_order: DominatorOrder,
}

/// `a·1 + χ_U` with `a = ⌊pS/n⌋` and `|U| = pS − a·n`.
pub fn single_constraint_solution(p_s: i128, n: usize, tie: TieRule) -> Result<IntVec> {
    let a = floor_div(p_s, n as i128);
    let k = (p_s - a * n as i128) as usize;
    let a = i64::try_from(a).map_err(|_| Error::Overflow)?;
    let mut x = IntVec::constant(n, a);
    let chosen: Vec<usize> = match tie {
        TieRule::Lowest => (0..k).collect(),
        TieRule::Highest => (n - k..n).collect(),
    };
    for s in chosen {
        x[s] += 1;
    }
    Ok(x)
}

/// Smallest value of `y(s)` keeping `ỹ(X) ≥ p(X)` for every `X ∋ s`, given the other coordinates.
fn coordinate_bound(p: &SupermodularOracle, y: &IntVec, s: usize) -> Result<i128> {
    let r = p.sfm().minimize(Subset::singleton(s), p.full(), &|x| {
        Ext::Finite(y.sum_over(x.without(s))) - p.eval(x)
    })?;
    match r.min_value {
        Ext::Finite(v) => Ok(-v),
        // every X ∋ s has p(X) = −∞
        _ => Ok(i128::MIN),
    }
}

/// A minimal `y ≥ x` with `ỹ(X) ≥ p(X)` for all `X`.
///
/// A raising pass in `order` makes `y` feasible; a lowering pass in the
/// same order then sets each coordinate to its least feasible value, which
/// leaves no coordinate that can be decreased.
pub fn minimal_dominating_in_q(
    p: &SupermodularOracle,
    x: &IntVec,
    order: &[usize],
) -> Result<IntVec> {
    if x.dim() != p.n() {
        return Err(Error::Dimension {
            expected: p.n(),
            got: x.dim(),
        });
    }
    let mut y = x.clone();
    for &s in order {
        let bound = coordinate_bound(p, &y, s)?;
        if bound > y[s] as i128 {
            y[s] = i64::try_from(bound).map_err(|_| Error::Overflow)?;
        }
    }
    for &s in order {
        let bound = coordinate_bound(p, &y, s)?.max(x[s] as i128);
        y[s] = i64::try_from(bound).map_err(|_| Error::Overflow)?;
    }
    Ok(y)
}

pub fn groenevelt_decmin(p: &SupermodularOracle, opts: &GroeneveltOptions) -> Result<DecompResult> {
    let map: Vec<usize> = (0..p.n()).collect();
    let root = node(p, &map, Subset::EMPTY, opts, true)?;
    Ok(DecompResult {
        z: root.output.clone(),
        trace: DecompTrace {
            algorithm: "groenevelt",
            root,
        },
    })
}

fn lift(set: Subset, map: &[usize]) -> Subset {
    set.iter().map(|i| map[i]).collect()
}

fn node(
    p: &SupermodularOracle,
    map: &[usize],
    base: Subset,
    opts: &GroeneveltOptions,
    root: bool,
) -> Result<TraceNode> {
    let n = p.n();
    let p_s = p.p_full();
    let a = i64::try_from(floor_div(p_s, n as i128)).map_err(|_| Error::Overflow)?;
    let x = match (&opts.root_start, root) {
        (Some(start), true) => {
            if start.dim() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: start.dim(),
                });
            }
            if start.total() != p_s {
                return Err(Error::Invalid(format!(
                    "start vector sums to {}, expected p(S) = {p_s}",
                    start.total()
                )));
            }
            start.clone()
        }
        _ => single_constraint_solution(p_s, n, opts.tie)?,
    };
    let mut out = TraceNode {
        elements: map.to_vec(),
        base,
        a,
        x: x.clone(),
        y: None,
        z: None,
        moves: Vec::new(),
        s_plus: Subset::EMPTY,
        s_minus: Subset::EMPTY,
        s_zero: Subset::EMPTY,
        output: x.clone(),
        children: Vec::new(),
    };
    if p.is_member(&x)? {
        return Ok(out);
    }
    let y = minimal_dominating_in_q(p, &x, &opts.dominator_order.order(n))?;
    let s_plus = p.largest_tight(&y)?;
    if s_plus.is_empty() || s_plus == p.full() {
        return Err(Error::Invalid(format!(
            "largest tight set {s_plus:?} of the dominator is trivial"
        )));
    }
    if let Some(s) = (0..n).find(|&s| !s_plus.contains(s) && y[s] != x[s]) {
        return Err(Error::Invalid(format!(
            "dominator differs from the start outside the tight set at element {s}"
        )));
    }
    let s_minus = p.full().difference(s_plus);
    let plus_map: Vec<usize> = s_plus.iter().map(|i| map[i]).collect();
    let minus_map: Vec<usize> = s_minus.iter().map(|i| map[i]).collect();
    let plus = node(&p.restriction(s_plus)?, &plus_map, base, opts, false)?;
    let minus_base = base.union(lift(s_plus, map));
    let minus = node(
        &p.contraction(s_minus)?,
        &minus_map,
        minus_base,
        opts,
        false,
    )?;
    out.output = assemble(n, &[(s_plus, &plus.output), (s_minus, &minus.output)]);
    out.y = Some(y);
    out.s_plus = lift(s_plus, map);
    out.s_minus = lift(s_minus, map);
    out.children = vec![plus, minus];
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(x: &[i64]) -> IntVec {
        IntVec(x.to_vec())
    }

    #[test]
    fn single_constraint_solutions() {
        assert_eq!(
            single_constraint_solution(5, 2, TieRule::Lowest).unwrap(),
            v(&[3, 2])
        );
        assert_eq!(
            single_constraint_solution(5, 2, TieRule::Highest).unwrap(),
            v(&[2, 3])
        );
        assert_eq!(
            single_constraint_solution(2, 4, TieRule::Lowest).unwrap(),
            v(&[1, 1, 0, 0])
        );
        assert_eq!(
            single_constraint_solution(6, 3, TieRule::Lowest).unwrap(),
            v(&[2, 2, 2])
        );
        assert_eq!(
            single_constraint_solution(-3, 2, TieRule::Lowest).unwrap(),
            v(&[-1, -2])
        );
    }

    #[test]
    fn dominators() {
        let r = fixtures::skewed_pair();
        assert_eq!(
            minimal_dominating_in_q(&r, &v(&[2, 3]), &[0, 1]).unwrap(),
            v(&[3, 3])
        );
        assert_eq!(
            minimal_dominating_in_q(&r, &v(&[3, 2]), &[0, 1]).unwrap(),
            v(&[3, 2])
        );
        let c = fixtures::crossed_pairs();
        assert_eq!(
            minimal_dominating_in_q(&c, &v(&[0, 0, 1, 1]), &[3, 2, 1, 0]).unwrap(),
            v(&[0, 1, 1, 1])
        );
    }

    #[test]
    fn dominators_are_minimal_and_feasible() {
        let c = fixtures::crossed_pairs();
        for order in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![1, 3, 0, 2]] {
            let x = v(&[0, 0, 1, 1]);
            let y = minimal_dominating_in_q(&c, &x, &order).unwrap();
            assert!(c.largest_tight(&y).is_ok());
            for s in 0..4 {
                assert!(y[s] >= x[s]);
                if y[s] > x[s] {
                    let mut lower = y.clone();
                    lower[s] -= 1;
                    assert_eq!(c.largest_tight(&lower).unwrap_err(), Error::NotInQ);
                }
            }
        }
    }

    #[test]
    fn skewed_pair_split() {
        let r = fixtures::skewed_pair();
        let opts = GroeneveltOptions {
            root_start: Some(v(&[2, 3])),
            ..Default::default()
        };
        let res = groenevelt_decmin(&r, &opts).unwrap();
        assert_eq!(res.z, v(&[3, 2]));
        assert_eq!(res.trace.root.y, Some(v(&[3, 3])));
        assert_eq!(res.trace.root.s_plus, Subset::singleton(0));
        assert_eq!(res.trace.root.s_minus, Subset::singleton(1));

        let res = groenevelt_decmin(&r, &GroeneveltOptions::default()).unwrap();
        assert_eq!(res.z, v(&[3, 2]));
        assert!(res.trace.root.is_leaf());
    }

    #[test]
    fn crossed_pairs_split_is_finer_than_canonical() {
        let c = fixtures::crossed_pairs();
        let opts = GroeneveltOptions {
            root_start: Some(v(&[0, 0, 1, 1])),
            dominator_order: DominatorOrder::Reverse,
            ..Default::default()
        };
        let res = groenevelt_decmin(&c, &opts).unwrap();
        assert_eq!(res.trace.root.y, Some(v(&[0, 1, 1, 1])));
        assert_eq!(res.trace.root.s_plus, Subset::from_elements([0, 1]));
        assert_eq!(res.trace.root.s_minus, Subset::from_elements([2, 3]));
        assert_eq!(res.z, v(&[1, 0, 1, 0]));
    }

    #[test]
    fn reference_outputs_are_members_with_least_square_sum() {
        for (p, w) in [
            (fixtures::line_segment(), 5),
            (fixtures::shifted_rank_two(), 6),
            (fixtures::skewed_pair(), 13),
            (fixtures::crossed_pairs(), 2),
        ] {
            for tie in [TieRule::Lowest, TieRule::Highest] {
                for dominator_order in [DominatorOrder::Index, DominatorOrder::Reverse] {
                    let opts = GroeneveltOptions {
                        root_start: None,
                        tie,
                        dominator_order,
                    };
                    let z = groenevelt_decmin(&p, &opts).unwrap().z;
                    assert!(p.is_member(&z).unwrap());
                    assert_eq!(z.square_sum(), w);
                }
            }
        }
    }
}
