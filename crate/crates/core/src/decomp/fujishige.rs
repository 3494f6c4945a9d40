//! Decomposition driven by a minimizer of the separable penalty `G_a`,
//! which only charges values outside `{a, a+1}`.

use super::trace::{DecompTrace, TraceNode};
use super::{assemble, DecompResult};
use crate::error::{Error, Result};
use crate::setfn::vector::floor_div;
use crate::setfn::{IntVec, Subset, SupermodularOracle};

#[derive(Clone, Debug, Default)]
pub struct FujishigeOptions {
    /// Local-search seed at the root; defaults to the identity-order greedy vertex.
    pub root_start: Option<IntVec>,
}

/// `g_a(k) = max(a − k, 0, k − a − 1)`.
pub fn g_a(a: i64, k: i64) -> i64 {
    (a - k).max(0).max(k - a - 1)
}

pub fn big_g_a(a: i64, z: &IntVec) -> i64 {
    z.iter().map(|&k| g_a(a, k)).sum()
}

/// Exchange local search for a minimizer of `G_a` from the member `start`.
///
/// Repeatedly applies the lexicographically first `(s, t)` with
/// `z(s) ≤ a`, `z(t) ≥ a+1`, `z(t) ≥ z(s)+2` and `z + χ_s − χ_t` a member.
/// Returns the terminal point and the moves taken.
pub fn minimize_ga(
    p: &SupermodularOracle,
    a: i64,
    start: &IntVec,
) -> Result<(IntVec, Vec<(usize, usize)>)> {
    if !p.is_member(start)? {
        return Err(Error::NotAMember);
    }
    let n = p.n();
    let mut z = start.clone();
    let mut moves = Vec::new();
    'search: loop {
        for s in 0..n {
            for t in 0..n {
                if z[s] <= a && z[t] > a && z[t] >= z[s] + 2 && p.exchange_feasible(&z, s, t)? {
                    z = z.moved(s, t);
                    moves.push((s, t));
                    continue 'search;
                }
            }
        }
        return Ok((z, moves));
    }
}

/// The split `(S₊, S₋, S₀)` of a `G_a`-minimizer `z`.
pub fn split_fujishige(
    p: &SupermodularOracle,
    z: &IntVec,
    a: i64,
) -> Result<(Subset, Subset, Subset)> {
    let full = p.full();
    let mut s_plus = Subset::EMPTY;
    for t in (0..p.n()).filter(|&t| z[t] >= a + 2) {
        s_plus = s_plus.union(p.dependence_set(z, t)?);
    }
    let mut s_minus = Subset::EMPTY;
    for s in (0..p.n()).filter(|&s| z[s] < a) {
        // t is reachable from s unless some tight set avoiding s contains t
        let blocked = p.min_slack(z, Subset::EMPTY, full.without(s))?.largest;
        s_minus = s_minus.union(full.difference(blocked));
    }
    let s_zero = full.difference(s_plus.union(s_minus));

    let level =
        |pred: &dyn Fn(i64) -> bool| -> Subset { (0..p.n()).filter(|&s| pred(z[s])).collect() };
    let sandwich = level(&|k| k >= a + 2).is_subset_of(s_plus)
        && s_plus.is_subset_of(level(&|k| k > a))
        && level(&|k| k < a).is_subset_of(s_minus)
        && s_minus.is_subset_of(level(&|k| k <= a));
    if !sandwich || s_plus == full || s_minus == full {
        return Err(Error::Invalid(format!(
            "split S+={s_plus:?} S-={s_minus:?} violates its value bounds; z is not a G_a minimizer"
        )));
    }
    Ok((s_plus, s_minus, s_zero))
}

pub fn fujishige_decmin(p: &SupermodularOracle, opts: &FujishigeOptions) -> Result<DecompResult> {
    let map: Vec<usize> = (0..p.n()).collect();
    let root = node(p, &map, Subset::EMPTY, opts.root_start.as_ref())?;
    Ok(DecompResult {
        z: root.output.clone(),
        trace: DecompTrace {
            algorithm: "fujishige",
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
    start: Option<&IntVec>,
) -> Result<TraceNode> {
    let n = p.n();
    let a = i64::try_from(floor_div(p.p_full(), n as i128)).map_err(|_| Error::Overflow)?;
    let x = match start {
        Some(s) => s.clone(),
        None => p.identity_greedy_vertex()?,
    };
    let (z, moves) = minimize_ga(p, a, &x)?;
    let (s_plus, s_minus, s_zero) = split_fujishige(p, &z, a)?;
    let mut out = TraceNode {
        elements: map.to_vec(),
        base,
        a,
        x,
        y: None,
        z: Some(z.clone()),
        moves: moves.iter().map(|&(s, t)| (map[s], map[t])).collect(),
        s_plus: lift(s_plus, map),
        s_minus: lift(s_minus, map),
        s_zero: lift(s_zero, map),
        output: z.clone(),
        children: Vec::new(),
    };
    let zero_local = IntVec(s_zero.iter().map(|s| z[s]).collect());
    let mut parts = vec![(s_zero, zero_local)];
    if !s_plus.is_empty() {
        let sub_map: Vec<usize> = s_plus.iter().map(|i| map[i]).collect();
        let child = node(&p.restriction(s_plus)?, &sub_map, base, None)?;
        parts.push((s_plus, child.output.clone()));
        out.children.push(child);
    }
    if !s_minus.is_empty() {
        let sub_map: Vec<usize> = s_minus.iter().map(|i| map[i]).collect();
        let minus_base = base.union(lift(p.full().difference(s_minus), map));
        let child = node(&p.contraction(s_minus)?, &sub_map, minus_base, None)?;
        parts.push((s_minus, child.output.clone()));
        out.children.push(child);
    }
    if !out.children.is_empty() {
        let refs: Vec<(Subset, &IntVec)> = parts.iter().map(|(s, v)| (*s, v)).collect();
        out.output = assemble(n, &refs);
    }
    Ok(out)
}
