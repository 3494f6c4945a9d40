//! Brute-force optimal sets and characterizations over an enumerated M-convex set.

use std::collections::HashSet;

use crate::decomp::big_g_a;
use crate::setfn::{IntVec, Subset};

fn best_by<K: Ord>(members: &[IntVec], key: impl Fn(&IntVec) -> K, want_max: bool) -> Vec<IntVec> {
    let keys: Vec<K> = members.iter().map(&key).collect();
    let best = if want_max {
        keys.iter().max()
    } else {
        keys.iter().min()
    };
    let Some(best) = best else {
        return Vec::new();
    };
    let mut out: Vec<IntVec> = members
        .iter()
        .zip(&keys)
        .filter(|(_, k)| *k == best)
        .map(|(m, _)| m.clone())
        .collect();
    out.sort();
    out
}

/// Members whose decreasingly sorted profile is lexicographically least.
pub fn brute_decmin_set(members: &[IntVec]) -> Vec<IntVec> {
    best_by(members, |m| m.decreasing_profile(), false)
}

/// Members whose increasingly sorted profile is lexicographically greatest.
pub fn brute_incmax_set(members: &[IntVec]) -> Vec<IntVec> {
    best_by(members, |m| m.increasing_profile(), true)
}

pub fn brute_sqsum_min_set(members: &[IntVec]) -> Vec<IntVec> {
    best_by(members, |m| m.square_sum(), false)
}

pub fn brute_min_square_sum(members: &[IntVec]) -> Option<i128> {
    members.iter().map(IntVec::square_sum).min()
}

pub fn brute_min_ga(members: &[IntVec], a: i64) -> Option<i64> {
    members.iter().map(|m| big_g_a(a, m)).min()
}

/// A 1-tightening step read off the member list.
pub fn brute_tightening_step(members: &HashSet<IntVec>, m: &IntVec) -> Option<(usize, usize)> {
    let n = m.dim();
    (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .find(|&(s, t)| m[t] >= m[s] + 2 && members.contains(&m.moved(s, t)))
}

/// Whether some chain `∅ ⊂ C_1 ⊂ … ⊂ C_k = S` of `m`-tight, `m`-top sets
/// has `m` near-uniform on every difference. Dynamic programming over all
/// subsets, so `n` must be small.
pub fn has_tight_top_chain(table: &[Option<i128>], m: &IntVec) -> bool {
    let n = m.dim();
    let full = Subset::full(n);
    let good = |x: Subset| table[x.bits() as usize] == Some(m.sum_over(x)) && m.is_top(x);
    let mut reachable = vec![false; 1 << n];
    reachable[0] = true;
    for x in full.subsets().skip(1) {
        if !good(x) {
            continue;
        }
        reachable[x.bits() as usize] = x
            .subsets()
            .filter(|&y| y != x)
            .any(|y| reachable[y.bits() as usize] && m.is_near_uniform_on(x.difference(y)));
    }
    reachable[full.bits() as usize]
}

/// Matroid basis exchange: for bases `A, B` and `a ∈ A − B` some `b ∈ B − A` has `A − a + b` a basis.
pub fn satisfies_basis_exchange(bases: &[Subset]) -> bool {
    let family: HashSet<Subset> = bases.iter().copied().collect();
    bases.iter().all(|&a| {
        bases.iter().all(|&b| {
            a.difference(b).iter().all(|x| {
                b.difference(a)
                    .iter()
                    .any(|y| family.contains(&a.without(x).with(y)))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::verify::enumerate::{enumerate_members, finite_table, DEFAULT_CAP};

    fn v(x: &[i64]) -> IntVec {
        IntVec(x.to_vec())
    }

    #[test]
    fn optimal_sets_of_reference_tables() {
        let e = enumerate_members(&fixtures::line_segment(), DEFAULT_CAP).unwrap();
        assert_eq!(brute_decmin_set(&e.members), vec![v(&[1, 2]), v(&[2, 1])]);
        let e = enumerate_members(&fixtures::shifted_rank_two(), DEFAULT_CAP).unwrap();
        let d = brute_decmin_set(&e.members);
        assert_eq!(
            d,
            vec![
                v(&[1, 2, 0, 1]),
                v(&[1, 2, 1, 0]),
                v(&[2, 1, 0, 1]),
                v(&[2, 1, 1, 0])
            ]
        );
        assert_eq!(brute_min_square_sum(&e.members), Some(6));
        assert_eq!(v(&[2, 2, 0, 0]).square_sum(), 8);
        assert_eq!(brute_incmax_set(&e.members), d);
        assert_eq!(brute_sqsum_min_set(&e.members), d);
        assert_eq!(brute_min_ga(&e.members, 1), Some(1));
    }

    #[test]
    fn dec_min_and_inc_max_differ_on_a_non_m_convex_pair() {
        let set = vec![v(&[2, 0, 0, 0]), v(&[1, -1, 1, 1])];
        assert_eq!(brute_decmin_set(&set), vec![v(&[1, -1, 1, 1])]);
        assert_eq!(brute_incmax_set(&set), vec![v(&[2, 0, 0, 0])]);
    }

    #[test]
    fn characterizations_on_shifted_rank_two() {
        let p = fixtures::shifted_rank_two();
        let e = enumerate_members(&p, DEFAULT_CAP).unwrap();
        let table = finite_table(&p);
        let members: HashSet<IntVec> = e.members.iter().cloned().collect();
        let m5 = v(&[2, 2, 0, 0]);
        assert_eq!(brute_tightening_step(&members, &m5), Some((2, 0)));
        assert!(!has_tight_top_chain(&table, &m5));
        let m1 = v(&[2, 1, 1, 0]);
        assert_eq!(brute_tightening_step(&members, &m1), None);
        assert!(has_tight_top_chain(&table, &m1));
    }

    #[test]
    fn basis_exchange() {
        let s = |e: &[usize]| Subset::from_elements(e.iter().copied());
        assert!(satisfies_basis_exchange(&[
            s(&[0, 2]),
            s(&[0, 3]),
            s(&[1, 2]),
            s(&[1, 3])
        ]));
        assert!(!satisfies_basis_exchange(&[s(&[0, 1]), s(&[2, 3])]));
    }
}
