//! Small reference instances with known answers, used by tests and the CLI demos.

use crate::instance::{Instance, PSpec};
use crate::setfn::{Subset, SupermodularOracle};

fn from_fn(n: usize, f: impl Fn(Subset) -> i64) -> SupermodularOracle {
    let values: Vec<i64> = Subset::full(n).subsets().map(f).collect();
    SupermodularOracle::from_values(&values).expect("fixture tables are valid")
}

/// Two elements, `⊙B = {(0,3), (1,2), (2,1)}`.
pub fn line_segment() -> SupermodularOracle {
    SupermodularOracle::from_values(&[0, 0, 1, 3]).unwrap()
}

/// Four elements, `⊙B` = bases of a rank-2 matroid shifted by `(1,1,0,0)`:
/// `(2,1,1,0), (2,1,0,1), (1,2,1,0), (1,2,0,1), (2,2,0,0)`.
pub fn shifted_rank_two() -> SupermodularOracle {
    from_fn(4, |x| {
        let top = x.intersection(Subset::from_elements([0, 1])).len() as i64;
        let bottom = x.intersection(Subset::from_elements([2, 3])).len() as i64;
        match (top, bottom) {
            (0, _) => 0,
            (1, 0) => 1,
            (1, 1) => 1,
            (1, 2) => 2,
            (2, 2) => 4,
            (2, _) => 3,
            _ => unreachable!(),
        }
    })
}

/// Two elements, `⊙B = {(3,2), (4,1), (5,0)}`.
pub fn skewed_pair() -> SupermodularOracle {
    SupermodularOracle::from_values(&[0, 3, 0, 5]).unwrap()
}

/// Four elements, `⊙B = {(1,0,1,0), (1,0,0,1), (0,1,0,1), (0,1,1,0)}`; every member is dec-min.
pub fn crossed_pairs() -> SupermodularOracle {
    from_fn(4, |x| match x.len() {
        0 | 1 => 0,
        2 if x == Subset::from_elements([0, 1]) || x == Subset::from_elements([2, 3]) => 1,
        2 => 0,
        3 => 1,
        _ => 2,
    })
}

pub fn all() -> Vec<SupermodularOracle> {
    vec![
        line_segment(),
        shifted_rank_two(),
        skewed_pair(),
        crossed_pairs(),
    ]
}

/// Looks up a fixture by name.
pub fn by_name(name: &str) -> Option<SupermodularOracle> {
    match name {
        "line-segment" => Some(line_segment()),
        "shifted-rank-two" => Some(shifted_rank_two()),
        "skewed-pair" => Some(skewed_pair()),
        "crossed-pairs" => Some(crossed_pairs()),
        _ => None,
    }
}

/// A fixture as an explicit-table instance.
pub fn instance(name: &str) -> Option<Instance> {
    let p = by_name(name)?;
    Some(Instance::new(p.n(), PSpec::Table(p.table())).expect("fixture tables are valid"))
}

pub const NAMES: [&str; 4] = [
    "line-segment",
    "shifted-rank-two",
    "skewed-pair",
    "crossed-pairs",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::Ext;

    #[test]
    fn shifted_rank_two_matches_listed_values() {
        let p = shifted_rank_two();
        let v = |e: &[usize]| p.eval(Subset::from_elements(e.iter().copied()));
        assert_eq!(v(&[0]), Ext::Finite(1));
        assert_eq!(v(&[2]), Ext::ZERO);
        assert_eq!(v(&[0, 1]), Ext::Finite(3));
        assert_eq!(v(&[2, 3]), Ext::ZERO);
        assert_eq!(v(&[0, 2]), Ext::Finite(1));
        assert_eq!(v(&[1, 3]), Ext::Finite(1));
        assert_eq!(v(&[0, 1, 2]), Ext::Finite(3));
        assert_eq!(v(&[0, 2, 3]), Ext::Finite(2));
        assert_eq!(v(&[0, 1, 2, 3]), Ext::Finite(4));
    }

    #[test]
    fn crossed_pairs_matches_listed_values() {
        let p = crossed_pairs();
        assert_eq!(p.p_full(), 2);
        for s in 0..4 {
            assert_eq!(p.eval(Subset::singleton(s)), Ext::ZERO);
            assert_eq!(p.eval(p.full().without(s)), Ext::Finite(1));
        }
        assert_eq!(p.eval(Subset::from_elements([2, 3])), Ext::Finite(1));
        assert_eq!(p.eval(Subset::from_elements([0, 2])), Ext::ZERO);
    }

    #[test]
    fn names_resolve() {
        for name in NAMES {
            assert!(by_name(name).is_some());
        }
        assert!(by_name("nope").is_none());
    }
}
