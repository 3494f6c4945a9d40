use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::sfm::{ExhaustiveSfm, SfmBackend};
use super::subset::MAX_ELEMENTS;
use super::{Ext, Subset};
use crate::error::{Error, Result};

/// The ground set `S`, identified with `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroundSet {
    pub n: usize,
    pub names: Vec<String>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_names((1..=n).map(|i| format!("s{i}")).collect())
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut sorted: Vec<&String> = names.iter().collect();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate element name {:?}", w[0])));
        }
        Ok(GroundSet { n, names })
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn render(&self, set: Subset) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Evaluation counters. `calls` counts every request, including requests to
/// minors, which share the counter of the oracle they were derived from;
/// `evaluations` counts this oracle's cache misses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub calls: u64,
    pub evaluations: u64,
}

pub type SetFn = dyn Fn(Subset) -> Ext + Send + Sync;

enum Source {
    Table(Vec<Ext>),
    Function(Arc<SetFn>),
    Minor {
        parent: SupermodularOracle,
        /// Parent index of each local element.
        elements: Vec<usize>,
        /// Parent set contracted away.
        base: Subset,
        base_value: i128,
    },
}

struct Inner {
    ground: GroundSet,
    source: Source,
    memo: RwLock<HashMap<u32, Ext>>,
    calls: Arc<AtomicU64>,
    evaluations: AtomicU64,
    sfm: Arc<dyn SfmBackend>,
}

/// Evaluation oracle for an integer-valued supermodular `p` with `p(∅) = 0`
/// and `p(S)` finite. Cheap to clone; clones share the cache and counters.
#[derive(Clone)]
pub struct SupermodularOracle {
    inner: Arc<Inner>,
}

impl fmt::Debug for SupermodularOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupermodularOracle")
            .field("n", &self.n())
            .field("stats", &self.stats())
            .finish()
    }
}

impl SupermodularOracle {
    fn build(ground: GroundSet, source: Source, sfm: Arc<dyn SfmBackend>) -> Self {
        let calls = match &source {
            Source::Minor { parent, .. } => parent.inner.calls.clone(),
            _ => Arc::new(AtomicU64::new(0)),
        };
        SupermodularOracle {
            inner: Arc::new(Inner {
                ground,
                source,
                memo: RwLock::new(HashMap::new()),
                calls,
                evaluations: AtomicU64::new(0),
                sfm,
            }),
        }
    }

    /// Oracle over an explicit table indexed by bitmask. Checks the table
    /// length, `p(∅) = 0` and finiteness of `p(S)`; supermodularity is
    /// checked separately by [`check_supermodular`](Self::check_supermodular).
    pub fn from_table(ground: GroundSet, table: Vec<Ext>) -> Result<Self> {
        let expected = 1usize << ground.n;
        if table.len() != expected {
            return Err(Error::TableLength {
                n: ground.n,
                expected,
                got: table.len(),
            });
        }
        if table[0] != Ext::ZERO {
            return Err(Error::NonzeroEmpty(table[0].to_string()));
        }
        if !table[expected - 1].is_finite() {
            return Err(Error::InfiniteFullSet);
        }
        Ok(Self::build(
            ground,
            Source::Table(table),
            Arc::new(ExhaustiveSfm::default()),
        ))
    }

    /// Convenience constructor from finite integer values.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let n = values.len().trailing_zeros() as usize;
        if values.len() != 1 << n {
            return Err(Error::TableLength {
                n,
                expected: 1 << n,
                got: values.len(),
            });
        }
        Self::from_table(
            GroundSet::new(n)?,
            values.iter().map(|&v| Ext::from(v)).collect(),
        )
    }

    pub fn from_fn(
        ground: GroundSet,
        f: impl Fn(Subset) -> Ext + Send + Sync + 'static,
    ) -> Result<Self> {
        let f: Arc<SetFn> = Arc::new(f);
        if f(Subset::EMPTY) != Ext::ZERO {
            return Err(Error::NonzeroEmpty(f(Subset::EMPTY).to_string()));
        }
        if !f(ground.full()).is_finite() {
            return Err(Error::InfiniteFullSet);
        }
        Ok(Self::build(
            ground,
            Source::Function(f),
            Arc::new(ExhaustiveSfm::default()),
        ))
    }

    /// Replaces the SFM backend; minors inherit it. Cache and counters start
    /// fresh, except that a minor keeps sharing its parent's call counter.
    pub fn with_sfm_backend(&self, sfm: Arc<dyn SfmBackend>) -> Self {
        let source = match &self.inner.source {
            Source::Table(t) => Source::Table(t.clone()),
            Source::Function(f) => Source::Function(f.clone()),
            Source::Minor {
                parent,
                elements,
                base,
                base_value,
            } => Source::Minor {
                parent: parent.clone(),
                elements: elements.clone(),
                base: *base,
                base_value: *base_value,
            },
        };
        Self::build(self.inner.ground.clone(), source, sfm)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.inner.ground
    }

    pub fn n(&self) -> usize {
        self.inner.ground.n
    }

    pub fn full(&self) -> Subset {
        self.inner.ground.full()
    }

    pub fn sfm(&self) -> &dyn SfmBackend {
        self.inner.sfm.as_ref()
    }

    pub fn stats(&self) -> OracleStats {
        OracleStats {
            calls: self.inner.calls.load(Ordering::Relaxed),
            evaluations: self.inner.evaluations.load(Ordering::Relaxed),
        }
    }

    /// `p(X)`.
    pub fn eval(&self, x: Subset) -> Ext {
        self.inner.calls.fetch_add(1, Ordering::Relaxed);
        self.lookup(x)
    }

    fn lookup(&self, x: Subset) -> Ext {
        debug_assert!(x.is_subset_of(self.full()));
        match &self.inner.source {
            Source::Table(t) => {
                self.inner.evaluations.fetch_add(1, Ordering::Relaxed);
                t[x.bits() as usize]
            }
            _ => {
                if let Some(&v) = self.inner.memo.read().unwrap().get(&x.bits()) {
                    return v;
                }
                self.inner.evaluations.fetch_add(1, Ordering::Relaxed);
                let v = self.compute(x);
                self.inner.memo.write().unwrap().insert(x.bits(), v);
                v
            }
        }
    }

    fn compute(&self, x: Subset) -> Ext {
        match &self.inner.source {
            Source::Table(t) => t[x.bits() as usize],
            Source::Function(f) => f(x),
            Source::Minor {
                parent,
                elements,
                base,
                base_value,
            } => {
                let lifted = x.iter().fold(*base, |acc, i| acc.with(elements[i]));
                parent.lookup(lifted) - *base_value
            }
        }
    }

    pub fn p_full(&self) -> i128 {
        self.eval(self.full())
            .finite()
            .expect("p(S) is finite by construction")
    }

    /// All `2^n` values in bitmask order.
    pub fn table(&self) -> Vec<Ext> {
        self.full().subsets().map(|x| self.eval(x)).collect()
    }

    /// Complement `b(X) = p(S) − p(S − X)`, a submodular function with `B(b) = B'(p)`.
    pub fn complement_b(&self, x: Subset) -> Ext {
        Ext::Finite(self.p_full()) - self.eval(self.full().difference(x))
    }

    /// Checks `p(X) + p(Y) ≤ p(X∪Y) + p(X∩Y)` on all pairs with finite values
    /// when `n ≤ 12`; above that, on `samples` pseudo-random pairs.
    pub fn check_supermodular(&self, samples: usize) -> Result<()> {
        let full = self.full();
        let check = |x: Subset, y: Subset| -> Result<()> {
            let (px, py) = (self.eval(x), self.eval(y));
            if !(px.is_finite() && py.is_finite()) {
                return Ok(());
            }
            if px + py > self.eval(x.union(y)) + self.eval(x.intersection(y)) {
                return Err(Error::NotSupermodular { x, y });
            }
            Ok(())
        };
        if self.n() <= 12 {
            for x in full.subsets() {
                for y in full.subsets().filter(|&y| y > x) {
                    check(x, y)?;
                }
            }
        } else {
            // splitmix64; deterministic so repeated validation agrees
            let mut state = 0x9E37_79B9_7F4A_7C15u64;
            let mut next = move || {
                state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                z ^ (z >> 31)
            };
            for _ in 0..samples {
                let x = Subset::from_bits(next() as u32 & full.bits());
                let y = Subset::from_bits(next() as u32 & full.bits());
                check(x, y)?;
            }
        }
        Ok(())
    }

    /// Minor on the elements of `within − base` with `p'(X) = p(X ∪ base) − p(base)`.
    ///
    /// Requires `base ⊆ within`, `within − base` nonempty and `p(base)` finite.
    pub(crate) fn minor(&self, within: Subset, base: Subset) -> Result<Self> {
        debug_assert!(base.is_subset_of(within));
        let local = within.difference(base);
        if local.is_empty() {
            return Err(Error::DegenerateMinor(local));
        }
        let base_value = self
            .eval(base)
            .finite()
            .ok_or(Error::InfiniteContractionBase)?;
        let elements: Vec<usize> = local.iter().collect();
        let names = elements
            .iter()
            .map(|&i| self.inner.ground.names[i].clone())
            .collect();
        let ground = GroundSet::with_names(names)?;
        let oracle = Self::build(
            ground,
            Source::Minor {
                parent: self.clone(),
                elements,
                base,
                base_value,
            },
            self.inner.sfm.clone(),
        );
        if !oracle.eval(oracle.full()).is_finite() {
            return Err(Error::InfiniteFullSet);
        }
        Ok(oracle)
    }

    /// Restriction `p₊(X) = p(X)` for `X ⊆ S₊`, with `∅ ≠ S₊ ≠ S`.
    pub fn restriction(&self, s_plus: Subset) -> Result<Self> {
        if s_plus.is_empty() || s_plus == self.full() {
            return Err(Error::DegenerateMinor(s_plus));
        }
        self.minor(s_plus, Subset::EMPTY)
    }

    /// Contraction `p₋(X) = p(X ∪ (S − S₋)) − p(S − S₋)` for `X ⊆ S₋`, with `∅ ≠ S₋ ≠ S`.
    pub fn contraction(&self, s_minus: Subset) -> Result<Self> {
        if s_minus.is_empty() || s_minus == self.full() {
            return Err(Error::DegenerateMinor(s_minus));
        }
        self.minor(self.full(), self.full().difference(s_minus))
    }

    /// Parent indices of this oracle's elements when it is a minor, else the identity.
    pub fn parent_elements(&self) -> Vec<usize> {
        match &self.inner.source {
            Source::Minor { elements, .. } => elements.clone(),
            _ => (0..self.n()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn table_validation() {
        let g = GroundSet::new(1).unwrap();
        assert_eq!(
            SupermodularOracle::from_table(g.clone(), vec![Ext::Finite(1), Ext::ZERO]).unwrap_err(),
            Error::NonzeroEmpty("1".into())
        );
        assert_eq!(
            SupermodularOracle::from_table(g.clone(), vec![Ext::ZERO, Ext::NegInf]).unwrap_err(),
            Error::InfiniteFullSet
        );
        assert!(matches!(
            SupermodularOracle::from_table(g, vec![Ext::ZERO]).unwrap_err(),
            Error::TableLength { .. }
        ));
    }

    #[test]
    fn evaluates_reference_tables() {
        let p = fixtures::skewed_pair();
        assert_eq!(p.eval(Subset::singleton(0)), Ext::Finite(3));
        assert_eq!(p.eval(Subset::EMPTY), Ext::ZERO);
        let q = fixtures::shifted_rank_two();
        assert_eq!(q.eval(Subset::from_elements([0, 1])), Ext::Finite(3));
    }

    #[test]
    fn complement_of_reference_tables() {
        let p = fixtures::line_segment();
        assert_eq!(p.complement_b(Subset::singleton(0)), Ext::Finite(2));
        assert_eq!(p.complement_b(p.full()), Ext::Finite(3));
        let q = fixtures::skewed_pair();
        assert_eq!(q.complement_b(Subset::singleton(1)), Ext::Finite(2));
    }

    #[test]
    fn complement_of_neg_inf_is_pos_inf() {
        let g = GroundSet::new(2).unwrap();
        let p = SupermodularOracle::from_table(
            g,
            vec![Ext::ZERO, Ext::NegInf, Ext::ZERO, Ext::Finite(1)],
        )
        .unwrap();
        assert_eq!(p.complement_b(Subset::singleton(1)), Ext::PosInf);
        assert!(p.check_supermodular(0).is_ok());
    }

    #[test]
    fn detects_supermodularity_violation() {
        // p({0}) = p({1}) = 2, p(S) = 3: 2 + 2 > 3 + 0.
        let p = SupermodularOracle::from_values(&[0, 2, 2, 3]).unwrap();
        assert_eq!(
            p.check_supermodular(0).unwrap_err(),
            Error::NotSupermodular {
                x: Subset::singleton(0),
                y: Subset::singleton(1)
            }
        );
    }

    #[test]
    fn reference_tables_are_supermodular() {
        for p in fixtures::all() {
            p.check_supermodular(0).unwrap();
            // b is submodular
            let full = p.full();
            for x in full.subsets() {
                for y in full.subsets() {
                    let lhs = p.complement_b(x) + p.complement_b(y);
                    let rhs = p.complement_b(x.union(y)) + p.complement_b(x.intersection(y));
                    assert!(lhs >= rhs);
                }
            }
        }
    }

    #[test]
    fn restriction_and_contraction_formulas() {
        let p = fixtures::skewed_pair();
        let plus = p.restriction(Subset::singleton(0)).unwrap();
        assert_eq!(plus.n(), 1);
        assert_eq!(plus.eval(plus.full()), Ext::Finite(3));
        let minus = p.contraction(Subset::singleton(1)).unwrap();
        assert_eq!(minus.eval(minus.full()), Ext::Finite(2));
        assert_eq!(minus.parent_elements(), vec![1]);
        assert_eq!(
            p.restriction(Subset::EMPTY).unwrap_err(),
            Error::DegenerateMinor(Subset::EMPTY)
        );
        assert_eq!(
            p.contraction(p.full()).unwrap_err(),
            Error::DegenerateMinor(p.full())
        );
    }

    #[test]
    fn one_element_contraction_recovers_the_gap() {
        let q = fixtures::shifted_rank_two();
        for s in 0..4 {
            let c = q.contraction(Subset::singleton(s)).unwrap();
            let gap = q.p_full() - q.eval(q.full().without(s)).finite().unwrap();
            assert_eq!(c.eval(c.full()), Ext::Finite(gap));
        }
    }

    #[test]
    fn function_sources_are_memoized_and_counted() {
        let g = GroundSet::new(3).unwrap();
        let p =
            SupermodularOracle::from_fn(g, |x| Ext::Finite((x.len() * x.len()) as i128)).unwrap();
        for _ in 0..3 {
            p.eval(Subset::from_elements([0, 2]));
        }
        let stats = p.stats();
        assert_eq!(stats.calls, 3);
        assert_eq!(stats.evaluations, 1);
    }

    #[test]
    fn oracle_is_shareable_across_threads() {
        let p = fixtures::shifted_rank_two();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                let p = p.clone();
                scope.spawn(move || {
                    for x in p.full().subsets() {
                        p.eval(x);
                    }
                });
            }
        });
        assert_eq!(p.stats().calls, 64);
    }
}
