use num::{BigRational, Zero};

use super::sfm::SfmResult;
use super::vector::{rat_int, RatVec};
use super::{Ext, IntVec, Subset, SupermodularOracle};
use crate::error::{Error, Result};

impl SupermodularOracle {
    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: dim,
            });
        }
        Ok(())
    }

    fn check_element(&self, s: usize) -> Result<()> {
        if s >= self.n() {
            return Err(Error::ElementOutOfRange(s));
        }
        Ok(())
    }

    /// Minimizes the slack `x̃(Z) − p(Z)` over `lo ⊆ Z ⊆ hi`.
    pub fn min_slack(&self, x: &IntVec, lo: Subset, hi: Subset) -> Result<SfmResult> {
        self.check_dim(x.dim())?;
        self.sfm()
            .minimize(lo, hi, &|z| Ext::Finite(x.sum_over(z)) - self.eval(z))
    }

    /// `x ∈ ⊙B`: `x̃(S) = p(S)` and `x̃(Z) ≥ p(Z)` for every `Z`.
    pub fn is_member(&self, x: &IntVec) -> Result<bool> {
        self.check_dim(x.dim())?;
        if x.total() != self.p_full() {
            return Ok(false);
        }
        Ok(self.min_slack(x, Subset::EMPTY, self.full())?.min_value >= Ext::ZERO)
    }

    /// `x ∈ B` for a rational vector.
    pub fn contains_rational(&self, x: &RatVec) -> Result<bool> {
        self.check_dim(x.dim())?;
        let (den, scaled) = x.scaled()?;
        let total: i128 = scaled.iter().sum();
        if total != den * self.p_full() {
            return Ok(false);
        }
        let r = self.sfm().minimize(Subset::EMPTY, self.full(), &|z| {
            let sum: i128 = z.iter().map(|i| scaled[i]).sum();
            Ext::Finite(sum) - self.eval(z).scale(den)
        })?;
        Ok(r.min_value >= Ext::ZERO)
    }

    /// Whether `x + χ_s − χ_t ∈ ⊙B` for a member `x`: no `x`-tight set contains `t` but not `s`.
    pub fn exchange_feasible(&self, x: &IntVec, s: usize, t: usize) -> Result<bool> {
        self.check_element(s)?;
        self.check_element(t)?;
        if s == t {
            return Ok(true);
        }
        let r = self.min_slack(x, Subset::singleton(t), self.full().without(s))?;
        Ok(r.min_value >= Ext::Finite(1))
    }

    /// `dep(x, t)`: the elements `s` with `x + χ_s − χ_t ∈ ⊙B`, which is the
    /// smallest `x`-tight set containing `t`.
    pub fn dependence_set(&self, x: &IntVec, t: usize) -> Result<Subset> {
        self.check_element(t)?;
        self.smallest_tight_containing(x, Subset::singleton(t))
    }

    /// Smallest `x`-tight set containing `T`, for a member `x`.
    pub fn smallest_tight_containing(&self, x: &IntVec, t: Subset) -> Result<Subset> {
        let r = self.min_slack(x, t, self.full())?;
        if r.min_value != Ext::ZERO {
            return Err(Error::NotAMember);
        }
        Ok(r.smallest)
    }

    /// Largest `x`-tight set for `x` in the supermodular polyhedron `Q`; `∅` when only `∅` is tight.
    pub fn largest_tight(&self, x: &IntVec) -> Result<Subset> {
        let r = self.min_slack(x, Subset::EMPTY, self.full())?;
        if r.min_value < Ext::ZERO {
            return Err(Error::NotInQ);
        }
        Ok(r.largest)
    }

    pub fn largest_tight_rational(&self, x: &RatVec) -> Result<Subset> {
        self.check_dim(x.dim())?;
        let (den, scaled) = x.scaled()?;
        let r = self.sfm().minimize(Subset::EMPTY, self.full(), &|z| {
            let sum: i128 = z.iter().map(|i| scaled[i]).sum();
            Ext::Finite(sum) - self.eval(z).scale(den)
        })?;
        if r.min_value < Ext::ZERO {
            return Err(Error::NotInQ);
        }
        Ok(r.largest)
    }

    /// Vertex of `B` from the prefix differences of `order`.
    pub fn greedy_vertex(&self, order: &[usize]) -> Result<IntVec> {
        self.check_dim(order.len())?;
        let mut seen = Subset::EMPTY;
        for &s in order {
            if s >= self.n() || seen.contains(s) {
                return Err(Error::NotAPermutation);
            }
            seen = seen.with(s);
        }
        let mut x = IntVec::constant(self.n(), 0);
        let mut prefix = Subset::EMPTY;
        let mut prev = 0i128;
        for &s in order {
            prefix = prefix.with(s);
            let v = self
                .eval(prefix)
                .finite()
                .ok_or(Error::InfinitePrefix(prefix))?;
            x[s] = i64::try_from(v - prev).map_err(|_| Error::Overflow)?;
            prev = v;
        }
        Ok(x)
    }

    pub fn identity_greedy_vertex(&self) -> Result<IntVec> {
        self.greedy_vertex(&(0..self.n()).collect::<Vec<_>>())
    }

    /// Lovász extension `p̂(π)`; a prefix term with zero gap contributes 0 even when `p = −∞` there.
    pub fn lovasz_extension(&self, pi: &RatVec) -> Result<BigRational> {
        self.check_dim(pi.dim())?;
        let order = descending_order(pi);
        let mut total = BigRational::zero();
        let mut prefix = Subset::EMPTY;
        for (j, &s) in order.iter().enumerate() {
            prefix = prefix.with(s);
            let gap = match order.get(j + 1) {
                Some(&next) => &pi[s] - &pi[next],
                None => pi[s].clone(),
            };
            if gap.is_zero() {
                continue;
            }
            let v = self
                .eval(prefix)
                .finite()
                .ok_or(Error::InfiniteLovaszTerm(prefix))?;
            total += rat_int(v) * gap;
        }
        Ok(total)
    }

    /// Integer-vector variant of [`lovasz_extension`](Self::lovasz_extension).
    pub fn lovasz_extension_int(&self, pi: &[i64]) -> Result<i128> {
        self.check_dim(pi.len())?;
        let mut order: Vec<usize> = (0..pi.len()).collect();
        order.sort_by(|&a, &b| pi[b].cmp(&pi[a]).then(a.cmp(&b)));
        let mut total = 0i128;
        let mut prefix = Subset::EMPTY;
        for (j, &s) in order.iter().enumerate() {
            prefix = prefix.with(s);
            let gap = match order.get(j + 1) {
                Some(&next) => pi[s] as i128 - pi[next] as i128,
                None => pi[s] as i128,
            };
            if gap == 0 {
                continue;
            }
            let v = self
                .eval(prefix)
                .finite()
                .ok_or(Error::InfiniteLovaszTerm(prefix))?;
            total += v * gap;
        }
        Ok(total)
    }
}

/// Indices sorted by decreasing value, ties by index.
fn descending_order(pi: &RatVec) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pi.dim()).collect();
    order.sort_by(|&a, &b| pi[b].cmp(&pi[a]).then(a.cmp(&b)));
    order
}
