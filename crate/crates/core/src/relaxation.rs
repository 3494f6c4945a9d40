//! Rounding a fractional optimum to a box, matroid greedy inside the box,
//! the matroid description of all dec-min elements, and minimum-cost dec-min.

use num::{BigRational, Zero};

use crate::error::{Error, Result};
use crate::partitions::{canonical_partition_iterative, CanonicalChain};
use crate::setfn::vector::rat_int;
use crate::setfn::{Ext, IntVec, RatVec, Subset, SupermodularOracle};

/// The box `[⌊x*⌋, ⌈x*⌉]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundingBox {
    pub lower: IntVec,
    pub upper: IntVec,
}

impl RoundingBox {
    pub fn from_point(xstar: &RatVec) -> Result<Self> {
        Ok(RoundingBox {
            lower: xstar.floor()?,
            upper: xstar.ceil()?,
        })
    }

    /// Elements with `u(s) = ℓ(s) + 1`.
    pub fn unit_support(&self) -> Subset {
        (0..self.lower.dim())
            .filter(|&s| self.upper[s] == self.lower[s] + 1)
            .collect()
    }

    /// `ω(s) = u(s)² − ℓ(s)²`.
    pub fn weights(&self) -> Vec<i128> {
        self.lower
            .iter()
            .zip(self.upper.iter())
            .map(|(&l, &u)| (u as i128) * (u as i128) - (l as i128) * (l as i128))
            .collect()
    }

    pub fn contains(&self, x: &IntVec) -> bool {
        (0..x.dim()).all(|s| self.lower[s] <= x[s] && x[s] <= self.upper[s])
    }
}

/// Whether `B'(p) ∩ [ℓ, u]` is nonempty: `ũ(X) ≥ p(X)` and `b(X) ≥ ℓ̃(X)` for all `X`.
pub fn box_nonempty(p: &SupermodularOracle, lower: &IntVec, upper: &IntVec) -> Result<bool> {
    for v in [lower, upper] {
        if v.dim() != p.n() {
            return Err(Error::Dimension {
                expected: p.n(),
                got: v.dim(),
            });
        }
    }
    if (0..p.n()).any(|s| lower[s] > upper[s]) {
        return Ok(false);
    }
    let full = p.full();
    let above = p.min_slack(upper, Subset::EMPTY, full)?;
    if above.min_value < Ext::ZERO {
        return Ok(false);
    }
    let below = p.sfm().minimize(Subset::EMPTY, full, &|x| {
        p.complement_b(x) - lower.sum_over(x)
    })?;
    Ok(below.min_value >= Ext::ZERO)
}

/// `I` is independent in the box matroid iff `ℓ + χ_I` still leaves a member in the box.
pub fn matroid_independent(p: &SupermodularOracle, bx: &RoundingBox, set: Subset) -> Result<bool> {
    let support = bx.unit_support();
    if let Some(s) = set.difference(support).iter().next() {
        return Err(Error::NotInUnitSupport(s));
    }
    let mut lifted = bx.lower.clone();
    for s in set.iter() {
        lifted[s] += 1;
    }
    box_nonempty(p, &lifted, &bx.upper)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxationResult {
    pub z: IntVec,
    pub rounding: RoundingBox,
    pub weights: Vec<i128>,
    pub basis: Subset,
    pub basis_weight: i128,
}

/// `ℓ + χ_L` for a minimum `ω`-weight basis `L` of the box matroid, by greedy in ascending `ω`.
pub fn continuous_relaxation_decmin(
    p: &SupermodularOracle,
    xstar: &RatVec,
) -> Result<RelaxationResult> {
    let rounding = RoundingBox::from_point(xstar)?;
    if !box_nonempty(p, &rounding.lower, &rounding.upper)? {
        return Err(Error::EmptyBox);
    }
    let weights = rounding.weights();
    let mut order: Vec<usize> = rounding.unit_support().iter().collect();
    order.sort_by_key(|&s| (weights[s], s));
    let mut basis = Subset::EMPTY;
    for s in order {
        if matroid_independent(p, &rounding, basis.with(s))? {
            basis = basis.with(s);
        }
    }
    let mut z = rounding.lower.clone();
    for s in basis.iter() {
        z[s] += 1;
    }
    let basis_weight = basis.iter().map(|s| weights[s]).sum();
    Ok(RelaxationResult {
        z,
        rounding,
        weights,
        basis,
        basis_weight,
    })
}

/// Block `j` of the canonical partition with its minor: restrict to `C_j`, contract `C_{j−1}`.
#[derive(Clone, Debug)]
pub struct BlockMatroid {
    pub elements: Vec<usize>,
    pub beta: i64,
    pub oracle: SupermodularOracle,
    pub rank: usize,
}

impl BlockMatroid {
    /// `local` indexes into `elements`.
    pub fn independent(&self, local: Subset) -> Result<bool> {
        let k = self.elements.len();
        let mut lower = IntVec::constant(k, self.beta - 1);
        for i in local.iter() {
            lower[i] += 1;
        }
        box_nonempty(&self.oracle, &lower, &IntVec::constant(k, self.beta))
    }

    pub fn bases(&self) -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        for cand in Subset::full(self.elements.len()).subsets() {
            if cand.len() == self.rank && self.independent(cand)? {
                out.push(cand);
            }
        }
        Ok(out)
    }

    fn lift(&self, local: Subset) -> Subset {
        local.iter().map(|i| self.elements[i]).collect()
    }
}

/// Every dec-min element is `Δ* + χ_L` for a basis `L` of the direct sum of block matroids.
#[derive(Clone, Debug)]
pub struct DecMinStructure {
    pub canonical: CanonicalChain,
    pub delta: IntVec,
    pub blocks: Vec<BlockMatroid>,
}

/// Bound on `n` for listing all bases.
pub const BASIS_ENUMERATION_BOUND: usize = 16;

impl DecMinStructure {
    pub fn new(p: &SupermodularOracle) -> Result<Self> {
        let canonical = canonical_partition_iterative(p)?;
        let mut delta = IntVec::constant(p.n(), 0);
        let mut blocks = Vec::new();
        let mut prev = Subset::EMPTY;
        for (&c, &beta) in canonical.chain.iter().zip(&canonical.values) {
            let block = c.difference(prev);
            for s in block.iter() {
                delta[s] = beta - 1;
            }
            let oracle = p.minor(c, prev)?;
            let k = block.len() as i128;
            let rank = oracle.p_full() - (beta as i128 - 1) * k;
            if rank < 0 || rank > k {
                return Err(Error::Invalid(format!("block {block:?} has rank {rank}")));
            }
            blocks.push(BlockMatroid {
                elements: block.iter().collect(),
                beta,
                oracle,
                rank: rank as usize,
            });
            prev = c;
        }
        Ok(DecMinStructure {
            canonical,
            delta,
            blocks,
        })
    }

    /// Independence in `M*` of a set in original indices.
    pub fn independent(&self, set: Subset) -> Result<bool> {
        for b in &self.blocks {
            let local: Subset = b
                .elements
                .iter()
                .enumerate()
                .filter(|(_, &s)| set.contains(s))
                .map(|(i, _)| i)
                .collect();
            if !b.independent(local)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank).sum()
    }

    /// All bases of `M*` in original indices, sorted.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        let n = self.delta.dim();
        if n > BASIS_ENUMERATION_BOUND {
            return Err(Error::EnumerationBound {
                what: "basis enumeration",
                n,
                bound: BASIS_ENUMERATION_BOUND,
            });
        }
        let mut out = vec![Subset::EMPTY];
        for b in &self.blocks {
            let local = b.bases()?;
            out = out
                .iter()
                .flat_map(|&acc| local.iter().map(move |&l| (acc, l)))
                .map(|(acc, l)| acc.union(b.lift(l)))
                .collect();
        }
        out.sort();
        Ok(out)
    }

    pub fn element_of(&self, basis: Subset) -> IntVec {
        let mut m = self.delta.clone();
        for s in basis.iter() {
            m[s] += 1;
        }
        m
    }

    /// All dec-min elements, sorted.
    pub fn decmin_elements(&self) -> Result<Vec<IntVec>> {
        let mut out: Vec<IntVec> = self
            .bases()?
            .into_iter()
            .map(|l| self.element_of(l))
            .collect();
        out.sort();
        Ok(out)
    }
}

pub fn decmin_structure(p: &SupermodularOracle) -> Result<DecMinStructure> {
    DecMinStructure::new(p)
}

pub fn cost_of(cost: &[BigRational], m: &IntVec) -> BigRational {
    cost.iter()
        .zip(m.iter())
        .map(|(c, &v)| c * rat_int(v as i128))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

/// A dec-min element of least total cost `Σ c(s)·m(s)`, by per-block greedy in ascending cost.
pub fn min_cost_decmin(
    p: &SupermodularOracle,
    cost: &[BigRational],
) -> Result<(IntVec, BigRational)> {
    if cost.len() != p.n() {
        return Err(Error::Dimension {
            expected: p.n(),
            got: cost.len(),
        });
    }
    let structure = DecMinStructure::new(p)?;
    let mut basis = Subset::EMPTY;
    for b in &structure.blocks {
        let mut order: Vec<usize> = (0..b.elements.len()).collect();
        order.sort_by(|&i, &j| {
            cost[b.elements[i]]
                .cmp(&cost[b.elements[j]])
                .then(i.cmp(&j))
        });
        let mut local = Subset::EMPTY;
        for i in order {
            if local.len() == b.rank {
                break;
            }
            if b.independent(local.with(i))? {
                local = local.with(i);
            }
        }
        basis = basis.union(b.lift(local));
    }
    let m = structure.element_of(basis);
    let total = cost_of(cost, &m);
    Ok((m, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::setfn::vector::rat;

    fn v(x: &[i64]) -> IntVec {
        IntVec(x.to_vec())
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    #[test]
    fn rounding_boxes() {
        let b = RoundingBox::from_point(&RatVec::from_fractions(&[(3, 2), (3, 2), (1, 2), (1, 2)]))
            .unwrap();
        assert_eq!(b.lower, v(&[1, 1, 0, 0]));
        assert_eq!(b.upper, v(&[2, 2, 1, 1]));
        assert_eq!(b.weights(), vec![3, 3, 1, 1]);
        let b = RoundingBox::from_point(&RatVec::from_fractions(&[(2, 1), (1, 1), (1, 3), (2, 3)]))
            .unwrap();
        assert_eq!(b.lower, v(&[2, 1, 0, 0]));
        assert_eq!(b.upper, v(&[2, 1, 1, 1]));
        assert_eq!(b.weights(), vec![0, 0, 1, 1]);
        assert_eq!(b.unit_support(), set(&[2, 3]));
        let b = RoundingBox::from_point(&RatVec::from_fractions(&[(4, 1), (-1, 1)])).unwrap();
        assert_eq!(b.lower, b.upper);
    }

    #[test]
    fn box_feasibility() {
        let q = fixtures::shifted_rank_two();
        assert!(box_nonempty(&q, &v(&[1, 1, 0, 0]), &v(&[2, 2, 1, 1])).unwrap());
        assert!(box_nonempty(&q, &v(&[2, 1, 0, 0]), &v(&[2, 1, 1, 1])).unwrap());
        assert!(!box_nonempty(&q, &v(&[2, 2, 1, 0]), &v(&[2, 2, 1, 0])).unwrap());
        assert!(box_nonempty(&q, &v(&[2, 2, 0, 0]), &v(&[2, 2, 0, 0])).unwrap());
        assert!(!box_nonempty(&q, &v(&[0, 0, 0, 0]), &v(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn box_matroid_independence() {
        let q = fixtures::shifted_rank_two();
        let b = RoundingBox {
            lower: v(&[2, 1, 0, 0]),
            upper: v(&[2, 1, 1, 1]),
        };
        assert!(matroid_independent(&q, &b, set(&[2])).unwrap());
        assert!(matroid_independent(&q, &b, Subset::EMPTY).unwrap());
        assert!(!matroid_independent(&q, &b, set(&[2, 3])).unwrap());
        assert_eq!(
            matroid_independent(&q, &b, set(&[0])).unwrap_err(),
            Error::NotInUnitSupport(0)
        );
    }

    #[test]
    fn relaxation_from_fractional_points() {
        let q = fixtures::shifted_rank_two();
        let r = continuous_relaxation_decmin(
            &q,
            &RatVec::from_fractions(&[(3, 2), (3, 2), (1, 2), (1, 2)]),
        )
        .unwrap();
        assert_eq!(r.weights, vec![3, 3, 1, 1]);
        assert_eq!(r.basis_weight, 4);
        assert_eq!(r.z.square_sum(), 6);
        let r = continuous_relaxation_decmin(
            &q,
            &RatVec::from_fractions(&[(2, 1), (1, 1), (1, 3), (2, 3)]),
        )
        .unwrap();
        assert_eq!(r.weights, vec![0, 0, 1, 1]);
        assert_eq!(r.z, v(&[2, 1, 1, 0]));
        let r = continuous_relaxation_decmin(
            &q,
            &RatVec::from_fractions(&[(2, 1), (1, 1), (0, 1), (1, 1)]),
        )
        .unwrap();
        assert_eq!(r.z, v(&[2, 1, 0, 1]));
        assert_eq!(
            continuous_relaxation_decmin(
                &q,
                &RatVec::from_fractions(&[(1, 1), (1, 1), (1, 1), (1, 1)])
            )
            .unwrap_err(),
            Error::EmptyBox
        );
    }

    #[test]
    fn structures_of_reference_tables() {
        let q = decmin_structure(&fixtures::shifted_rank_two()).unwrap();
        assert_eq!(q.delta, v(&[1, 1, 0, 0]));
        assert_eq!(
            q.bases().unwrap(),
            vec![set(&[0, 2]), set(&[1, 2]), set(&[0, 3]), set(&[1, 3])]
        );
        let r = decmin_structure(&fixtures::skewed_pair()).unwrap();
        assert_eq!(r.delta, v(&[2, 1]));
        assert_eq!(r.bases().unwrap(), vec![set(&[0, 1])]);
        assert_eq!(r.decmin_elements().unwrap(), vec![v(&[3, 2])]);
        let c = decmin_structure(&fixtures::crossed_pairs()).unwrap();
        assert_eq!(c.delta, v(&[0, 0, 0, 0]));
        assert_eq!(
            c.decmin_elements().unwrap(),
            vec![
                v(&[0, 1, 0, 1]),
                v(&[0, 1, 1, 0]),
                v(&[1, 0, 0, 1]),
                v(&[1, 0, 1, 0])
            ]
        );
    }

    #[test]
    fn minimum_cost() {
        let q = fixtures::shifted_rank_two();
        let c: Vec<BigRational> = [0, 1, 0, 1].iter().map(|&x| rat(x, 1)).collect();
        let (m, cost) = min_cost_decmin(&q, &c).unwrap();
        assert_eq!(m, v(&[2, 1, 1, 0]));
        assert_eq!(cost, rat(1, 1));
        let zero = vec![rat(0, 1); 4];
        assert_eq!(min_cost_decmin(&q, &zero).unwrap().1, rat(0, 1));
        let r = fixtures::skewed_pair();
        let (m, _) = min_cost_decmin(&r, &[rat(-5, 2), rat(7, 3)]).unwrap();
        assert_eq!(m, v(&[3, 2]));
    }
}
