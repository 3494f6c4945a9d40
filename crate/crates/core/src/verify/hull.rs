//! Exact convex-hull membership by Carathéodory subsets and rational elimination.

use num::{BigRational, One, Signed, Zero};

use crate::setfn::vector::rat_int;
use crate::setfn::{IntVec, RatVec};

/// Solves `A λ = b` exactly. Returns the solution when the columns of `A`
/// are independent and the system is consistent.
#[allow(clippy::needless_range_loop)]
fn solve_unique(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let r = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, r);
        b.swap(pivot_row, r);
        let inv = BigRational::one() / &a[pivot_row][col];
        for c in col..cols {
            a[pivot_row][c] = &a[pivot_row][c] * &inv;
        }
        b[pivot_row] = &b[pivot_row] * &inv;
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..cols {
                    let delta = &f * &a[pivot_row][c];
                    a[r][c] -= delta;
                }
                let delta = &f * &b[pivot_row];
                b[r] -= delta;
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !b[r].is_zero()) {
        return None;
    }
    Some(pivots.into_iter().map(|r| b[r].clone()).collect())
}

/// Whether `point` is a convex combination of `points`, trying every
/// subset of at most `dim + 1` points.
pub fn in_convex_hull(point: &RatVec, points: &[IntVec]) -> bool {
    let dim = point.dim();
    let k = points.len();
    let max_size = (dim + 1).min(k);
    (1u32..(1u32 << k))
        .filter(|mask| mask.count_ones() as usize <= max_size)
        .any(|mask| {
            let chosen: Vec<&IntVec> = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| &points[i])
                .collect();
            let mut a: Vec<Vec<BigRational>> = (0..dim)
                .map(|s| chosen.iter().map(|v| rat_int(v[s] as i128)).collect())
                .collect();
            a.push(vec![BigRational::one(); chosen.len()]);
            let mut b: Vec<BigRational> = point.iter().cloned().collect();
            b.push(BigRational::one());
            match solve_unique(a, b) {
                Some(lambda) => lambda.iter().all(|l| !l.is_negative()),
                None => false,
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec(x.to_vec())
    }

    #[test]
    fn midpoint_is_in_the_hull() {
        let pts = vec![v(&[1, 2]), v(&[2, 1])];
        assert!(in_convex_hull(
            &RatVec::from_fractions(&[(3, 2), (3, 2)]),
            &pts
        ));
        assert!(!in_convex_hull(
            &RatVec::from_fractions(&[(3, 1), (0, 1)]),
            &pts
        ));
    }

    #[test]
    fn min_norm_point_of_shifted_rank_two() {
        let pts = vec![
            v(&[2, 1, 1, 0]),
            v(&[2, 1, 0, 1]),
            v(&[1, 2, 1, 0]),
            v(&[1, 2, 0, 1]),
        ];
        assert!(in_convex_hull(
            &RatVec::from_fractions(&[(3, 2), (3, 2), (1, 2), (1, 2)]),
            &pts
        ));
        assert!(!in_convex_hull(
            &RatVec::from_fractions(&[(2, 1), (2, 1), (0, 1), (0, 1)]),
            &pts
        ));
    }

    #[test]
    fn dependent_points_fall_back_to_smaller_subsets() {
        let pts = vec![v(&[0, 0]), v(&[1, 1]), v(&[2, 2])];
        assert!(in_convex_hull(
            &RatVec::from_fractions(&[(1, 2), (1, 2)]),
            &pts
        ));
    }
}
