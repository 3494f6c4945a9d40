//! Seeded random instances. All generated functions are finite with
//! `max |p(X)| ≤ MAX_ABS_VALUE`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, PSpec};
use crate::setfn::{Ext, Subset};

pub const MAX_ABS_VALUE: i128 = 8;
pub const MAX_GRAPH_EDGES: usize = 8;
pub const MAX_TABLE_N: usize = 5;
const TABLE_ATTEMPTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Graph,
    Modular,
    Table,
}

impl GenKind {
    pub const ALL: [GenKind; 3] = [GenKind::Graph, GenKind::Modular, GenKind::Table];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Graph => "graph",
            GenKind::Modular => "modular",
            GenKind::Table => "table",
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn max_abs(spec: &PSpec, n: usize) -> i128 {
    Subset::full(n)
        .subsets()
        .filter_map(|x| spec.eval(x).finite())
        .map(i128::abs)
        .max()
        .unwrap_or(0)
}

/// Random multigraph with at most [`MAX_GRAPH_EDGES`] edges, no loops.
pub fn random_graph(rng: &mut impl Rng, n: usize) -> PSpec {
    let count = rng.gen_range(0..=MAX_GRAPH_EDGES);
    let edges = (0..count)
        .filter_map(|_| {
            if n < 2 {
                return None;
            }
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            Some((i.min(j), i.max(j)))
        })
        .collect();
    PSpec::Graph(edges)
}

/// A random graph shifted by `w ∈ [−2, 2]^n`, resampling `w` until the value bound holds.
pub fn random_modular_shift(rng: &mut impl Rng, n: usize) -> PSpec {
    let base = random_graph(rng, n);
    loop {
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let spec = PSpec::Modular {
            weights,
            base: Box::new(base.clone()),
        };
        if max_abs(&spec, n) <= MAX_ABS_VALUE {
            return spec;
        }
    }
}

/// Random table: a convex function of `|X|`, a modular part and sparse
/// upward noise on sets of size at least two, rejection-checked for
/// supermodularity. Falls back to the noise-free table, then to zero.
pub fn random_table(rng: &mut impl Rng, n: usize) -> PSpec {
    assert!(
        n <= MAX_TABLE_N,
        "table generator is limited to n ≤ {MAX_TABLE_N}"
    );
    let full = Subset::full(n);
    for _ in 0..TABLE_ATTEMPTS {
        // increments of a convex sequence: f(0) = 0, f(k) = Σ_{i<k} d_i, d nondecreasing
        let mut d: Vec<i128> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        d.sort();
        let f = |k: usize| d[..k].iter().sum::<i128>();
        let w: Vec<i128> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        let clean: Vec<i128> = full
            .subsets()
            .map(|x| f(x.len()) + x.iter().map(|s| w[s]).sum::<i128>())
            .collect();
        let noisy: Vec<i128> = full
            .subsets()
            .map(|x| {
                let bump = x.len() >= 2 && x != full && rng.gen_bool(0.2);
                clean[x.bits() as usize] + bump as i128
            })
            .collect();
        for values in [noisy, clean] {
            if values.iter().any(|v| v.abs() > MAX_ABS_VALUE) {
                continue;
            }
            if is_supermodular(&values, full) {
                return PSpec::Table(values.into_iter().map(Ext::Finite).collect());
            }
        }
    }
    PSpec::Table(vec![Ext::ZERO; 1 << n])
}

fn is_supermodular(values: &[i128], full: Subset) -> bool {
    full.subsets().all(|x| {
        full.subsets().all(|y| {
            values[x.bits() as usize] + values[y.bits() as usize]
                <= values[x.union(y).bits() as usize] + values[x.intersection(y).bits() as usize]
        })
    })
}

pub fn generate(kind: GenKind, rng: &mut impl Rng, n: usize) -> Instance {
    let spec = match kind {
        GenKind::Graph => random_graph(rng, n),
        GenKind::Modular => random_modular_shift(rng, n),
        GenKind::Table => random_table(rng, n),
    };
    Instance::new(n, spec).expect("generated specs have the right shape")
}

/// `count` instances with `n ∈ [2, max_n]`, cycling through the generator
/// kinds; tables use `n ≤ MAX_TABLE_N`. Labels encode the seed and index.
pub fn generate_batch(seed: u64, count: usize, max_n: usize) -> Vec<(String, Instance)> {
    let mut rng = rng_from_seed(seed);
    let mut kinds = GenKind::ALL.to_vec();
    (0..count)
        .map(|i| {
            if i % kinds.len() == 0 {
                kinds.shuffle(&mut rng);
            }
            let kind = kinds[i % kinds.len()];
            let hi = match kind {
                GenKind::Table => max_n.min(MAX_TABLE_N),
                _ => max_n,
            };
            let n = rng.gen_range(2..=hi.max(2));
            (
                format!("{}-{seed}-{i}", kind.name()),
                generate(kind, &mut rng, n),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_are_valid_and_bounded() {
        for (label, inst) in generate_batch(7, 60, 6) {
            let (p, _) = inst.validate().unwrap_or_else(|e| panic!("{label}: {e}"));
            let table = p.table();
            assert!(
                table
                    .iter()
                    .all(|v| v.finite().is_some_and(|v| v.abs() <= MAX_ABS_VALUE)),
                "{label}"
            );
            assert!((2..=6).contains(&p.n()));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a: Vec<String> = generate_batch(11, 9, 6)
            .iter()
            .map(|(_, i)| i.to_json_string())
            .collect();
        let b: Vec<String> = generate_batch(11, 9, 6)
            .iter()
            .map(|(_, i)| i.to_json_string())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn tables_are_sometimes_not_of_cardinality_form() {
        let mut rng = rng_from_seed(3);
        let nontrivial = (0..40).any(|_| match random_table(&mut rng, 4) {
            PSpec::Table(t) => t[0b0011] != t[0b0101] || t[0b0011] != t[0b1100],
            _ => false,
        });
        assert!(nontrivial);
    }
}
