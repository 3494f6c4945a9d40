//! Randomised invariants over small graph and shifted-graph instances,
//! checked against table-only enumeration.

use proptest::prelude::*;

use decmin::decomp::{fujishige_decmin, groenevelt_decmin, FujishigeOptions, GroeneveltOptions};
use decmin::instance::{Instance, PSpec};
use decmin::partitions::{
    canonical_from_decmin, canonical_from_principal, canonical_partition_direct,
    canonical_partition_iterative, certify_decmin, min_norm_point, principal_partition,
    Certification,
};
use decmin::relaxation::{box_nonempty, continuous_relaxation_decmin, decmin_structure};
use decmin::verify::brute::{brute_decmin_set, brute_min_square_sum};
use decmin::verify::enumerate::{brute_is_member, enumerate_members, finite_table, DEFAULT_CAP};
use decmin::{IntVec, SupermodularOracle};

fn graph_spec(n: usize) -> impl Strategy<Value = PSpec> {
    prop::collection::vec((0..n, 0..n), 0..=8).prop_map(|pairs| {
        PSpec::Graph(
            pairs
                .into_iter()
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (i.min(j), i.max(j)))
                .collect(),
        )
    })
}

fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=5)
        .prop_flat_map(|n| {
            let weights = prop::option::of(prop::collection::vec(-2i64..=2, n));
            (Just(n), graph_spec(n), weights)
        })
        .prop_map(|(n, base, weights)| {
            let spec = match weights {
                Some(weights) => PSpec::Modular {
                    weights,
                    base: Box::new(base),
                },
                None => base,
            };
            Instance::new(n, spec).unwrap()
        })
}

fn oracle(inst: &Instance) -> SupermodularOracle {
    inst.validate().unwrap().0
}

/// Random vectors near the member box, so both outcomes occur.
fn probe(n: usize) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(-3i64..=5, n).prop_map(IntVec::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompositions_reach_the_least_square_sum(inst in instance()) {
        let p = oracle(&inst);
        let members = enumerate_members(&p, DEFAULT_CAP).unwrap().members;
        let optimal = brute_decmin_set(&members);
        let best = brute_min_square_sum(&members).unwrap();

        let g = groenevelt_decmin(&p, &GroeneveltOptions::default()).unwrap().z;
        prop_assert!(optimal.contains(&g), "groenevelt {g:?}");
        prop_assert_eq!(g.square_sum(), best);

        let f = fujishige_decmin(&p, &FujishigeOptions::default()).unwrap().z;
        prop_assert!(optimal.contains(&f), "fujishige {f:?}");

        let r = continuous_relaxation_decmin(&p, &min_norm_point(&p).unwrap()).unwrap().z;
        prop_assert!(optimal.contains(&r), "relaxation {r:?}");

        let mut from_structure = decmin_structure(&p).unwrap().decmin_elements().unwrap();
        from_structure.sort();
        let mut optimal = optimal;
        optimal.sort();
        prop_assert_eq!(from_structure, optimal);
    }

    #[test]
    fn oracle_membership_matches_the_table(inst in instance(), seed in probe(5)) {
        let p = oracle(&inst);
        let table = finite_table(&p);
        let x = IntVec::new(seed[..p.n()].to_vec());
        prop_assert_eq!(p.is_member(&x).unwrap(), brute_is_member(&table, &x));
    }

    #[test]
    fn instance_json_round_trips(inst in instance()) {
        let text = inst.to_json_string();
        let back = Instance::from_json_str(&text).unwrap();
        prop_assert_eq!(back.to_json_string(), text);
        prop_assert_eq!(oracle(&back).table(), oracle(&inst).table());
    }

    #[test]
    fn canonical_partition_routes_agree(inst in instance()) {
        let p = oracle(&inst);
        let iterative = canonical_partition_iterative(&p).unwrap();
        prop_assert_eq!(&canonical_partition_direct(&p).unwrap(), &iterative);
        prop_assert_eq!(&canonical_from_principal(&principal_partition(&p).unwrap()).unwrap(), &iterative);
        let m = groenevelt_decmin(&p, &GroeneveltOptions::default()).unwrap().z;
        prop_assert_eq!(&canonical_from_decmin(&p, &m).unwrap(), &iterative);
        prop_assert!(matches!(certify_decmin(&p, &m).unwrap(), Certification::Certified(_)));
    }

    #[test]
    fn box_test_matches_enumeration(inst in instance(), a in probe(5), b in probe(5)) {
        let p = oracle(&inst);
        let n = p.n();
        let lower = IntVec::new((0..n).map(|i| a[i].min(b[i])).collect());
        let upper = IntVec::new((0..n).map(|i| a[i].max(b[i])).collect());
        let members = enumerate_members(&p, DEFAULT_CAP).unwrap().members;
        let expected = members
            .iter()
            .any(|x| (0..n).all(|i| lower[i] <= x[i] && x[i] <= upper[i]));
        prop_assert_eq!(box_nonempty(&p, &lower, &upper).unwrap(), expected);
    }
}
