mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;
use relroots::chip_firing::h_vector_chip;
use relroots::poly::h_to_rel;
use relroots::reliability::{f_vector, DEFAULT_GUARD};
use relroots::{HVector, Multigraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_log_concave_and_counts_spanning_trees(seed in any::<u64>()) {
        let g = common::random_connected(&mut common::rng(seed), 7, 14);
        let h = f_vector(&g, DEFAULT_GUARD).unwrap().to_h().unwrap();
        prop_assert!(h.is_positive());
        prop_assert!(h.is_log_concave());
        let trees = g.spanning_tree_count().unwrap();
        prop_assert_eq!(BigUint::try_from(trees).unwrap(), h.total());
        prop_assert_eq!(h_to_rel(&h), common::oracle_rel(&g));
    }

    #[test]
    fn round_trip_through_reliability(seed in any::<u64>()) {
        let g = common::random_connected(&mut common::rng(seed), 6, 12);
        let f = f_vector(&g, DEFAULT_GUARD).unwrap();
        let h = HVector::from_reliability(&f.reliability(), g.n(), g.m()).unwrap();
        prop_assert_eq!(h, f.to_h().unwrap());
    }
}

#[test]
fn complete_graph_top_ratio() {
    for n in 3..=6 {
        let h = f_vector(&Multigraph::complete(n), DEFAULT_GUARD)
            .unwrap()
            .to_h()
            .unwrap();
        let expected = BigRational::new((n as i64 - 2).into(), 2.into());
        assert_eq!(h.top_ratio(), Some(expected), "K_{n}");
    }
    let h = h_vector_chip(&Multigraph::complete(7), 0).unwrap();
    assert_eq!(h.top_ratio(), Some(BigRational::new(5.into(), 2.into())));
}

#[test]
fn trees_have_trivial_h_vector() {
    let h = f_vector(&Multigraph::path(6), DEFAULT_GUARD)
        .unwrap()
        .to_h()
        .unwrap();
    assert_eq!(h.values, vec![BigUint::from(1u32)]);
    assert_eq!(h.top_ratio(), None);
}
