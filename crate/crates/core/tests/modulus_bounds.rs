mod common;

use proptest::prelude::*;
use relroots::reliability::DEFAULT_GUARD;
use relroots::roots::{check_modulus_bounds, DEFAULT_PRECISION};
use relroots::{Error, Multigraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn roots_respect_vertex_bounds(seed in any::<u64>()) {
        let g = common::random_biconnected(&mut common::rng(seed), 3, 7, 8);
        let r = check_modulus_bounds(&g, DEFAULT_GUARD, DEFAULT_PRECISION).unwrap();
        prop_assert!(r.max_modulus <= r.bound as f64 + 1e-9, "{:?}", r);
        prop_assert!(r.ratio_ok, "{:?}", r);
    }
}

#[test]
fn simple_vertex_tightens_the_bound() {
    let r =
        check_modulus_bounds(&Multigraph::complete(5), DEFAULT_GUARD, DEFAULT_PRECISION).unwrap();
    assert!(r.simple_vertex && r.bound == 3 && r.ok());
    // every vertex sees a doubled edge
    let g = Multigraph::new(3, [(0, 1, 2), (1, 2, 2), (0, 2, 1)]).unwrap();
    let r = check_modulus_bounds(&g, DEFAULT_GUARD, DEFAULT_PRECISION).unwrap();
    assert!(!r.simple_vertex && r.bound == 2 && r.ok());
}

#[test]
fn cut_vertices_are_rejected() {
    let g = Multigraph::new(
        5,
        [
            (0, 1, 1),
            (1, 2, 1),
            (0, 2, 1),
            (2, 3, 1),
            (3, 4, 1),
            (2, 4, 1),
        ],
    )
    .unwrap();
    assert!(matches!(
        check_modulus_bounds(&g, DEFAULT_GUARD, DEFAULT_PRECISION),
        Err(Error::NotBiconnected)
    ));
}
