//! Root-modulus bounds for 2-connected multigraphs, with and without a
//! vertex free of multiple edges.

use relroots::reliability::DEFAULT_GUARD;
use relroots::roots::{check_modulus_bounds, enestrom_kakeya, DEFAULT_PRECISION};
use relroots::{HVector, Multigraph};

fn main() -> relroots::Result<()> {
    let graphs = [
        ("K_5", Multigraph::complete(5)),
        ("C_6", Multigraph::cycle(6)),
        (
            "doubled triangle",
            Multigraph::new(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])?,
        ),
        (
            "theta",
            Multigraph::new(
                5,
                [
                    (0, 1, 1),
                    (1, 4, 1),
                    (0, 2, 1),
                    (2, 4, 1),
                    (0, 3, 3),
                    (3, 4, 1),
                ],
            )?,
        ),
    ];
    for (name, g) in &graphs {
        let r = check_modulus_bounds(g, DEFAULT_GUARD, DEFAULT_PRECISION)?;
        println!(
            "{name:>16}: n={} m={} max |z| = {:.6} <= {} ({}), top ratio {:?}",
            r.n,
            r.m,
            r.max_modulus,
            r.bound,
            if r.ok() { "ok" } else { "VIOLATED" },
            r.top_ratio
        );
    }

    let rel =
        relroots::reliability::reliability(&Multigraph::complete(5), DEFAULT_GUARD, 1_000_000)?;
    let h = HVector::from_reliability(&rel, 5, 10)?;
    let annulus = enestrom_kakeya(&h.polynomial())?;
    println!("K_5 roots lie in {} <= |z| <= {}", annulus.lo, annulus.hi);
    Ok(())
}
