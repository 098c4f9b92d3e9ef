//! Critical configurations of a multigraph and the H-vector they count.

use relroots::chip_firing::{
    burning_matches_firing, critical_configs, critical_monomials, h_vector_chip, ideal_check,
};
use relroots::reliability::{f_vector, DEFAULT_GUARD};
use relroots::Multigraph;

fn main() -> relroots::Result<()> {
    let g = Multigraph::new(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)])?;
    let sink = 3;

    let configs = critical_configs(&g, sink)?;
    println!("{} critical configurations with sink {sink}", configs.len());
    for c in configs.iter().take(5) {
        println!("  {:?}", c.theta);
    }

    let h = h_vector_chip(&g, sink)?;
    assert_eq!(h, f_vector(&g, DEFAULT_GUARD)?.to_h()?);
    println!(
        "H = {:?}",
        h.values.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );

    let monomials = critical_monomials(&g, sink)?;
    let report = ideal_check(&monomials, g.n(), g.m(), g.has_no_multiple_edges_at(sink));
    println!(
        "order ideal: {}, pure: {}",
        report.closed_under_division, report.pure
    );
    println!(
        "burning test agrees with firing: {}",
        burning_matches_firing(&g, sink)?
    );
    Ok(())
}
