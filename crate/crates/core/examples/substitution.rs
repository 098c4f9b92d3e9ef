//! Edge substitution: composition formula against direct computation, and
//! the candidate-root polynomial for a given root of the base graph.

use num_complex::Complex;
use num_rational::BigRational;
use relroots::reliability::{rel_bruteforce, DEFAULT_GUARD};
use relroots::roots::find_roots;
use relroots::stability::times_conjugate;
use relroots::substitution::{
    corollary_root_poly, edge_substitute_graph, edge_substitute_poly, Gadget,
};
use relroots::Multigraph;

fn main() -> relroots::Result<()> {
    // path on four vertices with every edge replaced by a diamond
    let diamond = Multigraph::new(4, [(0, 2, 1), (0, 3, 1), (2, 3, 1), (1, 2, 1), (1, 3, 1)])?;
    let gadget = Gadget::new(diamond, 0, 1)?;
    let base = Multigraph::path(4);
    let sub = edge_substitute_graph(&base, &gadget)?;
    let composed = edge_substitute_poly(&base, &gadget, DEFAULT_GUARD)?;
    assert_eq!(composed, rel_bruteforce(&sub, DEFAULT_GUARD)?);
    println!("P_4[D]: {} vertices, {} edges", sub.n(), sub.m());
    println!("Rel = {composed}");

    // roots of spRel(H) - r/(1-r) Rel(H) for r = -1/2 + 3i and H = K_4 minus an edge
    let r = Complex::new(
        BigRational::new((-1).into(), 2.into()),
        BigRational::from_integer(3.into()),
    );
    let p = corollary_root_poly(&r, &Gadget::complete_minus(4)?, DEFAULT_GUARD)?;
    let roots = find_roots(&times_conjugate(&p), 128)?;
    for z in roots.to_f64().iter().filter(|z| z.im > 0.0) {
        println!(
            "candidate root {:.6} + {:.6}i, |z| = {:.6}",
            z.re,
            z.im,
            z.norm()
        );
    }
    Ok(())
}
