//! Reliability of a small multigraph by every method, plus its F- and H-vectors.

use relroots::reliability::{
    f_vector, rel_bruteforce, rel_deletion_contraction, rel_via_blocks, DEFAULT_BUDGET,
    DEFAULT_GUARD,
};
use relroots::Multigraph;

fn main() -> relroots::Result<()> {
    // a 4-cycle with one doubled edge and a pendant triangle on vertex 3
    let g = Multigraph::new(
        6,
        [
            (0, 1, 2),
            (1, 2, 1),
            (2, 3, 1),
            (3, 0, 1),
            (3, 4, 1),
            (4, 5, 1),
            (5, 3, 1),
        ],
    )?;

    let brute = rel_bruteforce(&g, DEFAULT_GUARD)?;
    let dc = rel_deletion_contraction(&g, DEFAULT_BUDGET)?;
    let blocks = rel_via_blocks(&g, DEFAULT_GUARD)?;
    assert!(brute == dc && dc == blocks);
    println!("Rel(G; q) = {brute}");

    let f = f_vector(&g, DEFAULT_GUARD)?;
    let h = f.to_h()?;
    println!(
        "F = {:?}",
        f.values.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    println!(
        "H = {:?}",
        h.values.iter().map(|x| x.to_string()).collect::<Vec<_>>()
    );
    println!(
        "H(1) = {} spanning trees = {}",
        h.total(),
        g.spanning_tree_count()?
    );
    println!("log-concave: {}", h.is_log_concave());
    Ok(())
}
