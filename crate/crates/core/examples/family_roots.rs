//! Roots of two joined cliques: the smallest known multigraph with a root
//! outside the unit disk, and an SVG plot of its roots.

use relroots::closed_forms::{build_family_graph, rel_family, FamilyParams};
use relroots::reliability::{rel_bruteforce, DEFAULT_GUARD};
use relroots::roots::{find_roots, format_root, roots_svg, DEFAULT_PRECISION};

fn main() -> relroots::Result<()> {
    let params = FamilyParams::new(2, 2, 6, 1)?;
    let rel = rel_family(&params)?;
    assert_eq!(
        rel,
        rel_bruteforce(&build_family_graph(&params)?, DEFAULT_GUARD)?
    );
    println!("Rel = {rel}");

    let roots = find_roots(&rel, DEFAULT_PRECISION)?;
    for z in &roots.roots {
        let [re, im, m] = format_root(z, 12, roots.precision_bits);
        println!("{re:>16} {im:>16}  |z| = {m}");
    }

    let path = std::env::temp_dir().join("family_roots.svg");
    std::fs::write(&path, roots_svg(&roots))?;
    println!("plot written to {}", path.display());
    Ok(())
}
