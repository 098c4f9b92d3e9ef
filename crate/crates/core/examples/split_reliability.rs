//! Split reliability: every surviving component holds exactly one terminal.

use relroots::closed_forms::{rel_complete_minus, split_rel_complete_minus};
use relroots::reliability::{rel_bruteforce, sprel, SplitSpec, DEFAULT_GUARD};
use relroots::Multigraph;

fn main() -> relroots::Result<()> {
    let pair = SplitSpec::pair(0, 1)?;
    for n in 3..=6 {
        let g = Multigraph::complete_minus_edge(n);
        let split = split_rel_complete_minus(n)?;
        let rel = rel_complete_minus(n)?;
        if g.pair_count() <= DEFAULT_GUARD {
            assert_eq!(split, sprel(&g, &pair, DEFAULT_GUARD)?);
            assert_eq!(rel, rel_bruteforce(&g, DEFAULT_GUARD)?);
        }
        println!("n = {n}");
        println!("  Rel   = {rel}");
        println!("  spRel = {split}");
    }

    // three terminals on K_4
    let three = SplitSpec::new(vec![0, 1, 2])?;
    println!(
        "K_4, terminals 0,1,2: {}",
        sprel(&Multigraph::complete(4), &three, DEFAULT_GUARD)?
    );
    Ok(())
}
