//! Certificates that each substituted graph `G^(k,n)` has a reliability root
//! outside the unit disk.

use relroots::driver::{certify, SUBSTITUTED_GRAPHS};
use relroots::roots::DEFAULT_PRECISION;
use relroots::stability::DEFAULT_MAX_DEPTH;

fn main() -> relroots::Result<()> {
    for (n, lambda, k, _, _) in SUBSTITUTED_GRAPHS {
        let c = certify(k, n, DEFAULT_MAX_DEPTH, DEFAULT_PRECISION)?;
        println!(
            "G^({k},{n}): {} vertices, {} edges, {lambda}-edge-connected, signs {} beta {:?} -> {}",
            c.vertices,
            c.edges,
            c.report.sign_strings().concat(),
            c.report.beta,
            if c.pass() {
                "certified"
            } else {
                "not certified"
            }
        );
    }
    Ok(())
}
