//! Largest-modulus roots of `G_{n,n}^{1,6}`. Pass a maximum `n` (default 6).

use relroots::driver::{table1, table1_csv, REFERENCE_ROOTS};
use relroots::roots::DEFAULT_PRECISION;

fn main() -> relroots::Result<()> {
    let max_n = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let rows = table1(max_n, DEFAULT_PRECISION)?;
    print!("{}", table1_csv(&rows, 10));
    for row in &rows {
        let (_, re, im, m) = REFERENCE_ROOTS[row.n - 3];
        let got = row.root.to_f64();
        let err = (got.0 - re).abs().max((got.1 - im).abs());
        println!(
            "n = {:>2}: degree {}, |error| {err:.1e} (expected modulus {m})",
            row.n, row.degree
        );
    }
    Ok(())
}
