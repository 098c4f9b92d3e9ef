//! Exact Schur-Cohn root counts for a fixed polynomial and over a box of
//! complex parameters.

use relroots::stability::{
    build_fn, complexify, schur_cohn, schur_cohn_box, ParamBox, DEFAULT_MAX_DEPTH,
};
use relroots::RatPoly;

fn main() -> relroots::Result<()> {
    let p = RatPoly::parse_literal("2q^3 - 7q^2 + q + 3")?;
    let rep = schur_cohn(&complexify(&p))?;
    println!(
        "{p}: signs {:?}, {} roots outside the unit circle",
        rep.sign_strings(),
        rep.beta.unwrap()
    );

    // f_4 with the parameter anywhere in a small box
    let b = ParamBox::parse("-0.9027", "-0.9025", "8.3242", "8.3246")?;
    let rep = schur_cohn_box(&build_fn(4)?.on_box(b), DEFAULT_MAX_DEPTH)?;
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
    Ok(())
}
