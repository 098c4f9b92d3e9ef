//! Substituting the 2-edge path into every edge of `G_{m,m}^{k,6k}` can push
//! the largest root modulus outward.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;
use relroots::closed_forms::{rel_family, FamilyParams};
use relroots::reliability::DEFAULT_GUARD;
use relroots::roots::{find_roots, DEFAULT_PRECISION};
use relroots::substitution::{corollary_root_poly, Gadget};
use relroots::RatPoly;

#[test]
fn path_gadget_maps_r_to_r_over_two_minus_r() {
    // spRel - r/(1-r) Rel = 2q(1-q) - r/(1-r) (1-q)^2 has roots 1 and r/(2-r)
    let r = BigRational::new(1.into(), 3.into());
    let p = corollary_root_poly(
        &Complex::new(r.clone(), BigRational::zero()),
        &Gadget::complete_minus(3).unwrap(),
        DEFAULT_GUARD,
    )
    .unwrap();
    let p = RatPoly::new(p.into_iter().map(|c| c.re).collect());
    let image = &r / (BigRational::from_integer(2.into()) - &r);
    assert!(p.eval(&image).is_zero());
    assert!(p.eval(&BigRational::from_integer(1.into())).is_zero());
}

#[test]
fn substituted_graph_has_larger_root() {
    for (m, k) in [(3usize, 18u32), (4, 11), (5, 9), (6, 8)] {
        let rel = rel_family(&FamilyParams::new(m, m, 1, 6).unwrap()).unwrap();
        let h = rel.deflate_one_minus_q(2 * m - 1).unwrap();
        let base: Vec<Complex64> = find_roots(&h, DEFAULT_PRECISION).unwrap().to_f64();
        // roots of G_{m,m}^{k,6k}: every k-th root of every base root
        let bundled: Vec<Complex64> = base
            .iter()
            .flat_map(|w| {
                let (rho, theta) = w.to_polar();
                (0..k).map(move |j| {
                    Complex64::from_polar(
                        rho.powf(1.0 / k as f64),
                        (theta + 2.0 * std::f64::consts::PI * j as f64) / k as f64,
                    )
                })
            })
            .collect();
        let before = bundled.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let two = Complex64::new(2.0, 0.0);
        let after = bundled
            .iter()
            .map(|z| (z / (two - z)).norm())
            .fold(0.0, f64::max);
        assert!(before > 1.0, "m = {m}");
        assert!(after > before, "m = {m}, k = {k}: {after} <= {before}");
    }
}
