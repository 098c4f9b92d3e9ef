//! Schur-Cohn sign patterns that hold for every parameter `a + bi` in a
//! rational box.
//!
//! Each determinant `M_k` is a polynomial in `(a, b)` of degree at most `2k`
//! in each variable. It is recovered exactly by interpolation on an integer
//! grid, then bounded on a box by expanding around the box centre.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde_json::{json, Value};

use super::bivariate::BiPoly;
use super::gauss::{determinant, schur_cohn_matrix};
use super::{common_denominator, to_gauss, CRational, SchurCohnReport, Sign};
use crate::closed_forms::{rel_complete_minus, split_rel_complete_minus};
use crate::error::{Error, Result};
use crate::poly::{format_rational, parse_rational, RatPoly};

pub const DEFAULT_MAX_DEPTH: u32 = 12;

/// Segments per box edge in [`param_box_from_root`].
const EDGE_SEGMENTS: usize = 1024;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `[a_lo, a_hi] x [b_lo, b_hi]`, the parameter `a + bi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamBox {
    pub a_lo: BigRational,
    pub a_hi: BigRational,
    pub b_lo: BigRational,
    pub b_hi: BigRational,
}

impl ParamBox {
    pub fn new(
        a_lo: BigRational,
        a_hi: BigRational,
        b_lo: BigRational,
        b_hi: BigRational,
    ) -> Result<Self> {
        if a_lo > a_hi || b_lo > b_hi {
            return Err(Error::InvalidArgument("box bounds are reversed".into()));
        }
        Ok(ParamBox {
            a_lo,
            a_hi,
            b_lo,
            b_hi,
        })
    }

    /// From decimal or `num/den` strings.
    pub fn parse(a_lo: &str, a_hi: &str, b_lo: &str, b_hi: &str) -> Result<Self> {
        ParamBox::new(
            parse_rational(a_lo)?,
            parse_rational(a_hi)?,
            parse_rational(b_lo)?,
            parse_rational(b_hi)?,
        )
    }

    pub fn point(a: BigRational, b: BigRational) -> Self {
        ParamBox {
            a_lo: a.clone(),
            a_hi: a,
            b_lo: b.clone(),
            b_hi: b,
        }
    }

    pub fn contains_box(&self, inner: &ParamBox) -> bool {
        self.a_lo <= inner.a_lo
            && inner.a_hi <= self.a_hi
            && self.b_lo <= inner.b_lo
            && inner.b_hi <= self.b_hi
    }

    pub fn contains(&self, a: &BigRational, b: &BigRational) -> bool {
        &self.a_lo <= a && a <= &self.a_hi && &self.b_lo <= b && b <= &self.b_hi
    }

    pub fn centre(&self) -> (BigRational, BigRational) {
        let two = rat(2);
        (
            (&self.a_lo + &self.a_hi) / &two,
            (&self.b_lo + &self.b_hi) / &two,
        )
    }

    pub fn half_widths(&self) -> (BigRational, BigRational) {
        let two = rat(2);
        (
            (&self.a_hi - &self.a_lo) / &two,
            (&self.b_hi - &self.b_lo) / &two,
        )
    }

    /// Halves the longer side.
    pub fn bisect(&self) -> (ParamBox, ParamBox) {
        let (ha, hb) = self.half_widths();
        let (ca, cb) = self.centre();
        let mut lo = self.clone();
        let mut hi = self.clone();
        if ha >= hb {
            lo.a_hi = ca.clone();
            hi.a_lo = ca;
        } else {
            lo.b_hi = cb.clone();
            hi.b_lo = cb;
        }
        (lo, hi)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a_lo": format_rational(&self.a_lo),
            "a_hi": format_rational(&self.a_hi),
            "b_lo": format_rational(&self.b_lo),
            "b_hi": format_rational(&self.b_hi),
        })
    }

    pub fn to_f64(&self) -> [f64; 4] {
        use num_traits::ToPrimitive;
        [&self.a_lo, &self.a_hi, &self.b_lo, &self.b_hi].map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

/// `f(q) = P(q) - (a + bi) Q(q)` with `P = spRel(K_n^-) / (1-q)^{n-2}` and
/// `Q = Rel(K_n^-) / (1-q)^{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnFamily {
    pub n: usize,
    pub split: RatPoly,
    pub rel: RatPoly,
}

pub fn build_fn(n: usize) -> Result<FnFamily> {
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "f_n is built for 3 <= n <= 6, got {n}"
        )));
    }
    let split = split_rel_complete_minus(n)?.deflate_one_minus_q(n - 2)?;
    let rel = rel_complete_minus(n)?.deflate_one_minus_q(n - 2)?;
    Ok(FnFamily { n, split, rel })
}

impl FnFamily {
    pub fn degree(&self) -> usize {
        self.split
            .degree()
            .unwrap_or(0)
            .max(self.rel.degree().unwrap_or(0))
    }

    /// Coefficients at a fixed parameter.
    pub fn at(&self, a: &BigRational, b: &BigRational) -> Vec<CRational> {
        (0..=self.degree())
            .map(|j| {
                let (p, q) = (self.split.coeff(j), self.rel.coeff(j));
                Complex::new(p - a * &q, -(b * q))
            })
            .collect()
    }

    pub fn on_box(&self, param_box: ParamBox) -> BoxPoly {
        let zero = BigRational::zero();
        let d = self.degree();
        BoxPoly {
            base: (0..=d)
                .map(|j| Complex::new(self.split.coeff(j), zero.clone()))
                .collect(),
            da: (0..=d)
                .map(|j| Complex::new(-self.rel.coeff(j), zero.clone()))
                .collect(),
            db: (0..=d)
                .map(|j| Complex::new(zero.clone(), -self.rel.coeff(j)))
                .collect(),
            param_box,
        }
    }
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }
}

/// A polynomial whose coefficients are affine in the box parameter:
/// `c_j = base_j + a * da_j + b * db_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPoly {
    pub base: Vec<CRational>,
    pub da: Vec<CRational>,
    pub db: Vec<CRational>,
    pub param_box: ParamBox,
}

fn affine_range(c0: &BigRational, ca: &BigRational, cb: &BigRational, b: &ParamBox) -> Interval {
    let ends = |coef: &BigRational, lo: &BigRational, hi: &BigRational| {
        let (x, y) = (coef * lo, coef * hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let (alo, ahi) = ends(ca, &b.a_lo, &b.a_hi);
    let (blo, bhi) = ends(cb, &b.b_lo, &b.b_hi);
    Interval {
        lo: c0 + alo + blo,
        hi: c0 + ahi + bhi,
    }
}

impl BoxPoly {
    pub fn at(&self, a: &BigRational, b: &BigRational) -> Vec<CRational> {
        let (a, b) = (
            Complex::new(a.clone(), BigRational::zero()),
            Complex::new(b.clone(), BigRational::zero()),
        );
        self.base
            .iter()
            .zip(&self.da)
            .zip(&self.db)
            .map(|((c, x), y)| c + x * &a + y * &b)
            .collect()
    }

    /// Real and imaginary coefficient ranges over the box.
    pub fn coefficient_intervals(&self) -> Vec<(Interval, Interval)> {
        self.base
            .iter()
            .zip(&self.da)
            .zip(&self.db)
            .map(|((c, x), y)| {
                (
                    affine_range(&c.re, &x.re, &y.re, &self.param_box),
                    affine_range(&c.im, &x.im, &y.im, &self.param_box),
                )
            })
            .collect()
    }

    /// Degree, checked to be the same for every parameter in the box.
    pub fn degree(&self) -> Result<usize> {
        let iv = self.coefficient_intervals();
        let top = iv
            .iter()
            .rposition(|(re, im)| {
                !(re.lo.is_zero() && re.hi.is_zero() && im.lo.is_zero() && im.hi.is_zero())
            })
            .ok_or_else(|| Error::InvalidArgument("zero polynomial".into()))?;
        let (re, im) = &iv[top];
        if re.contains_zero() && im.contains_zero() {
            return Err(Error::InvalidArgument(
                "leading coefficient may vanish inside the box".into(),
            ));
        }
        Ok(top)
    }

    pub fn with_box(&self, param_box: ParamBox) -> BoxPoly {
        BoxPoly {
            param_box,
            ..self.clone()
        }
    }
}

/// `M_1(a, b), ..., M_n(a, b)` as exact polynomials.
pub fn determinant_polynomials(f: &BoxPoly) -> Result<Vec<BiPoly>> {
    let n = f.degree()?;
    let len = n + 1;
    let (base, da, db) = (&f.base[..len], &f.da[..len], &f.db[..len]);
    let l = common_denominator(base.iter().chain(da).chain(db));
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let d = 2 * k;
        let scale = BigRational::from_integer(l.pow(2 * k as u32));
        let grid: Vec<Vec<BigRational>> = (0..=d)
            .map(|s| {
                (0..=d)
                    .map(|t| {
                        let (sa, tb) = (rat(s as i64), rat(t as i64));
                        let coeffs: Vec<_> = (0..len)
                            .map(|j| {
                                let c = &base[j]
                                    + &da[j] * Complex::new(sa.clone(), BigRational::zero())
                                    + &db[j] * Complex::new(tb.clone(), BigRational::zero());
                                to_gauss(&c, &l)
                            })
                            .collect();
                        let det = determinant(schur_cohn_matrix(&coeffs, k));
                        debug_assert!(det.im.is_zero());
                        BigRational::from_integer(det.re) / &scale
                    })
                    .collect()
            })
            .collect();
        out.push(BiPoly::from_grid(&grid));
    }
    Ok(out)
}

fn sign_subdivided(
    p: &BiPoly,
    b: &ParamBox,
    depth: u32,
    max_depth: u32,
    deepest: &mut u32,
) -> Option<Sign> {
    let (ca, cb) = b.centre();
    let (ha, hb) = b.half_widths();
    if let Some(s) = p.sign_on_box(&ca, &cb, &ha, &hb) {
        *deepest = (*deepest).max(depth);
        return Some(s);
    }
    if depth >= max_depth {
        *deepest = (*deepest).max(depth);
        return None;
    }
    let (lo, hi) = b.bisect();
    let s = sign_subdivided(p, &lo, depth + 1, max_depth, deepest)?;
    let t = sign_subdivided(p, &hi, depth + 1, max_depth, deepest)?;
    (s == t).then_some(s)
}

/// Signs of precomputed determinant polynomials over a box.
pub fn signs_over_box(
    polys: &[BiPoly],
    param_box: &ParamBox,
    max_depth: u32,
) -> Result<SchurCohnReport> {
    let mut deepest = 0;
    let mut signs = Vec::with_capacity(polys.len());
    for (k, p) in polys.iter().enumerate() {
        if p.is_zero() {
            return Err(Error::ZeroDeterminant(k + 1));
        }
        signs.push(sign_subdivided(p, param_box, 0, max_depth, &mut deepest));
    }
    let mut report = SchurCohnReport::from_signs(signs);
    report.param_box = Some(param_box.clone());
    report.subdivision_depth = deepest;
    Ok(report)
}

/// Schur-Cohn signs valid for every parameter in the box of `f`, bisecting
/// the longer side up to `max_depth` times where the first bound is too crude.
pub fn schur_cohn_box(f: &BoxPoly, max_depth: u32) -> Result<SchurCohnReport> {
    let polys = determinant_polynomials(f)?;
    signs_over_box(&polys, &f.param_box, max_depth)
}

fn cabs_upper(z: &CRational) -> BigRational {
    z.re.abs() + z.im.abs()
}

fn to_exact(z: Complex64) -> Result<CRational> {
    let conv = |x: f64| {
        BigRational::from_f64(x).ok_or_else(|| Error::InvalidArgument("non-finite value".into()))
    };
    Ok(Complex::new(conv(z.re)?, conv(z.im)?))
}

fn to_f64(z: &CRational) -> Complex64 {
    use num_traits::ToPrimitive;
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

fn cpow(z: &CRational, k: u32) -> CRational {
    let mut acc = Complex::new(BigRational::one(), BigRational::zero());
    for _ in 0..k {
        acc = &acc * z;
    }
    acc
}

/// Distance from 0 to `[lo, hi]`.
fn gap_to_zero(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_positive() {
        lo.clone()
    } else if hi.is_negative() {
        -hi
    } else {
        BigRational::zero()
    }
}

fn round_out(x: &BigRational, up: bool) -> BigRational {
    let grid = BigRational::from_integer(BigInt::from(10).pow(12));
    let scaled = x * &grid;
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r / grid
}

/// Rational box containing `z / (1 - z)` for `z` the principal `k`-th root
/// of every `w` in `[re_lo, re_hi] + i[im_lo, im_hi]`.
///
/// The map is analytic on the box, so its real and imaginary parts peak on
/// the boundary. Each edge is cut into short segments; on each, an exact
/// rational near-root with an exactly computed residual plus a Lipschitz
/// bound on the root branch gives a disc that holds the image.
pub fn param_box_from_root(
    re_lo: &BigRational,
    re_hi: &BigRational,
    im_lo: &BigRational,
    im_hi: &BigRational,
    k: u32,
) -> Result<ParamBox> {
    if k < 1 {
        return Err(Error::InvalidArgument(
            "root index must be at least 1".into(),
        ));
    }
    if re_lo > re_hi || im_lo > im_hi {
        return Err(Error::InvalidArgument("box bounds are reversed".into()));
    }
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let straddles_real_axis = im_lo <= &zero && &zero <= im_hi;
    if straddles_real_axis && re_lo <= &one && &one <= re_hi {
        return Err(Error::InvalidArgument(
            "box contains 1, a pole of z/(1-z)".into(),
        ));
    }
    if k > 1 && straddles_real_axis && re_lo <= &zero {
        return Err(Error::InvalidArgument(
            "box meets the branch cut of the principal root".into(),
        ));
    }
    let r_lo = gap_to_zero(re_lo, re_hi).max(gap_to_zero(im_lo, im_hi));
    let tan_bound = if k > 2 {
        BigRational::from_f64((std::f64::consts::PI / k as f64).tan() * (1.0 - 1e-9)).unwrap()
    } else {
        zero.clone()
    };

    let corners = [
        Complex::new(re_lo.clone(), im_lo.clone()),
        Complex::new(re_hi.clone(), im_lo.clone()),
        Complex::new(re_hi.clone(), im_hi.clone()),
        Complex::new(re_lo.clone(), im_hi.clone()),
    ];
    let segs = rat(EDGE_SEGMENTS as i64);
    let mut bounds: Option<[BigRational; 4]> = None;
    for e in 0..4 {
        let (p0, p1) = (&corners[e], &corners[(e + 1) % 4]);
        let step = (p1 - p0) / Complex::new(segs.clone(), zero.clone());
        let h = cabs_upper(&step) / rat(2);
        for s in 0..EDGE_SEGMENTS {
            let t = Complex::new(rat(2 * s as i64 + 1) / rat(2), zero.clone());
            let wc = p0 + &step * t;
            let z = if k == 1 {
                wc.clone()
            } else {
                let w = to_f64(&wc);
                to_exact(Complex64::from_polar(
                    w.norm().powf(1.0 / k as f64),
                    w.arg() / k as f64,
                ))?
            };
            let err = cabs_upper(&(cpow(&z, k) - &wc));
            let reach = &h + &err;
            let lipschitz = if k == 1 {
                one.clone()
            } else {
                let r_path = &r_lo - &err;
                if !r_path.is_positive() {
                    return Err(Error::InvalidArgument("box too close to 0".into()));
                }
                // The segment disc must stay off the cut and z must be the principal root.
                if !(wc.re > reach || wc.im.abs() > reach) {
                    return Err(Error::InvalidArgument(
                        "box too close to the branch cut of the principal root".into(),
                    ));
                }
                let principal = if k == 2 {
                    z.re.is_positive()
                } else {
                    z.re.is_positive() && z.im.abs() < &z.re * &tan_bound
                };
                if !principal {
                    return Err(Error::InvalidArgument(
                        "principal root not identified".into(),
                    ));
                }
                let inv = if r_path >= one {
                    one.clone()
                } else {
                    one.clone() / r_path
                };
                inv / rat(k as i64)
            };
            let rho = lipschitz * reach;
            let omz = Complex::new(&one - &z.re, -z.im.clone());
            let l1 = omz.re.abs().max(omz.im.abs());
            if l1 <= rho {
                return Err(Error::InvalidArgument(
                    "box too close to the pole at 1".into(),
                ));
            }
            let pad = &rho / (&l1 * (&l1 - &rho));
            let g = &z / &omz;
            let cand = [&g.re - &pad, &g.re + &pad, &g.im - &pad, &g.im + &pad];
            bounds = Some(match bounds {
                None => cand,
                Some([a, b, c, d]) => [
                    a.min(cand[0].clone()),
                    b.max(cand[1].clone()),
                    c.min(cand[2].clone()),
                    d.max(cand[3].clone()),
                ],
            });
        }
    }
    let [a_lo, a_hi, b_lo, b_hi] = bounds.unwrap();
    ParamBox::new(
        round_out(&a_lo, false),
        round_out(&a_hi, true),
        round_out(&b_lo, false),
        round_out(&b_hi, true),
    )
}

/// Reference box for `k = 9`, `n = 3`.
pub fn box_k9() -> ParamBox {
    ParamBox::parse("-1.01749", "-1.01731", "10.70762", "10.70814").unwrap()
}

/// Reference box for `k = 7`, `n = 4`.
pub fn box_k7() -> ParamBox {
    ParamBox::parse("-0.90269", "-0.90254", "8.32420", "8.32462").unwrap()
}

/// Bounds on the root of `G_{3,3}^{1,6}` that all the boxes are derived from.
pub fn root_box() -> [BigRational; 4] {
    ["0.69659", "0.69660", "0.77393", "0.77394"].map(|s| parse_rational(s).unwrap())
}
