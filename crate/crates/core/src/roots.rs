//! Complex roots of exact polynomials.
//!
//! Exact factors `q` and `1 - q` are split off first and repeated factors are
//! separated, then each squarefree part goes through an `f64` Aberth-Ehrlich
//! sweep followed by Aberth polishing in [`BigFloat`] arithmetic.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::Write;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bigfloat::{format_fixed, format_significant, BigComplex, BigFloat};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::{HVector, RatPoly};
use crate::reliability;

pub const DEFAULT_PRECISION: u32 = 256;
pub const MAX_PRECISION: u32 = 4096;

const F64_SWEEPS: usize = 600;
const POLISH_SWEEPS: usize = 60;

/// Roots with multiplicity, sorted by descending modulus then descending
/// real part.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<BigComplex>,
    /// `|p(z) / p'(z)|` at each root, for the squarefree factor it came from.
    /// Exact roots (0 and 1) carry 0.
    pub residuals: Vec<f64>,
    pub precision_bits: u32,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn to_f64(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .map(|z| {
                let (re, im) = z.to_f64();
                Complex64::new(re, im)
            })
            .collect()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.to_f64().iter().map(|z| z.norm()).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Integer coefficients after clearing denominators.
fn integer_coeffs(p: &RatPoly) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| {
        num_integer::lcm(acc, c.denom().clone())
    });
    p.coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

const PRIMES: [u64; 4] = [
    2_305_843_009_213_693_951,
    4_611_686_018_427_387_847,
    1_152_921_504_606_846_883,
    9_223_372_036_854_775_783,
];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !b.is_empty() {
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let f = mulmod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + p - mulmod(f, c, p)) % p;
            }
            trim_mod(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when the reduction modulo some large prime is squarefree, which
/// proves the polynomial squarefree over the rationals.
fn squarefree_by_reduction(p: &RatPoly) -> bool {
    let ints = integer_coeffs(p);
    for &prime in &PRIMES {
        let bp = BigInt::from(prime);
        let reduce = |c: &BigInt| -> u64 {
            let r = c % &bp;
            let r = if r.is_negative() { r + &bp } else { r };
            r.to_u64().unwrap()
        };
        let f: Vec<u64> = ints.iter().map(reduce).collect();
        if *f.last().unwrap() == 0 {
            continue;
        }
        let df: Vec<u64> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % prime, prime))
            .collect();
        if gcd_degree_mod(f, df, prime) == 0 {
            return true;
        }
    }
    false
}

/// Yun's algorithm: `p = c * prod a_i^i` with each `a_i` squarefree.
fn squarefree_parts(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    if squarefree_by_reduction(p) {
        return vec![(p.clone(), 1)];
    }
    let mut out = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn eval_f64(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Newton quotient `p(z)/p'(z)`, through the reversed polynomial when
/// `|z| > 1` to keep magnitudes bounded.
fn newton_f64(
    coeffs: &[Complex64],
    deriv: &[Complex64],
    rev: &[Complex64],
    rev_deriv: &[Complex64],
    z: Complex64,
) -> Complex64 {
    let d = (coeffs.len() - 1) as f64;
    if z.norm() <= 1.0 {
        eval_f64(coeffs, z) / eval_f64(deriv, z)
    } else {
        let w = z.inv();
        let r = eval_f64(rev, w);
        let dr = eval_f64(rev_deriv, w);
        // p'/p = w (d - w r'/r)
        let ratio = w * (Complex64::new(d, 0.0) - w * dr / r);
        ratio.inv()
    }
}

fn derivative_f64(c: &[Complex64]) -> Vec<Complex64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &x)| x * i as f64)
        .collect()
}

/// Positive root of `|a_d| x^d = sum_{i<d} |a_i| x^i`; every root lies within it.
fn cauchy_radius(abs: &[f64]) -> f64 {
    let d = abs.len() - 1;
    let f = |x: f64| {
        let mut s = -abs[d] * x.powi(d as i32);
        for (i, &a) in abs.iter().enumerate().take(d) {
            s += a * x.powi(i as i32);
        }
        s
    };
    let mut hi = 1.0;
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Scaled `f64` copies of the coefficients, largest magnitude near 1.
fn scaled_f64(p: &RatPoly) -> Vec<Complex64> {
    let floats: Vec<BigFloat> = p
        .coeffs()
        .iter()
        .map(|c| BigFloat::from_rational(c, 64))
        .collect();
    let top = floats.iter().filter_map(|f| f.top()).max().unwrap_or(0);
    floats
        .iter()
        .map(|f| Complex64::new(f.mul_pow2(-top).to_f64(), 0.0))
        .collect()
}

fn aberth_f64(p: &RatPoly) -> Vec<Complex64> {
    let coeffs = scaled_f64(p);
    let d = coeffs.len() - 1;
    let deriv = derivative_f64(&coeffs);
    let rev: Vec<Complex64> = coeffs.iter().rev().copied().collect();
    let rev_deriv = derivative_f64(&rev);
    let abs: Vec<f64> = coeffs.iter().map(|c| c.norm()).collect();
    let radius = cauchy_radius(&abs);
    let offset = std::f64::consts::SQRT_2 - 1.0;
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + offset)
        })
        .collect();
    let mut done = vec![false; d];
    for _ in 0..F64_SWEEPS {
        let mut all = true;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let n = newton_f64(&coeffs, &deriv, &rev, &rev_deriv, z[i]);
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = n / (Complex64::new(1.0, 0.0) - n * s);
            if step.is_finite() {
                z[i] -= step;
            }
            if step.norm() < 1e-15 * z[i].norm().max(1.0) || !step.is_finite() {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z
}

struct Polisher {
    coeffs: Vec<BigFloat>,
    deriv: Vec<BigFloat>,
    prec: u64,
}

impl Polisher {
    fn new(p: &RatPoly, prec: u64) -> Self {
        let coeffs: Vec<BigFloat> = p
            .coeffs()
            .iter()
            .map(|c| BigFloat::from_rational(c, prec))
            .collect();
        let deriv = p
            .derivative()
            .coeffs()
            .iter()
            .map(|c| BigFloat::from_rational(c, prec))
            .collect();
        Polisher {
            coeffs,
            deriv,
            prec,
        }
    }

    fn horner(&self, c: &[BigFloat], z: &BigComplex) -> BigComplex {
        let mut acc = BigComplex::zero();
        for a in c.iter().rev() {
            acc = acc.mul(z, self.prec);
            acc.re = acc.re.add(a, self.prec);
        }
        acc
    }

    fn newton(&self, z: &BigComplex) -> Option<BigComplex> {
        let dp = self.horner(&self.deriv, z);
        if dp.re.is_zero() && dp.im.is_zero() {
            return None;
        }
        Some(self.horner(&self.coeffs, z).div(&dp, self.prec))
    }

    /// Aberth sweeps until every step is below `2^(-prec/2) * max(1, |z|)`.
    fn polish(&self, z: &mut [BigComplex]) -> bool {
        let d = z.len();
        let tol = -(self.prec as i64 / 2);
        let mut done = vec![false; d];
        for _ in 0..POLISH_SWEEPS {
            let mut all = true;
            let approx: Vec<Complex64> = z
                .iter()
                .map(|w| {
                    let (re, im) = w.to_f64();
                    Complex64::new(re, im)
                })
                .collect();
            for i in 0..d {
                if done[i] {
                    continue;
                }
                let Some(n) = self.newton(&z[i]) else {
                    all = false;
                    continue;
                };
                // The repulsion sum only perturbs the step at second order.
                let s: Complex64 = (0..d)
                    .filter(|&j| j != i)
                    .map(|j| (approx[i] - approx[j]).inv())
                    .sum();
                let step = if s.is_finite() {
                    let ns = n.mul(&BigComplex::from_f64(s.re, s.im), self.prec);
                    let denom =
                        BigComplex::new(BigFloat::from_int(1).sub(&ns.re, self.prec), ns.im.neg());
                    n.div(&denom, self.prec)
                } else {
                    n
                };
                z[i] = z[i].sub(&step, self.prec);
                let scale = z[i].abs(32).top().unwrap_or(0).max(0);
                let small = step.abs(32).top().is_none_or(|t| t <= tol + scale);
                if small {
                    done[i] = true;
                } else {
                    all = false;
                }
            }
            if all {
                return true;
            }
        }
        false
    }

    fn residual(&self, z: &BigComplex) -> f64 {
        self.newton(z).map_or(f64::INFINITY, |n| n.abs(64).to_f64())
    }
}

fn solve_squarefree(p: &RatPoly, precision_bits: u32) -> Result<(Vec<BigComplex>, Vec<f64>, u32)> {
    let start: Vec<BigComplex> = aberth_f64(p)
        .into_iter()
        .map(|z| BigComplex::from_f64(z.re, z.im))
        .collect();
    let mut z = start;
    let mut prec = precision_bits;
    loop {
        let polisher = Polisher::new(p, prec as u64);
        let converged = polisher.polish(&mut z);
        let residuals: Vec<f64> = z.iter().map(|w| polisher.residual(w)).collect();
        let threshold = 2f64.powi(-(prec as i32) / 3);
        let ok = converged
            && residuals
                .iter()
                .zip(&z)
                .all(|(r, w)| *r <= threshold * w.abs(32).to_f64().max(1.0));
        if ok {
            // conjugate pairs this close cannot be told apart at this precision
            let snap = BigFloat::from_f64(1.0).mul_pow2(-(prec as i64) / 2);
            for w in z.iter_mut() {
                let scale = if w.abs(32).to_f64() > 1.0 {
                    w.abs(prec as u64)
                } else {
                    BigFloat::from_f64(1.0)
                };
                if w.im.abs().cmp_value(&snap.mul(&scale, prec as u64)) != Ordering::Greater {
                    w.im = BigFloat::zero();
                }
            }
            return Ok((z, residuals, prec));
        }
        if prec >= MAX_PRECISION {
            return Err(Error::NoConvergence(prec));
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

fn compare_roots(a: &BigComplex, b: &BigComplex) -> Ordering {
    let prec = 128;
    let (ma, mb) = (a.norm_sqr(prec), b.norm_sqr(prec));
    let tol = ma.abs().add(&mb.abs(), prec).mul_pow2(-100);
    let diff = ma.sub(&mb, prec);
    if diff.abs().cmp_value(&tol) == Ordering::Greater {
        return diff.cmp_value(&BigFloat::zero());
    }
    let dre = a.re.sub(&b.re, prec);
    let tol_re = a.re.abs().add(&b.re.abs(), prec).mul_pow2(-100);
    if dre.abs().cmp_value(&tol_re) == Ordering::Greater {
        return dre.cmp_value(&BigFloat::zero());
    }
    a.im.cmp_value(&b.im)
}

/// All complex roots of `p`, with multiplicity.
pub fn find_roots(p: &RatPoly, precision_bits: u32) -> Result<RootSet> {
    let degree = p.degree().unwrap_or(0);
    if degree == 0 {
        return Err(Error::InvalidArgument(
            "root finding needs a polynomial of degree at least 1".into(),
        ));
    }
    if precision_bits < 64 {
        return Err(Error::InvalidArgument(
            "precision must be at least 64 bits".into(),
        ));
    }
    let mut roots = Vec::with_capacity(degree);
    let mut residuals = Vec::with_capacity(degree);

    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let rest = RatPoly::new(p.coeffs()[zeros..].to_vec());
    let (ones, rest) = rest.split_one_minus_q();
    for _ in 0..zeros {
        roots.push(BigComplex::zero());
        residuals.push(0.0);
    }
    for _ in 0..ones {
        roots.push(BigComplex::from_f64(1.0, 0.0));
        residuals.push(0.0);
    }

    let mut used = precision_bits;
    if rest.degree().unwrap_or(0) > 0 {
        for (part, mult) in squarefree_parts(&rest) {
            let (zs, rs, prec) = solve_squarefree(&part, precision_bits)?;
            used = used.max(prec);
            for (z, r) in zs.into_iter().zip(rs) {
                for _ in 0..mult {
                    roots.push(z.clone());
                    residuals.push(r);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| compare_roots(&roots[j], &roots[i]));
    Ok(RootSet {
        roots: order.iter().map(|&i| roots[i].clone()).collect(),
        residuals: order.iter().map(|&i| residuals[i]).collect(),
        precision_bits: used,
    })
}

/// Root of largest modulus; ties go to the larger real part, then to the
/// upper half plane.
pub fn max_modulus_root(rs: &RootSet) -> Result<BigComplex> {
    rs.roots
        .iter()
        .max_by(|a, b| compare_roots(a, b))
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("empty root set".into()))
}

/// Exact modulus rounded to the working precision.
pub fn modulus(z: &BigComplex, prec: u32) -> BigFloat {
    z.abs(prec as u64)
}

/// `re, im, modulus` as fixed-point decimals with `digits` fractional digits.
pub fn format_root(z: &BigComplex, digits: usize, prec: u32) -> [String; 3] {
    [
        format_fixed(&z.re.to_rational(), digits),
        format_fixed(&z.im.to_rational(), digits),
        format_fixed(&modulus(z, prec).to_rational(), digits),
    ]
}

/// CSV with header `re,im,modulus`, 17 significant digits per field.
pub fn write_roots_csv<W: Write>(rs: &RootSet, mut out: W) -> Result<()> {
    writeln!(out, "re,im,modulus")?;
    for z in &rs.roots {
        let m = modulus(z, rs.precision_bits);
        writeln!(
            out,
            "{},{},{}",
            format_significant(&z.re.to_rational(), 17),
            format_significant(&z.im.to_rational(), 17),
            format_significant(&m.to_rational(), 17)
        )?;
    }
    Ok(())
}

/// Scatter plot of the roots against the unit circle.
pub fn roots_svg(rs: &RootSet) -> String {
    let pts = rs.to_f64();
    let extent = pts
        .iter()
        .map(|z| z.re.abs().max(z.im.abs()))
        .fold(1.0f64, f64::max)
        * 1.1;
    let size = 480.0;
    let scale = size / (2.0 * extent);
    let map = |x: f64, y: f64| ((x + extent) * scale, (extent - y) * scale);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let (cx, cy) = map(0.0, 0.0);
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{cy}" x2="{size}" y2="{cy}" stroke="#ccc"/>"##
    );
    let _ = writeln!(
        s,
        r##"<line x1="{cx}" y1="0" x2="{cx}" y2="{size}" stroke="#ccc"/>"##
    );
    let _ = writeln!(
        s,
        r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="#888"/>"##,
        scale
    );
    for z in &pts {
        let (x, y) = map(z.re, z.im);
        let colour = if z.norm() > 1.0 { "#c0392b" } else { "#2c3e50" };
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{colour}"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Closed annulus `lo <= |z| <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annulus {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Annulus {
    pub fn contains(&self, modulus: f64, slack: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::INFINITY);
        let hi = self.hi.to_f64().unwrap_or(f64::INFINITY);
        modulus >= lo * (1.0 - slack) - slack && modulus <= hi * (1.0 + slack) + slack
    }
}

/// Min and max of `a_{i-1} / a_i` for a polynomial with positive coefficients.
pub fn enestrom_kakeya(p: &RatPoly) -> Result<Annulus> {
    let c = p.coeffs();
    if c.len() < 2 {
        return Err(Error::InvalidArgument(
            "annulus needs degree at least 1".into(),
        ));
    }
    if c.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument(
            "annulus bound needs strictly positive coefficients".into(),
        ));
    }
    let ratios: Vec<BigRational> = c.windows(2).map(|w| &w[0] / &w[1]).collect();
    Ok(Annulus {
        lo: ratios.iter().min().unwrap().clone(),
        hi: ratios.iter().max().unwrap().clone(),
    })
}

/// Outcome of checking the root-modulus bounds on one 2-connected graph.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusBoundReport {
    pub n: usize,
    pub m: u64,
    pub max_modulus: f64,
    /// Whether some vertex has no incident multiple edges (and `n >= 3`).
    pub simple_vertex: bool,
    /// `n - 1`, or `n - 2` in the simple-vertex case.
    pub bound: u64,
    pub modulus_ok: bool,
    /// `H_{m-n} / H_{m-n+1}` as a decimal, absent when `m = n - 1`.
    pub top_ratio: Option<f64>,
    pub ratio_ok: bool,
}

impl ModulusBoundReport {
    pub fn ok(&self) -> bool {
        self.modulus_ok && self.ratio_ok
    }
}

/// Computes the H-vector and its roots, then checks `|z| <= n - 1`, or
/// `n - 2` when some vertex has no incident multiple edges, plus the exact
/// coefficient-ratio version of the same bound.
pub fn check_modulus_bounds(
    g: &Multigraph,
    guard: usize,
    precision_bits: u32,
) -> Result<ModulusBoundReport> {
    g.require_connected()?;
    let n = g.n();
    if n < 2 || g.blocks()?.len() != 1 {
        return Err(Error::NotBiconnected);
    }
    let rel = reliability::reliability(g, guard, reliability::DEFAULT_BUDGET)?;
    let h = HVector::from_reliability(&rel, n, g.m())?;
    let simple_vertex = n >= 3 && (0..n).any(|w| g.has_no_multiple_edges_at(w));
    let bound = if simple_vertex {
        n as u64 - 2
    } else {
        n as u64 - 1
    };

    let hp = h.polynomial();
    let max_modulus = if hp.degree().unwrap_or(0) > 0 {
        let rs = find_roots(&hp, precision_bits)?;
        max_modulus_root(&rs)?.abs(64).to_f64()
    } else {
        0.0
    };
    let ratio = h.top_ratio();
    let ratio_ok = ratio
        .as_ref()
        .is_none_or(|r| *r <= BigRational::from_integer(BigInt::from(bound)));
    Ok(ModulusBoundReport {
        n,
        m: g.m(),
        max_modulus,
        simple_vertex,
        bound,
        modulus_ok: max_modulus <= bound as f64 + 1e-9,
        top_ratio: ratio.and_then(|r| r.to_f64()),
        ratio_ok,
    })
}
