//! Univariate polynomials with exact rational coefficients, and the F- and
//! H-vectors of a cographic matroid.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in `q`, coefficients in ascending degree order. The zero
/// polynomial has no coefficients; otherwise the last coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct PolyDoc {
    var: String,
    coeffs: Vec<String>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^degree`
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    /// `1 - q`
    pub fn one_minus_q() -> Self {
        Self::from_integers([1, -1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    pub fn pow(&self, mut e: u64) -> RatPoly {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `p(q^k)`
    pub fn substitute_power(&self, k: usize) -> Result<RatPoly> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "power substitution needs k >= 1, got {k}"
            )));
        }
        let Some(d) = self.degree() else {
            return Ok(RatPoly::zero());
        };
        let mut coeffs = vec![BigRational::zero(); d * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Ok(RatPoly::new(coeffs))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Synthetic division by `1 - q`; `None` when the remainder is nonzero.
    pub fn div_one_minus_q(&self) -> Option<RatPoly> {
        // p(q) = (1 - q) s(q) = -(q - 1) s(q); divide by (q - 1) and negate.
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut quot = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (1..=d).rev() {
            carry = &carry + &self.coeffs[i];
            quot[i - 1] = -carry.clone();
        }
        carry += &self.coeffs[0];
        carry.is_zero().then(|| RatPoly::new(quot))
    }

    /// Divides out `(1 - q)^times`, failing on a nonzero remainder.
    pub fn deflate_one_minus_q(&self, times: usize) -> Result<RatPoly> {
        let mut p = self.clone();
        for pass in 0..times {
            if p.is_zero() {
                return Ok(p);
            }
            p = p.div_one_minus_q().ok_or_else(|| {
                Error::InexactDivision(format!(
                    "(1 - q) does not divide the polynomial on pass {} of {times}",
                    pass + 1
                ))
            })?;
        }
        Ok(p)
    }

    /// Largest `j` with `(1 - q)^j` dividing `self`, and the cofactor.
    pub fn split_one_minus_q(&self) -> (usize, RatPoly) {
        let mut j = 0;
        let mut p = self.clone();
        while let Some(next) = p.div_one_minus_q() {
            p = next;
            j += 1;
        }
        (j, p)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact quotient; errors when `divisor` leaves a remainder.
    pub fn div_exact(&self, divisor: &RatPoly) -> Result<RatPoly> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision("nonzero remainder".into()))
        }
    }

    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => RatPoly::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_json(&self) -> String {
        let doc = PolyDoc {
            var: "q".into(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        };
        serde_json::to_string(&doc).expect("polynomial serialization cannot fail")
    }

    pub fn parse_json(text: &str) -> Result<RatPoly> {
        let doc: PolyDoc = serde_json::from_str(text)?;
        if doc.var != "q" {
            return Err(Error::Parse(format!("unsupported variable {:?}", doc.var)));
        }
        let coeffs = doc
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatPoly::new(coeffs))
    }

    /// Parses expressions such as `q-2`, `2q^3 + 1/2q - 3` or `-q^2+1`.
    pub fn parse_literal(text: &str) -> Result<RatPoly> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial literal".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = RatPoly::zero();
        for term in terms {
            acc = &acc + &parse_term(term)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<RatPoly> {
    let bad = || Error::Parse(format!("cannot parse polynomial term {term:?}"));
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    let (coeff, degree) = match body.find('q') {
        None => (body, 0usize),
        Some(pos) => {
            let coeff = body[..pos].trim_end_matches('*');
            let rest = &body[pos + 1..];
            let degree = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(bad)?
            };
            (coeff, degree)
        }
    };
    let c = if coeff.is_empty() {
        if degree == 0 {
            return Err(bad());
        }
        BigRational::one()
    } else {
        parse_rational(coeff).map_err(|_| bad())?
    };
    Ok(RatPoly::monomial(
        c * BigRational::from_integer(sign.into()),
        degree,
    ))
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_rational(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Accepts `"a/b"`, `"a"` or a finite decimal such as `"-1.0174"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(n, d);
        return Ok(if negative { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        RatPoly::new(coeffs)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $method(self, rhs: RatPoly) -> RatPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

/// `(F_0, ..., F_{m-n+1})`: `F_i` counts the `i`-edge sets whose removal
/// leaves the graph connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    pub values: Vec<BigUint>,
    pub n: usize,
    pub m: u64,
}

/// `(H_0, ..., H_{m-n+1})` with `Rel(G;q) = (1-q)^{n-1} * sum H_k q^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    pub values: Vec<BigUint>,
    pub n: usize,
    pub m: u64,
}

impl FVector {
    /// `sum F_i q^i (1-q)^{m-i}`
    pub fn reliability(&self) -> RatPoly {
        let omq = RatPoly::one_minus_q();
        let mut acc = RatPoly::zero();
        for (i, f) in self.values.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(f.clone()));
            let term = omq.pow(self.m - i as u64).shift(i).scale(&c);
            acc = &acc + &term;
        }
        acc
    }

    /// The F-polynomial `sum F_i x^i`.
    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_integers(self.values.iter().cloned().map(BigInt::from))
    }

    pub fn to_h(&self) -> Result<HVector> {
        f_to_h(self)
    }
}

/// Converts an F-vector to the H-vector by dividing the F-form of the
/// reliability polynomial by `(1 - q)` exactly `n - 1` times.
pub fn f_to_h(f: &FVector) -> Result<HVector> {
    if f.n == 0 {
        return Err(Error::InvalidArgument("F-vector of an empty graph".into()));
    }
    let h = f.reliability().deflate_one_minus_q(f.n - 1)?;
    HVector::from_polynomial(&h, f.n, f.m)
}

impl HVector {
    /// Reads H from the cofactor `Rel / (1-q)^{n-1}`.
    pub fn from_polynomial(h: &RatPoly, n: usize, m: u64) -> Result<HVector> {
        let expected = (m + 1).checked_sub(n as u64 - 1).ok_or_else(|| {
            Error::InvalidArgument(format!("size m = {m} is below n - 1 = {}", n - 1))
        })? as usize;
        if h.coeffs().len() > expected {
            return Err(Error::InexactDivision(format!(
                "H-polynomial has degree {:?}, expected at most {}",
                h.degree(),
                expected - 1
            )));
        }
        let mut values = Vec::with_capacity(expected);
        for i in 0..expected {
            let c = h.coeff(i);
            if !c.is_integer() || c.is_negative() {
                return Err(Error::InexactDivision(format!(
                    "H_{i} = {c} is not a nonnegative integer"
                )));
            }
            values.push(c.to_integer().to_biguint().expect("nonnegative"));
        }
        Ok(HVector { values, n, m })
    }

    /// Deflates a reliability polynomial of a connected graph of order `n` and size `m`.
    pub fn from_reliability(rel: &RatPoly, n: usize, m: u64) -> Result<HVector> {
        let h = rel.deflate_one_minus_q(n.saturating_sub(1))?;
        Self::from_polynomial(&h, n, m)
    }

    pub fn polynomial(&self) -> RatPoly {
        RatPoly::from_integers(self.values.iter().cloned().map(BigInt::from))
    }

    /// `H(1)`, which equals the number of spanning trees.
    pub fn total(&self) -> BigUint {
        self.values.iter().sum()
    }

    /// True when every `H_i >= 1`.
    pub fn is_positive(&self) -> bool {
        self.values.iter().all(|h| !h.is_zero())
    }

    /// `H_i^2 >= H_{i-1} H_{i+1}` for every interior index.
    pub fn is_log_concave(&self) -> bool {
        self.values
            .windows(3)
            .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
    }

    /// `H_{m-n} / H_{m-n+1}`, the largest consecutive ratio for log-concave H.
    pub fn top_ratio(&self) -> Option<BigRational> {
        let d = self.values.len();
        if d < 2 {
            return None;
        }
        let num = BigInt::from_biguint(Sign::Plus, self.values[d - 2].clone());
        let den = BigInt::from_biguint(Sign::Plus, self.values[d - 1].clone());
        Some(BigRational::new(num, den))
    }
}

/// Expanded reliability `(1-q)^{n-1} H(q)`.
pub fn h_to_rel(h: &HVector) -> RatPoly {
    &RatPoly::one_minus_q().pow(h.n as u64 - 1) * &h.polynomial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_integers(c.iter().copied())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn uv(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn ring_arithmetic() {
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 2]).eval(&r(1, 2)), r(2, 1));
        assert!((&p(&[3, 4, 5]) * &RatPoly::zero()).is_zero());
        assert_eq!(&p(&[1, 2, 3]) - &p(&[1, 2, 3]), RatPoly::zero());
        assert_eq!(p(&[1, -1]).pow(3), p(&[1, -3, 3, -1]));
    }

    #[test]
    fn power_substitution() {
        assert_eq!(p(&[1, -1]).substitute_power(2).unwrap(), p(&[1, 0, -1]));
        let x = p(&[1, 0, -3, 2]);
        assert_eq!(x.substitute_power(1).unwrap(), x);
        assert!(x.substitute_power(0).is_err());
    }

    #[test]
    fn division_by_one_minus_q() {
        let x = &p(&[1, -1]).pow(2) * &p(&[1, 2]);
        assert_eq!(x.deflate_one_minus_q(2).unwrap(), p(&[1, 2]));
        assert!(x.deflate_one_minus_q(3).is_err());
        assert_eq!(x.split_one_minus_q(), (2, p(&[1, 2])));
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[1, 2]) * &p(&[-1, 0, 1]);
        let b = &p(&[1, 2]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 2]).monic());
        assert_eq!(a.div_exact(&p(&[1, 2])).unwrap(), p(&[-1, 0, 1]));
        assert!(a.div_exact(&p(&[5, 1])).is_err());
    }

    #[test]
    fn f_to_h_examples() {
        // triangle
        let h = f_to_h(&FVector {
            values: uv(&[1, 3]),
            n: 3,
            m: 3,
        })
        .unwrap();
        assert_eq!(h.values, uv(&[1, 2]));
        // any tree
        let h = f_to_h(&FVector {
            values: uv(&[1]),
            n: 5,
            m: 4,
        })
        .unwrap();
        assert_eq!(h.values, uv(&[1]));
        // double edge
        let h = f_to_h(&FVector {
            values: uv(&[1, 2]),
            n: 2,
            m: 2,
        })
        .unwrap();
        assert_eq!(h.values, uv(&[1, 1]));
        // F_2 would need a 2-edge removal leaving the triangle connected
        assert!(f_to_h(&FVector {
            values: uv(&[1, 3, 3]),
            n: 3,
            m: 3
        })
        .is_err());
    }

    #[test]
    fn h_to_rel_examples() {
        let h = HVector {
            values: uv(&[1, 2]),
            n: 3,
            m: 3,
        };
        assert_eq!(h_to_rel(&h), p(&[1, 0, -3, 2]));
        let h = HVector {
            values: uv(&[1]),
            n: 2,
            m: 1,
        };
        assert_eq!(h_to_rel(&h), p(&[1, -1]));
    }

    #[test]
    fn literal_parsing() {
        assert_eq!(RatPoly::parse_literal("q-2").unwrap(), p(&[-2, 1]));
        assert_eq!(
            RatPoly::parse_literal("2q^3 + 1/2q - 3").unwrap().coeff(1),
            r(1, 2)
        );
        assert_eq!(RatPoly::parse_literal("-q^2+1").unwrap(), p(&[1, 0, -1]));
        assert!(RatPoly::parse_literal("q^x").is_err());
        assert!(RatPoly::parse_literal("").is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1.01749").unwrap(), r(-101749, 100000));
        assert_eq!(parse_rational("3/6").unwrap(), r(1, 2));
        assert_eq!(parse_rational("7").unwrap(), r(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn json_schema() {
        let x = p(&[1, 0, -3, 2]);
        assert_eq!(
            x.to_json(),
            r#"{"var":"q","coeffs":["1/1","0/1","-3/1","2/1"]}"#
        );
        assert_eq!(RatPoly::parse_json(&x.to_json()).unwrap(), x);
        assert!(RatPoly::parse_json(r#"{"var":"x","coeffs":[]}"#).is_err());
    }

    proptest! {
        #[test]
        fn one_minus_q_division_inverts_multiplication(
            c in proptest::collection::vec(-50i64..50, 1..12),
            k in 0usize..5,
        ) {
            let base = p(&c);
            let x = &RatPoly::one_minus_q().pow(k as u64) * &base;
            prop_assert_eq!(x.deflate_one_minus_q(k).unwrap(), base);
        }

        #[test]
        fn json_round_trip(c in proptest::collection::vec((-99i64..99, 1i64..9), 0..10)) {
            let x = RatPoly::new(c.iter().map(|&(a, b)| r(a, b)).collect());
            prop_assert_eq!(RatPoly::parse_json(&x.to_json()).unwrap(), x);
        }
    }
}
