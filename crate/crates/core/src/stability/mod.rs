//! Schur-Cohn root counting relative to the unit circle, exact for
//! complex-rational polynomials and certified over rational parameter boxes.

pub mod bivariate;
pub mod certificate;
pub mod gauss;

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{format_rational, RatPoly};
use gauss::{determinant, schur_cohn_matrix, GaussInt};

pub use certificate::{
    build_fn, determinant_polynomials, param_box_from_root, schur_cohn_box, BoxPoly, FnFamily,
    ParamBox, DEFAULT_MAX_DEPTH,
};

pub type CRational = Complex<BigRational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl Sign {
    pub fn of(x: &BigRational) -> Option<Sign> {
        if x.is_positive() {
            Some(Sign::Positive)
        } else if x.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Signs of `M_1..M_n` and the resulting count of roots outside the unit
/// circle. `None` entries are undetermined signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurCohnReport {
    pub signs: Vec<Option<Sign>>,
    pub beta: Option<usize>,
    /// Exact values, present for a fixed polynomial.
    pub determinants: Option<Vec<BigRational>>,
    pub param_box: Option<ParamBox>,
    pub subdivision_depth: u32,
}

impl SchurCohnReport {
    fn from_signs(signs: Vec<Option<Sign>>) -> Self {
        let beta = signs
            .iter()
            .copied()
            .collect::<Option<Vec<Sign>>>()
            .map(|s| sign_changes(&s));
        SchurCohnReport {
            signs,
            beta,
            determinants: None,
            param_box: None,
            subdivision_depth: 0,
        }
    }

    pub fn is_determinate(&self) -> bool {
        self.beta.is_some()
    }

    /// Turns an undetermined pattern into an error.
    pub fn require_determinate(self) -> Result<Self> {
        if self.is_determinate() {
            Ok(self)
        } else {
            Err(Error::Indeterminate(self.subdivision_depth))
        }
    }

    pub fn sign_strings(&self) -> Vec<String> {
        self.signs
            .iter()
            .map(|s| s.map_or_else(|| "?".to_string(), |s| s.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "signs": self.sign_strings(),
            "beta": self.beta,
            "box": self.param_box.as_ref().map(ParamBox::to_json),
            "subdivision_depth": self.subdivision_depth,
        });
        if let Some(d) = &self.determinants {
            v["determinants"] = json!(d.iter().map(format_rational).collect::<Vec<_>>());
        }
        v
    }
}

/// Sign changes in `1, s_1, ..., s_n`.
pub fn sign_changes(signs: &[Sign]) -> usize {
    let mut prev = Sign::Positive;
    let mut changes = 0;
    for &s in signs {
        if s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

pub(crate) fn trim(coeffs: &[CRational]) -> Vec<CRational> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Common denominator of all real and imaginary parts.
pub(crate) fn common_denominator<'a, I>(coeffs: I) -> BigInt
where
    I: IntoIterator<Item = &'a CRational>,
{
    coeffs.into_iter().fold(BigInt::one(), |acc, c| {
        let acc = num_integer::lcm(acc, c.re.denom().clone());
        num_integer::lcm(acc, c.im.denom().clone())
    })
}

pub(crate) fn to_gauss(c: &CRational, scale: &BigInt) -> GaussInt {
    let s = BigRational::from_integer(scale.clone());
    GaussInt::new((&c.re * &s).to_integer(), (&c.im * &s).to_integer())
}

/// Schur-Cohn test on a polynomial with exact complex-rational coefficients
/// (ascending). Fails with [`Error::ZeroDeterminant`] if some `M_k` vanishes.
pub fn schur_cohn(coeffs: &[CRational]) -> Result<SchurCohnReport> {
    let a = trim(coeffs);
    if a.is_empty() {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    if a.len() < 2 {
        return Err(Error::InvalidArgument(
            "Schur-Cohn test needs degree at least 1".into(),
        ));
    }
    let n = a.len() - 1;
    let l = common_denominator(&a);
    let ga: Vec<GaussInt> = a.iter().map(|c| to_gauss(c, &l)).collect();
    let mut dets = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    for k in 1..=n {
        let d = determinant(schur_cohn_matrix(&ga, k));
        debug_assert!(d.im.is_zero(), "Hermitian determinant must be real");
        let value = BigRational::new(d.re, l.pow(2 * k as u32));
        match Sign::of(&value) {
            Some(s) => signs.push(Some(s)),
            None => return Err(Error::ZeroDeterminant(k)),
        }
        dets.push(value);
    }
    let mut report = SchurCohnReport::from_signs(signs);
    report.determinants = Some(dets);
    Ok(report)
}

/// Real polynomial as complex coefficients.
pub fn complexify(p: &RatPoly) -> Vec<CRational> {
    p.coeffs()
        .iter()
        .map(|c| Complex::new(c.clone(), BigRational::zero()))
        .collect()
}

/// `f * conj(f)` with conjugated coefficients: a real polynomial whose roots
/// are the roots of `f` together with their conjugates.
pub fn times_conjugate(f: &[CRational]) -> RatPoly {
    let n = f.len();
    if n == 0 {
        return RatPoly::zero();
    }
    let mut out = vec![CRational::new(BigRational::zero(), BigRational::zero()); 2 * n - 1];
    for (i, x) in f.iter().enumerate() {
        for (j, y) in f.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y.conj();
        }
    }
    debug_assert!(out.iter().all(|c| c.im.is_zero()));
    RatPoly::new(out.into_iter().map(|c| c.re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> CRational {
        Complex::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    fn cr(re: (i64, i64), im: (i64, i64)) -> CRational {
        Complex::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn linear_cases() {
        let r = schur_cohn(&[c(-2, 0), c(1, 0)]).unwrap();
        assert_eq!(r.signs, vec![Some(Sign::Negative)]);
        assert_eq!(r.beta, Some(1));
        assert_eq!(
            r.determinants.unwrap()[0],
            BigRational::from_integer((-3).into())
        );

        let r = schur_cohn(&[cr((-1, 2), (0, 1)), c(1, 0)]).unwrap();
        assert_eq!(r.beta, Some(0));
        assert_eq!(
            r.determinants.unwrap()[0],
            BigRational::new(3.into(), 4.into())
        );
    }

    #[test]
    fn f3_at_a_point() {
        // (2 + a + bi) q - (a + bi), a = -1.0174, b = 10.708
        let a = BigRational::new((-10174).into(), 10000.into());
        let b = BigRational::new(10708.into(), 1000.into());
        let two = BigRational::from_integer(2.into());
        let f = [
            Complex::new(-a.clone(), -b.clone()),
            Complex::new(&two + &a, b.clone()),
        ];
        let r = schur_cohn(&f).unwrap();
        let four = BigRational::from_integer(4.into());
        assert_eq!(r.determinants.unwrap()[0], &four * &a + &four);
        assert_eq!(r.beta, Some(1));
    }

    #[test]
    fn counts_roots_outside() {
        // (q - 3)(q - 1/2)(q + 2i): two roots outside
        let f1 = [c(-3, 0), c(1, 0)];
        let f2 = [cr((-1, 2), (0, 1)), c(1, 0)];
        let f3 = [c(0, 2), c(1, 0)];
        let mul = |x: &[CRational], y: &[CRational]| {
            let mut out = vec![c(0, 0); x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    out[i + j] = &out[i + j] + p * q;
                }
            }
            out
        };
        let f = mul(&mul(&f1, &f2), &f3);
        assert_eq!(schur_cohn(&f).unwrap().beta, Some(2));
    }

    #[test]
    fn hypothesis_failures() {
        // q - 1 has a root on the circle
        assert!(matches!(
            schur_cohn(&[c(-1, 0), c(1, 0)]),
            Err(Error::ZeroDeterminant(1))
        ));
        assert!(schur_cohn(&[c(0, 0)]).is_err());
        assert!(schur_cohn(&[c(5, 0)]).is_err());
    }

    #[test]
    fn sign_change_count() {
        use Sign::*;
        assert_eq!(
            sign_changes(&[Negative, Positive, Positive, Negative, Negative]),
            3
        );
        assert_eq!(sign_changes(&[Positive, Positive, Negative]), 1);
    }

    #[test]
    fn conjugate_product() {
        let f = [c(1, 1), c(0, 1)];
        // (1+i + iq)(1-i - iq) = 2 + 2q + q^2
        assert_eq!(times_conjugate(&f), RatPoly::from_integers([2, 2, 1]));
    }
}
