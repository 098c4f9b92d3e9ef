//! Binary floating point with a big-integer mantissa and an explicit
//! precision argument on every rounding operation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `mant * 2^exp`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(v: i64) -> Self {
        BigFloat {
            mant: BigInt::from(v),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Position of the top bit: `|x|` lies in `[2^(t-1), 2^t)`.
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.exp + self.mant.bits() as i64)
    }

    /// Rounds the mantissa to `prec` bits, ties to even.
    fn round(mut self, prec: u64) -> Self {
        let bits = self.mant.bits();
        if bits > prec {
            let drop = bits - prec;
            let sign = self.mant.sign();
            let mag = self.mant.magnitude();
            let mut q = mag >> drop;
            let rem = mag - (&q << drop);
            let half = num_bigint::BigUint::one() << (drop - 1);
            if rem > half || (rem == half && q.is_odd()) {
                q += 1u32;
            }
            self.mant = BigInt::from_biguint(sign, q);
            self.exp += drop as i64;
        }
        if self.mant.is_zero() {
            self.exp = 0;
        }
        self
    }

    /// Quotient with a sticky bit, so a later rounding sees inexactness.
    fn sticky_quotient(num: &BigInt, den: &BigInt, exp: i64) -> Self {
        let (q, r) = num.div_rem(den);
        if r.is_zero() {
            BigFloat { mant: q, exp }
        } else {
            let sticky =
                if q.is_negative() || (q.is_zero() && (num.is_negative() != den.is_negative())) {
                    -1
                } else {
                    1
                };
            BigFloat {
                mant: (q << 1usize) + sticky,
                exp: exp - 1,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 || !x.is_finite() {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        BigFloat {
            mant: BigInt::from(mant) * sign,
            exp,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u64) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let (num, den) = (r.numer(), r.denom());
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let q = if shift >= 0 {
            Self::sticky_quotient(&(num << shift as usize), den, -shift)
        } else {
            Self::sticky_quotient(num, &(den << (-shift) as usize), -shift)
        };
        q.round(prec)
    }

    /// Exact value.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let drop = bits.saturating_sub(64);
        let top = self.mant.magnitude() >> drop;
        let v = top.to_u64().expect("at most 64 bits") as f64;
        let v = if self.mant.sign() == Sign::Minus {
            -v
        } else {
            v
        };
        ldexp(v, self.exp + drop as i64)
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn add(&self, other: &Self, prec: u64) -> Self {
        let (a_top, b_top) = match (self.top(), other.top()) {
            (None, _) => return other.clone().round(prec),
            (_, None) => return self.clone().round(prec),
            (Some(a), Some(b)) => (a, b),
        };
        // The smaller term sits entirely below the rounding position.
        let gap = prec as i64 + 4;
        if a_top - b_top > gap && other.exp < self.exp {
            return self.clone().round(prec);
        }
        if b_top - a_top > gap && self.exp < other.exp {
            return other.clone().round(prec);
        }
        let exp = self.exp.min(other.exp);
        let mant =
            (&self.mant << (self.exp - exp) as usize) + (&other.mant << (other.exp - exp) as usize);
        BigFloat { mant, exp }.round(prec)
    }

    pub fn sub(&self, other: &Self, prec: u64) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Self, prec: u64) -> Self {
        BigFloat {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
        .round(prec)
    }

    pub fn div(&self, other: &Self, prec: u64) -> Self {
        assert!(!other.is_zero(), "BigFloat division by zero");
        if self.is_zero() {
            return Self::zero();
        }
        let shift = prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = shift.max(0);
        Self::sticky_quotient(
            &(&self.mant << shift as usize),
            &other.mant,
            self.exp - other.exp - shift,
        )
        .round(prec)
    }

    pub fn sqrt(&self, prec: u64) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.is_zero() {
            return Self::zero();
        }
        // Make the exponent even and leave about 2*prec bits in the mantissa.
        let mut shift = (2 * prec as i64 + 4 - self.mant.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift as usize;
        let m = scaled.sqrt();
        let exact = &m * &m == scaled;
        let half_exp = (self.exp - shift) / 2;
        let r = if exact {
            BigFloat {
                mant: m,
                exp: half_exp,
            }
        } else {
            BigFloat {
                mant: (m << 1usize) + 1,
                exp: half_exp - 1,
            }
        };
        r.round(prec)
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigFloat {
            mant: self.mant.clone(),
            exp: if self.is_zero() { 0 } else { self.exp + k },
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub(other, u64::MAX / 4);
        d.mant.sign().cmp(&Sign::NoSign)
    }
}

/// Complex number over [`BigFloat`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero() -> Self {
        BigComplex::new(BigFloat::zero(), BigFloat::zero())
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        BigComplex::new(BigFloat::from_f64(re), BigFloat::from_f64(im))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, o: &Self, prec: u64) -> Self {
        BigComplex::new(self.re.add(&o.re, prec), self.im.add(&o.im, prec))
    }

    pub fn sub(&self, o: &Self, prec: u64) -> Self {
        BigComplex::new(self.re.sub(&o.re, prec), self.im.sub(&o.im, prec))
    }

    pub fn mul(&self, o: &Self, prec: u64) -> Self {
        let p = prec + 8;
        let re = self.re.mul(&o.re, p).sub(&self.im.mul(&o.im, p), prec);
        let im = self.re.mul(&o.im, p).add(&self.im.mul(&o.re, p), prec);
        BigComplex::new(re, im)
    }

    pub fn norm_sqr(&self, prec: u64) -> BigFloat {
        let p = prec + 8;
        self.re
            .mul(&self.re, p)
            .add(&self.im.mul(&self.im, p), prec)
    }

    pub fn abs(&self, prec: u64) -> BigFloat {
        self.norm_sqr(prec + 8).sqrt(prec)
    }

    pub fn div(&self, o: &Self, prec: u64) -> Self {
        let p = prec + 16;
        let d = o.norm_sqr(p);
        let num = self.mul(&BigComplex::new(o.re.clone(), o.im.neg()), p);
        BigComplex::new(num.re.div(&d, prec), num.im.div(&d, prec))
    }
}

/// Rounds `x * 10^digits` to an integer, ties to even, and prints it as a
/// fixed-point decimal with exactly `digits` fractional digits.
pub fn format_fixed(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale);
    let n = round_half_even(&scaled);
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let body = if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Plain decimal with `sig` significant digits, ties to even.
pub fn format_significant(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return format_fixed(x, sig.saturating_sub(1));
    }
    // Decimal exponent estimate, corrected below.
    let mag = x.abs();
    let mut e = ((mag.numer().bits() as f64 - mag.denom().bits() as f64)
        * std::f64::consts::LOG10_2)
        .floor() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            ten.pow(k as i32)
        } else {
            BigRational::one() / ten.pow((-k) as i32)
        }
    };
    while mag >= pow10(e + 1) {
        e += 1;
    }
    while mag < pow10(e) {
        e -= 1;
    }
    // rounding up to the next power of ten costs a digit
    let limit = BigInt::from(10).pow(sig as u32);
    if round_half_even(&(&mag / pow10(e + 1 - sig as i64))) >= limit {
        e += 1;
    }
    let frac_digits = sig as i64 - 1 - e;
    if frac_digits >= 0 {
        format_fixed(x, frac_digits as usize)
    } else {
        let unit = pow10(-frac_digits);
        let n = round_half_even(&(x / &unit));
        (BigRational::from_integer(n) * unit)
            .to_integer()
            .to_string()
    }
}

fn round_half_even(x: &BigRational) -> BigInt {
    let fl = x.floor();
    let rem = x - &fl;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let base = fl.to_integer();
    match rem.cmp(&half) {
        Ordering::Less => base,
        Ordering::Greater => base + 1,
        Ordering::Equal => {
            if base.is_even() {
                base
            } else {
                base + 1
            }
        }
    }
}
