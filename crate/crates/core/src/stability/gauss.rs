//! Gaussian integers and fraction-free determinants over them.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    pub fn zero() -> Self {
        GaussInt::new(BigInt::zero(), BigInt::zero())
    }

    pub fn one() -> Self {
        GaussInt::new(BigInt::one(), BigInt::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussInt::new(self.re.clone(), -&self.im)
    }

    /// Division known to be exact.
    pub fn div_exact(&self, d: &GaussInt) -> GaussInt {
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self * &d.conj();
        let (re, r1) = num.re.div_rem(&norm);
        let (im, r2) = num.im.div_rem(&norm);
        debug_assert!(r1.is_zero() && r2.is_zero(), "inexact Gaussian division");
        GaussInt::new(re, im)
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, o: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

/// Bareiss elimination with row pivoting.
pub fn determinant(mut m: Vec<Vec<GaussInt>>) -> GaussInt {
    let n = m.len();
    if n == 0 {
        return GaussInt::one();
    }
    let mut negate = false;
    let mut prev = GaussInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return GaussInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The `2k x 2k` matrix `[[B_k^*, A_k], [A_k^*, B_k]]` for coefficients
/// `a_0..a_n` (ascending).
pub fn schur_cohn_matrix(a: &[GaussInt], k: usize) -> Vec<Vec<GaussInt>> {
    let n = a.len() - 1;
    let mut m = vec![vec![GaussInt::zero(); 2 * k]; 2 * k];
    for i in 0..k {
        for j in 0..k {
            if i >= j {
                // B_k^*: lower triangular, a_{n-(i-j)}
                m[i][j] = a[n - (i - j)].clone();
                // A_k^*: lower triangular, conj(a_{i-j})
                m[k + i][j] = a[i - j].conj();
            }
            if j >= i {
                // A_k: upper triangular, a_{j-i}
                m[i][k + j] = a[j - i].clone();
                // B_k: upper triangular, conj(a_{n-(j-i)})
                m[k + i][k + j] = a[n - (j - i)].conj();
            }
        }
    }
    m
}
