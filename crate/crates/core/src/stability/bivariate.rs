//! Polynomials in two real parameters with rational coefficients.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Sign;

/// `sum c[i][j] a^i b^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    pub coeffs: Vec<Vec<BigRational>>,
}

/// Monomial coefficients of the polynomial of degree `< values.len()`
/// taking `values[s]` at `x = s`.
pub fn interpolate_integer_nodes(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    // Newton divided differences at nodes 0, 1, ..., n-1
    let mut dd = values.to_vec();
    for level in 1..n {
        let denom = BigRational::from_integer(level.into());
        for s in (level..n).rev() {
            dd[s] = (&dd[s] - &dd[s - 1]) / &denom;
        }
    }
    // Expand dd[0] + dd[1] x + dd[2] x (x-1) + ... by Horner from the top.
    let mut out = vec![BigRational::zero(); n];
    for s in (0..n).rev() {
        // out = out * (x - s) + dd[s]
        let node = BigRational::from_integer(s.into());
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if out[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &out[i];
            }
            next[i] -= &out[i] * &node;
        }
        next[0] += &dd[s];
        out = next;
    }
    out
}

/// `p(x + c)` for ascending coefficients.
fn taylor_shift(p: &[BigRational], c: &BigRational) -> Vec<BigRational> {
    let mut out = p.to_vec();
    let n = out.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &out[j + 1] * c;
            out[j] += t;
        }
    }
    out
}

impl BiPoly {
    /// Interpolates from `values[s][t] = p(s, t)` on the grid `0..=d` squared,
    /// assuming degree at most `d` in each variable.
    pub fn from_grid(values: &[Vec<BigRational>]) -> Self {
        let d1 = values.len();
        // per b-node, coefficients in a
        let rows: Vec<Vec<BigRational>> = (0..values[0].len())
            .map(|t| {
                let column: Vec<BigRational> = (0..d1).map(|s| values[s][t].clone()).collect();
                interpolate_integer_nodes(&column)
            })
            .collect();
        let coeffs = (0..d1)
            .map(|i| {
                let across: Vec<BigRational> = rows.iter().map(|r| r[i].clone()).collect();
                interpolate_integer_nodes(&across)
            })
            .collect();
        BiPoly { coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        for row in self.coeffs.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(j, _)| i + j)
            })
            .max()
    }

    pub fn eval(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for row in self.coeffs.iter().rev() {
            let inner = row.iter().rev().fold(BigRational::zero(), |s, c| s * b + c);
            acc = acc * a + inner;
        }
        acc
    }

    /// `p(a + ca, b + cb)`.
    pub fn shifted(&self, ca: &BigRational, cb: &BigRational) -> BiPoly {
        let width = self.coeffs.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut grid: Vec<Vec<BigRational>> = self
            .coeffs
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(width, BigRational::zero());
                taylor_shift(&r, cb)
            })
            .collect();
        for j in 0..width {
            let column: Vec<BigRational> = grid.iter().map(|r| r[j].clone()).collect();
            for (i, c) in taylor_shift(&column, ca).into_iter().enumerate() {
                grid[i][j] = c;
            }
        }
        BiPoly { coeffs: grid }.trimmed()
    }

    /// Sign of `p` on `|a - ca| <= ha, |b - cb| <= hb`, if the crude range
    /// `p(ca, cb) +- sum |d_ij| ha^i hb^j` excludes zero.
    pub fn sign_on_box(
        &self,
        ca: &BigRational,
        cb: &BigRational,
        ha: &BigRational,
        hb: &BigRational,
    ) -> Option<Sign> {
        let local = self.shifted(ca, cb);
        let centre = local.coeff(0, 0);
        let mut spread = BigRational::zero();
        let mut ha_pow = BigRational::one();
        for row in &local.coeffs {
            let mut hb_pow = ha_pow.clone();
            for c in row {
                spread += c.abs() * &hb_pow;
                hb_pow *= hb;
            }
            ha_pow *= ha;
        }
        spread -= centre.abs();
        if centre > spread {
            Some(Sign::Positive)
        } else if -&centre > spread {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sample() -> BiPoly {
        // 3 - 2a + a^2 b - 5 b^2 / 7
        BiPoly {
            coeffs: vec![
                vec![r(3, 1), r(0, 1), r(-5, 7)],
                vec![r(-2, 1)],
                vec![r(0, 1), r(1, 1)],
            ],
        }
    }

    #[test]
    fn one_dimensional_interpolation() {
        // x^3 - 2x + 1/2
        let f = |x: i64| r(2 * x * x * x - 4 * x + 1, 2);
        let vals: Vec<BigRational> = (0..5).map(f).collect();
        assert_eq!(
            interpolate_integer_nodes(&vals),
            vec![r(1, 2), r(-2, 1), r(0, 1), r(1, 1), r(0, 1)]
        );
    }

    #[test]
    fn grid_interpolation_recovers_polynomial() {
        let p = sample();
        let grid: Vec<Vec<BigRational>> = (0..4)
            .map(|s| (0..4).map(|t| p.eval(&r(s, 1), &r(t, 1))).collect())
            .collect();
        let q = BiPoly::from_grid(&grid);
        for (a, b) in [(r(1, 3), r(-2, 5)), (r(7, 1), r(11, 2))] {
            assert_eq!(q.eval(&a, &b), p.eval(&a, &b));
        }
        assert_eq!(q.total_degree(), Some(3));
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = sample();
        let (ca, cb) = (r(-3, 2), r(5, 4));
        let s = p.shifted(&ca, &cb);
        for (x, y) in [(r(0, 1), r(0, 1)), (r(1, 7), r(-2, 3))] {
            assert_eq!(s.eval(&x, &y), p.eval(&(&x + &ca), &(&y + &cb)));
        }
    }

    #[test]
    fn box_signs() {
        // 4a + 4
        let p = BiPoly {
            coeffs: vec![vec![r(4, 1)], vec![r(4, 1)]],
        };
        let h = r(1, 10000);
        assert_eq!(
            p.sign_on_box(&r(-10174, 10000), &r(10, 1), &h, &h),
            Some(Sign::Negative)
        );
        assert_eq!(p.sign_on_box(&r(0, 1), &r(0, 1), &r(2, 1), &h), None);
        assert_eq!(
            p.sign_on_box(&r(3, 1), &r(0, 1), &r(1, 1), &h),
            Some(Sign::Positive)
        );
    }
}
