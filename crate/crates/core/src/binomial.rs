//! Exact binomial coefficients from cached Pascal rows.

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Default, Clone)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn new() -> Self {
        Binomials {
            rows: vec![vec![BigInt::one()]],
        }
    }

    /// `C(n, k)`, zero when `k > n`.
    pub fn get(&mut self, n: u64, k: u64) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let n = n as usize;
        while self.rows.len() <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::one());
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::one());
            self.rows.push(row);
        }
        self.rows[n][k as usize].clone()
    }
}
