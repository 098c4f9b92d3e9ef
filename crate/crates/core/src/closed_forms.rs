//! Component-counting recursions for complete graphs, complete graphs minus
//! an edge, and the two-clique family `G_{m,n}^{a,b}`.
//!
//! Every recursion here conditions on the surviving component of a fixed
//! vertex, so each step is an integer scale-and-shift of a smaller answer.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::binomial::Binomials;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::RatPoly;

/// Integer coefficients, ascending.
type IntPoly = Vec<BigInt>;

fn one() -> IntPoly {
    vec![BigInt::one()]
}

/// `acc -= c * q^shift * p`
fn sub_scaled_shifted(acc: &mut IntPoly, c: &BigInt, shift: usize, p: &IntPoly) {
    if acc.len() < shift + p.len() {
        acc.resize(shift + p.len(), BigInt::zero());
    }
    for (i, x) in p.iter().enumerate() {
        acc[shift + i] -= c * x;
    }
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_rat(p: IntPoly) -> RatPoly {
    RatPoly::new(p.into_iter().map(BigRational::from_integer).collect())
}

fn complete_table(n: usize, binom: &mut Binomials) -> Vec<IntPoly> {
    // rel[i] = Rel(K_i), index 0 unused
    let mut rel: Vec<IntPoly> = vec![Vec::new(), one()];
    for k in 2..=n {
        let mut acc = one();
        for i in 1..k {
            let c = binom.get(k as u64 - 1, i as u64 - 1);
            sub_scaled_shifted(&mut acc, &c, i * (k - i), &rel[i]);
        }
        rel.push(acc);
    }
    rel
}

/// `Rel(K_n; q)`.
pub fn rel_complete(n: usize) -> Result<RatPoly> {
    if n < 1 {
        return Err(Error::InvalidArgument("K_n needs n >= 1".into()));
    }
    let mut binom = Binomials::new();
    Ok(to_rat(complete_table(n, &mut binom).swap_remove(n)))
}

/// `Rel(K_n^-; q)`, the complete graph with the edge `{0, 1}` removed.
pub fn rel_complete_minus(n: usize) -> Result<RatPoly> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "K_n minus an edge is disconnected for n < 3".into(),
        ));
    }
    let mut binom = Binomials::new();
    let rel = complete_table(n, &mut binom);
    Ok(to_rat(minus_table(n, &rel, &mut binom).swap_remove(n)))
}

fn minus_table(n: usize, rel: &[IntPoly], binom: &mut Binomials) -> Vec<IntPoly> {
    // minus[i] = Rel(K_i^-), defined for i >= 3
    let mut minus: Vec<IntPoly> = vec![Vec::new(); 3];
    for k in 3..=n {
        let mut acc = one();
        // u's component avoids v: i vertices including u, none of them v
        for i in 1..k {
            let c = binom.get(k as u64 - 2, i as u64 - 1);
            sub_scaled_shifted(&mut acc, &c, i * (k - i) - 1, &rel[i]);
        }
        // u's component holds v but not everything
        for i in 3..k {
            let c = binom.get(k as u64 - 2, i as u64 - 2);
            sub_scaled_shifted(&mut acc, &c, i * (k - i), &minus[i]);
        }
        minus.push(acc);
    }
    minus
}

/// `spRel_{u,v}(K_n^-; q)` for the two non-adjacent vertices.
pub fn split_rel_complete_minus(n: usize) -> Result<RatPoly> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "split reliability of K_n minus an edge needs n >= 3".into(),
        ));
    }
    let mut binom = Binomials::new();
    let rel = complete_table(n, &mut binom);
    let mut acc: IntPoly = vec![BigInt::zero()];
    for i in 1..n {
        let c = binom.get(n as u64 - 2, i as u64 - 1);
        let prod = mul(&rel[i], &rel[n - i]);
        let neg = -c;
        sub_scaled_shifted(&mut acc, &neg, i * (n - i) - 1, &prod);
    }
    Ok(to_rat(acc))
}

/// Parameters of `G_{m,n}^{a,b}`: cliques on `m` and `n` vertices with
/// internal multiplicity `a` and cross multiplicity `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub m: usize,
    pub n: usize,
    pub a: u64,
    pub b: u64,
}

impl FamilyParams {
    pub fn new(m: usize, n: usize, a: u64, b: u64) -> Result<Self> {
        if m < 1 || n < 1 || a < 1 || b < 1 {
            return Err(Error::InvalidArgument(format!(
                "family parameters must be positive, got m={m} n={n} a={a} b={b}"
            )));
        }
        Ok(FamilyParams { m, n, a, b })
    }

    /// Edge count `a(C(m,2) + C(n,2)) + b*m*n`.
    pub fn edge_count(&self) -> u64 {
        let (m, n) = (self.m as u64, self.n as u64);
        self.a * (m * (m - 1) / 2 + n * (n - 1) / 2) + self.b * m * n
    }
}

/// `Rel(G_{m,n}^{a,b}; q)`, solving for the top term of the component
/// expansion around a fixed vertex of the first clique.
pub fn rel_family(p: &FamilyParams) -> Result<RatPoly> {
    let mut binom = Binomials::new();
    let mut memo: HashMap<(usize, usize), IntPoly> = HashMap::new();
    for i in 1..=p.m {
        for j in 0..=p.n {
            let mut acc = one();
            for ii in 1..=i {
                for jj in 0..=j {
                    if (ii, jj) == (i, j) {
                        continue;
                    }
                    let e = p.a as usize * (ii * (i - ii) + jj * (j - jj))
                        + p.b as usize * (ii * (j - jj) + jj * (i - ii));
                    let c = binom.get(i as u64 - 1, ii as u64 - 1) * binom.get(j as u64, jj as u64);
                    sub_scaled_shifted(&mut acc, &c, e, &memo[&(ii, jj)]);
                }
            }
            while acc.len() > 1 && acc.last().is_some_and(|c| c.is_zero()) {
                acc.pop();
            }
            memo.insert((i, j), acc);
        }
    }
    Ok(to_rat(memo.remove(&(p.m, p.n)).unwrap()))
}

/// The explicit multigraph: vertices `0..m` form the first clique.
pub fn build_family_graph(p: &FamilyParams) -> Result<Multigraph> {
    let total = p.m + p.n;
    let mut edges = Vec::new();
    for x in 0..total {
        for y in x + 1..total {
            let same = (x < p.m) == (y < p.m);
            edges.push((x, y, if same { p.a } else { p.b }));
        }
    }
    Multigraph::new(total, edges)
}
