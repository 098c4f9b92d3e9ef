#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relroots::{Multigraph, RatPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected multigraph on `2..=max_n` vertices with total multiplicity
/// at most `max_m`: a random spanning tree plus random extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, max_n: usize, max_m: u64) -> Multigraph {
    let n = rng.gen_range(2..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent, 1));
    }
    let budget = max_m.saturating_sub(n as u64 - 1);
    let extra = rng.gen_range(0..=budget);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        edges.push((a, b, 1));
    }
    Multigraph::new(n, edges).unwrap()
}

/// 2-connected multigraph: a Hamiltonian cycle in random order plus chords
/// and repeated edges.
pub fn random_biconnected(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
    max_extra: usize,
) -> Multigraph {
    let n = rng.gen_range(min_n..=max_n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize, u64)> =
        (0..n).map(|i| (order[i], order[(i + 1) % n], 1)).collect();
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        edges.push((a, b, 1));
    }
    Multigraph::new(n, edges).unwrap()
}

/// Individual edges, bundles expanded.
pub fn edge_list(g: &Multigraph) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .flat_map(|e| std::iter::repeat_n((e.u, e.v), e.mult as usize))
        .collect()
}

fn spans(n: usize, edges: &[(usize, usize)], alive: u32) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        if alive >> i & 1 == 1 {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// `sum_S [S spans] (1-q)^|S| q^(m-|S|)` over every subset of individual edges.
pub fn oracle_rel(g: &Multigraph) -> RatPoly {
    let edges = edge_list(g);
    let m = edges.len();
    assert!(m <= 20, "oracle limited to 20 edges");
    let mut by_size = vec![0u64; m + 1];
    for alive in 0u32..(1 << m) {
        if spans(g.n(), &edges, alive) {
            by_size[alive.count_ones() as usize] += 1;
        }
    }
    let mut coeffs = vec![BigInt::from(0); m + 1];
    for (s, &count) in by_size.iter().enumerate() {
        if count == 0 {
            continue;
        }
        // (1-q)^s q^(m-s)
        for j in 0..=s {
            let c = binom(s, j) * BigInt::from(count);
            let c = if j % 2 == 1 { -c } else { c };
            coeffs[m - s + j] += c;
        }
    }
    RatPoly::new(coeffs.into_iter().map(BigRational::from_integer).collect())
}

pub fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Integer polynomial of degree `1..=max_degree`, coefficients in `-bound..=bound`.
pub fn random_int_poly(rng: &mut ChaCha8Rng, max_degree: usize, bound: i64) -> RatPoly {
    loop {
        let d = rng.gen_range(1..=max_degree);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c[d] == 0 {
            c[d] = 1;
        }
        let p = RatPoly::from_integers(c);
        if p.degree().unwrap_or(0) >= 1 {
            return p;
        }
    }
}
