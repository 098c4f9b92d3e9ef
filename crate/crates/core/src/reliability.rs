//! Reliability polynomials from first principles: subset enumeration,
//! deletion-contraction, split reliability and block products.
//!
//! Enumeration runs over the distinct vertex pairs of the multigraph. A bundle
//! of `k` parallel edges is "alive" when at least one of its edges survives;
//! the `2^k` edge states of a bundle collapse to two classes whose weights are
//! `1 - q^k` and `q^k`, so the guard bounds the number of distinct pairs.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binomial::Binomials;
use crate::error::{Error, Result};
use crate::graph::{Edge, Multigraph};
use crate::poly::{FVector, RatPoly};

/// Default bound on the number of distinct vertex pairs enumerated.
pub const DEFAULT_GUARD: usize = 24;

/// Default node budget for deletion-contraction.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// The terminal set `K` of a split-reliability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    terminals: Vec<usize>,
}

impl SplitSpec {
    pub fn new(terminals: Vec<usize>) -> Result<Self> {
        if terminals.is_empty() {
            return Err(Error::InvalidArgument("terminal set is empty".into()));
        }
        let mut sorted = terminals.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "terminal set {terminals:?} has duplicates"
            )));
        }
        Ok(SplitSpec { terminals })
    }

    /// The `{u, v}` case.
    pub fn pair(u: usize, v: usize) -> Result<Self> {
        Self::new(vec![u, v])
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }
}

/// Counts alive-pair subsets accepted by a predicate, grouped by how many
/// pairs of each multiplicity class are alive.
struct PairEnumeration<'a> {
    g: &'a Multigraph,
    /// distinct multiplicities present
    classes: Vec<u64>,
    /// class index of each pair
    class_of: Vec<usize>,
    /// number of pairs in each class
    class_size: Vec<usize>,
}

impl<'a> PairEnumeration<'a> {
    fn new(g: &'a Multigraph, guard: usize) -> Result<Self> {
        let pairs = g.pair_count();
        if pairs > guard || pairs >= 63 {
            return Err(Error::GuardExceeded { pairs, guard });
        }
        let mut classes: Vec<u64> = g.edges().iter().map(|e| e.mult).collect();
        classes.sort_unstable();
        classes.dedup();
        let class_of: Vec<usize> = g
            .edges()
            .iter()
            .map(|e| classes.binary_search(&e.mult).unwrap())
            .collect();
        let mut class_size = vec![0; classes.len()];
        for &c in &class_of {
            class_size[c] += 1;
        }
        Ok(PairEnumeration {
            g,
            classes,
            class_of,
            class_size,
        })
    }

    /// Runs `accept(component_labels)` for every alive subset and tallies the
    /// accepted ones by alive count per class.
    fn count<F>(&self, mut accept: F) -> HashMap<Vec<usize>, u64>
    where
        F: FnMut(&[usize]) -> bool,
    {
        let n = self.g.n();
        let edges: &[Edge] = self.g.edges();
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        let mut parent = vec![0usize; n];
        let mut labels = vec![0usize; n];
        let mut signature = vec![0usize; self.classes.len()];
        for mask in 0u64..(1u64 << edges.len()) {
            parent.iter_mut().enumerate().for_each(|(i, p)| *p = i);
            signature.iter_mut().for_each(|s| *s = 0);
            for (i, e) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    signature[self.class_of[i]] += 1;
                    let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            for v in 0..n {
                labels[v] = find(&mut parent, v);
            }
            if accept(&labels) {
                *counts.entry(signature.clone()).or_insert(0) += 1;
            }
        }
        counts
    }

    /// `sum count * prod_c (1 - q^k_c)^{alive_c} (q^k_c)^{dead_c}`
    fn reliability_form(&self, counts: &HashMap<Vec<usize>, u64>) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (sig, &count) in counts {
            let mut term = RatPoly::constant(BigRational::from_integer(BigInt::from(count)));
            for (c, &alive) in sig.iter().enumerate() {
                let k = self.classes[c] as usize;
                let dead = self.class_size[c] - alive;
                let survive = &RatPoly::one() - &RatPoly::monomial(BigRational::one(), k);
                term = &term * &survive.pow(alive as u64);
                term = term.shift(k * dead);
            }
            acc = &acc + &term;
        }
        acc
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// F-vector by enumeration over alive/dead bundle states.
pub fn f_vector(g: &Multigraph, guard: usize) -> Result<FVector> {
    g.require_connected()?;
    let n = g.n();
    let m = g.m();
    let en = PairEnumeration::new(g, guard)?;
    let counts = en.count(|labels| labels.iter().all(|&l| l == 0));

    // Removing j of the k edges in an alive bundle: C(k, j) ways for j < k.
    // A dead bundle removes all k edges in one way.
    let mut binom = Binomials::new();
    let alive_gen: Vec<Vec<BigUint>> = en
        .classes
        .iter()
        .map(|&k| {
            (0..k)
                .map(|j| binom.get(k, j).to_biguint().unwrap())
                .collect()
        })
        .collect();

    let len = (m + 2 - n as u64) as usize;
    let mut f = vec![BigUint::zero(); len];
    for (sig, &count) in &counts {
        let mut poly = vec![BigUint::from(count)];
        for (c, &alive) in sig.iter().enumerate() {
            for _ in 0..alive {
                poly = mul_naturals(&poly, &alive_gen[c]);
            }
            let dead_edges = (en.class_size[c] - alive) * en.classes[c] as usize;
            let mut shifted = vec![BigUint::zero(); dead_edges];
            shifted.extend(poly);
            poly = shifted;
        }
        for (i, c) in poly.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i >= len {
                return Err(Error::InexactDivision(format!(
                    "removing {i} edges left the graph connected, but m - n + 1 = {}",
                    len - 1
                )));
            }
            f[i] += c;
        }
    }
    Ok(FVector { values: f, n, m })
}

fn mul_naturals(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Rel(G;q) = sum F_i q^i (1-q)^{m-i}` from the enumerated F-vector.
pub fn rel_bruteforce(g: &Multigraph, guard: usize) -> Result<RatPoly> {
    Ok(f_vector(g, guard)?.reliability())
}

/// K-split reliability: every surviving component holds exactly one terminal.
pub fn sprel(g: &Multigraph, spec: &SplitSpec, guard: usize) -> Result<RatPoly> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if let Some(&t) = spec.terminals().iter().find(|&&t| t >= n) {
        return Err(Error::InvalidArgument(format!(
            "terminal {t} is not a vertex of a graph on {n} vertices"
        )));
    }
    let en = PairEnumeration::new(g, guard)?;
    let mut hits = vec![0u32; n];
    let counts = en.count(|labels| {
        hits.iter_mut().for_each(|h| *h = 0);
        for &t in spec.terminals() {
            hits[labels[t]] += 1;
        }
        labels.iter().all(|&l| hits[l] == 1)
    });
    Ok(en.reliability_form(&counts))
}

/// Deletion-contraction with memoization on a canonical edge list.
pub fn rel_deletion_contraction(g: &Multigraph, budget: u64) -> Result<RatPoly> {
    g.require_connected()?;
    let mut dc = DeletionContraction {
        memo: HashMap::new(),
        expansions: 0,
        budget,
    };
    let edges: Vec<(usize, usize, u64)> = g.edges().iter().map(|e| (e.u, e.v, e.mult)).collect();
    dc.rel(g.n(), edges)
}

type Key = (usize, Vec<(usize, usize, u64)>);

struct DeletionContraction {
    memo: HashMap<Key, RatPoly>,
    expansions: u64,
    budget: u64,
}

impl DeletionContraction {
    fn rel(&mut self, n: usize, edges: Vec<(usize, usize, u64)>) -> Result<RatPoly> {
        if n == 1 {
            return Ok(RatPoly::one());
        }
        let key = canonical(n, edges);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let (n, edges) = (key.0, key.1.clone());
        if !connected(n, &edges) {
            return Ok(RatPoly::zero());
        }
        self.expansions += 1;
        if self.expansions > self.budget {
            return Err(Error::BudgetExhausted(self.budget));
        }

        let mut degree = vec![0usize; n];
        for &(u, v, _) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        // Prefer a pendant bundle: it is a bridge and only contraction survives.
        let pick = edges
            .iter()
            .position(|&(u, v, _)| degree[u] == 1 || degree[v] == 1)
            .unwrap_or(0);
        let (u, v, k) = edges[pick];
        let survive = &RatPoly::one() - &RatPoly::monomial(BigRational::one(), k as usize);

        let contracted = self.rel(n - 1, contract(&edges, u, v))?;
        let mut out = &survive * &contracted;
        if degree[u] > 1 && degree[v] > 1 {
            let mut deleted = edges.clone();
            deleted.remove(pick);
            let rest = self.rel(n, deleted)?;
            out = &out + &rest.shift(k as usize);
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }
}

/// Merges `v` into `u` and relabels so vertices stay `0..n-1`.
fn contract(edges: &[(usize, usize, u64)], u: usize, v: usize) -> Vec<(usize, usize, u64)> {
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    edges
        .iter()
        .filter(|&&(a, b, _)| !((a == u && b == v) || (a == v && b == u)))
        .map(|&(a, b, k)| (relabel(a), relabel(b), k))
        .collect()
}

/// Relabels vertices by first appearance in the sorted edge list, merges
/// parallel pairs and sorts again.
fn canonical(n: usize, mut edges: Vec<(usize, usize, u64)>) -> Key {
    for e in edges.iter_mut() {
        if e.0 > e.1 {
            std::mem::swap(&mut e.0, &mut e.1);
        }
    }
    edges.sort_unstable();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for &(a, b, _) in &edges {
        for x in [a, b] {
            if label[x] == usize::MAX {
                label[x] = next;
                next += 1;
            }
        }
    }
    for l in label.iter_mut().filter(|l| **l == usize::MAX) {
        *l = next;
        next += 1;
    }
    let mut merged: Vec<(usize, usize, u64)> = Vec::with_capacity(edges.len());
    let mut relabelled: Vec<(usize, usize, u64)> = edges
        .into_iter()
        .map(|(a, b, k)| {
            let (x, y) = (label[a], label[b]);
            (x.min(y), x.max(y), k)
        })
        .collect();
    relabelled.sort_unstable();
    for (a, b, k) in relabelled {
        match merged.last_mut() {
            Some(last) if last.0 == a && last.1 == b => last.2 += k,
            _ => merged.push((a, b, k)),
        }
    }
    (n, merged)
}

fn connected(n: usize, edges: &[(usize, usize, u64)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut parts = n;
    for &(a, b, _) in edges {
        let (x, y) = (find(&mut parent, a), find(&mut parent, b));
        if x != y {
            parent[x.max(y)] = x.min(y);
            parts -= 1;
        }
    }
    parts == 1
}

/// Product of the reliabilities of the blocks, each by enumeration.
pub fn rel_via_blocks(g: &Multigraph, guard: usize) -> Result<RatPoly> {
    let blocks = g.blocks()?;
    let mut acc = RatPoly::one();
    for b in &blocks {
        acc = &acc * &rel_bruteforce(&b.graph, guard)?;
    }
    Ok(acc)
}

/// Picks enumeration when the pair count fits the guard, else deletion-contraction.
pub fn reliability(g: &Multigraph, guard: usize, budget: u64) -> Result<RatPoly> {
    if g.pair_count() <= guard {
        rel_bruteforce(g, guard)
    } else {
        rel_deletion_contraction(g, budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_integers(c.iter().copied())
    }

    fn uv(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn k3() -> Multigraph {
        Multigraph::complete(3)
    }

    #[test]
    fn f_vectors() {
        assert_eq!(f_vector(&k3(), DEFAULT_GUARD).unwrap().values, uv(&[1, 3]));
        assert_eq!(
            f_vector(&Multigraph::complete(4), DEFAULT_GUARD)
                .unwrap()
                .values,
            uv(&[1, 6, 15, 16])
        );
        assert_eq!(
            f_vector(&Multigraph::bundle(6), DEFAULT_GUARD)
                .unwrap()
                .values,
            uv(&[1, 6, 15, 20, 15, 6])
        );
    }

    #[test]
    fn guard_and_connectivity_errors() {
        assert!(matches!(
            f_vector(&Multigraph::complete(8), DEFAULT_GUARD),
            Err(Error::GuardExceeded {
                pairs: 28,
                guard: 24
            })
        ));
        assert!(matches!(
            rel_bruteforce(&Multigraph::empty(2), DEFAULT_GUARD),
            Err(Error::Disconnected)
        ));
        assert!(rel_deletion_contraction(&Multigraph::empty(3), DEFAULT_BUDGET).is_err());
        assert!(matches!(
            rel_deletion_contraction(&Multigraph::complete(7), 10),
            Err(Error::BudgetExhausted(10))
        ));
    }

    #[test]
    fn small_reliabilities() {
        assert_eq!(
            rel_bruteforce(&Multigraph::path(2), DEFAULT_GUARD).unwrap(),
            p(&[1, -1])
        );
        assert_eq!(
            rel_bruteforce(&k3(), DEFAULT_GUARD).unwrap(),
            p(&[1, 0, -3, 2])
        );
        let tree = Multigraph::new(5, [(0, 1, 1), (1, 2, 1), (1, 3, 1), (3, 4, 1)]).unwrap();
        assert_eq!(
            rel_bruteforce(&tree, DEFAULT_GUARD).unwrap(),
            RatPoly::one_minus_q().pow(4)
        );
    }

    #[test]
    fn deletion_contraction_matches_enumeration() {
        assert_eq!(
            rel_deletion_contraction(&k3(), DEFAULT_BUDGET).unwrap(),
            p(&[1, 0, -3, 2])
        );
        let k4 = Multigraph::complete(4);
        assert_eq!(
            rel_deletion_contraction(&k4, DEFAULT_BUDGET).unwrap(),
            rel_bruteforce(&k4, DEFAULT_GUARD).unwrap()
        );
        assert_eq!(
            rel_deletion_contraction(&Multigraph::path(3), DEFAULT_BUDGET).unwrap(),
            RatPoly::one_minus_q().pow(2)
        );
        let multi =
            Multigraph::new(4, [(0, 1, 3), (1, 2, 2), (2, 3, 1), (0, 3, 2), (0, 2, 1)]).unwrap();
        assert_eq!(
            rel_deletion_contraction(&multi, DEFAULT_BUDGET).unwrap(),
            rel_bruteforce(&multi, DEFAULT_GUARD).unwrap()
        );
    }

    #[test]
    fn split_reliability_of_k4() {
        let got = sprel(
            &Multigraph::complete(4),
            &SplitSpec::pair(0, 1).unwrap(),
            DEFAULT_GUARD,
        )
        .unwrap();
        let omq = RatPoly::one_minus_q();
        let want = &omq
            .pow(2)
            .shift(4)
            .scale(&BigRational::from_integer(8.into()))
            + &omq
                .pow(3)
                .shift(3)
                .scale(&BigRational::from_integer(2.into()));
        assert_eq!(got, want);
    }

    #[test]
    fn split_reliability_of_bundle_and_disjoint_union() {
        let both = SplitSpec::pair(0, 1).unwrap();
        assert_eq!(
            sprel(&Multigraph::bundle(5), &both, DEFAULT_GUARD).unwrap(),
            RatPoly::monomial(BigRational::one(), 5)
        );
        let two = k3().disjoint_union(&k3());
        let spec = SplitSpec::new(vec![0, 4]).unwrap();
        let rel = rel_bruteforce(&k3(), DEFAULT_GUARD).unwrap();
        assert_eq!(sprel(&two, &spec, DEFAULT_GUARD).unwrap(), &rel * &rel);
    }

    #[test]
    fn split_reliability_with_one_terminal_is_reliability() {
        let g =
            Multigraph::new(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (0, 3, 1), (1, 3, 1)]).unwrap();
        for t in 0..4 {
            assert_eq!(
                sprel(&g, &SplitSpec::new(vec![t]).unwrap(), DEFAULT_GUARD).unwrap(),
                rel_bruteforce(&g, DEFAULT_GUARD).unwrap()
            );
        }
    }

    #[test]
    fn split_spec_validation() {
        assert!(SplitSpec::new(vec![]).is_err());
        assert!(SplitSpec::new(vec![1, 1]).is_err());
        assert!(sprel(&k3(), &SplitSpec::pair(0, 7).unwrap(), DEFAULT_GUARD).is_err());
    }

    #[test]
    fn blocks_multiply() {
        let bowtie = Multigraph::new(
            5,
            [
                (0, 1, 1),
                (1, 2, 1),
                (0, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 4, 1),
            ],
        )
        .unwrap();
        let tri = p(&[1, 0, -3, 2]);
        assert_eq!(rel_via_blocks(&bowtie, DEFAULT_GUARD).unwrap(), &tri * &tri);
        assert_eq!(rel_bruteforce(&bowtie, DEFAULT_GUARD).unwrap(), &tri * &tri);
        assert_eq!(
            rel_via_blocks(&Multigraph::path(3), DEFAULT_GUARD).unwrap(),
            RatPoly::one_minus_q().pow(2)
        );
    }

    #[test]
    fn bundle_gadget_identity() {
        let both = SplitSpec::pair(0, 1).unwrap();
        for k in 1..6 {
            let b = Multigraph::bundle(k);
            let sum = &rel_bruteforce(&b, DEFAULT_GUARD).unwrap()
                + &sprel(&b, &both, DEFAULT_GUARD).unwrap();
            assert_eq!(sum, RatPoly::one());
        }
    }
}
