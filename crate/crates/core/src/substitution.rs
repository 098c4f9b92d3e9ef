//! Replacing every edge of a graph by a copy of a two-terminal gadget.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::closed_forms::{build_family_graph, FamilyParams};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::RatPoly;
use crate::reliability::{f_vector, reliability, sprel, SplitSpec, DEFAULT_BUDGET};
use crate::stability::CRational;

/// A connected graph `h` with two distinct marked vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub h: Multigraph,
    pub u: usize,
    pub v: usize,
}

impl Gadget {
    pub fn new(h: Multigraph, u: usize, v: usize) -> Result<Self> {
        if h.n() < 2 || u == v || u >= h.n() || v >= h.n() {
            return Err(Error::InvalidArgument(format!(
                "gadget terminals ({u}, {v}) must be distinct vertices of a graph on {} vertices",
                h.n()
            )));
        }
        h.require_connected()?;
        Ok(Gadget { h, u, v })
    }

    /// `k` parallel edges.
    pub fn bundle(k: u64) -> Self {
        Gadget::new(Multigraph::bundle(k), 0, 1).unwrap()
    }

    /// `K_n` minus the edge between its terminals `0` and `1`.
    pub fn complete_minus(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(
                "K_n minus an edge needs n >= 3".into(),
            ));
        }
        Gadget::new(Multigraph::complete_minus_edge(n), 0, 1)
    }

    /// Path with `len` edges between the terminals.
    pub fn series(len: usize) -> Self {
        Gadget::new(Multigraph::path(len + 1), 0, len).unwrap()
    }

    pub fn rel(&self, guard: usize) -> Result<RatPoly> {
        reliability(&self.h, guard, DEFAULT_BUDGET)
    }

    pub fn split_rel(&self, guard: usize) -> Result<RatPoly> {
        sprel(&self.h, &SplitSpec::pair(self.u, self.v)?, guard)
    }
}

/// Substitutes with the smaller endpoint of each edge playing `u`.
pub fn edge_substitute_graph(g: &Multigraph, gadget: &Gadget) -> Result<Multigraph> {
    let flips = vec![false; g.m() as usize];
    edge_substitute_graph_oriented(g, gadget, &flips)
}

/// As [`edge_substitute_graph`], with `flips[e]` swapping the roles of the
/// endpoints for the `e`-th single edge (bundles expanded in edge order).
pub fn edge_substitute_graph_oriented(
    g: &Multigraph,
    gadget: &Gadget,
    flips: &[bool],
) -> Result<Multigraph> {
    g.require_connected()?;
    if flips.len() as u64 != g.m() {
        return Err(Error::InvalidArgument(format!(
            "{} orientation flags for {} edges",
            flips.len(),
            g.m()
        )));
    }
    let nh = gadget.h.n();
    let inner: Vec<usize> = (0..nh)
        .filter(|&x| x != gadget.u && x != gadget.v)
        .collect();
    let mut next = g.n();
    let mut edges = Vec::with_capacity(g.m() as usize * gadget.h.edges().len());
    let mut copy = 0;
    for e in g.edges() {
        for _ in 0..e.mult {
            let (x, y) = if flips[copy] { (e.v, e.u) } else { (e.u, e.v) };
            copy += 1;
            let mut map = vec![0; nh];
            map[gadget.u] = x;
            map[gadget.v] = y;
            for &w in &inner {
                map[w] = next;
                next += 1;
            }
            for he in gadget.h.edges() {
                edges.push((map[he.u], map[he.v], he.mult));
            }
        }
    }
    Multigraph::new(next, edges)
}

/// `sum_i F_i(G) Rel(H)^{m-i} spRel(H)^i`.
pub fn edge_substitute_poly(g: &Multigraph, gadget: &Gadget, guard: usize) -> Result<RatPoly> {
    let f = f_vector(g, guard)?;
    let rel = gadget.rel(guard)?;
    let split = gadget.split_rel(guard)?;
    Ok(compose(&f.values, f.m, &rel, &split))
}

/// `sum_i F_i rel^{m-i} split^i`.
pub fn compose(f: &[num_bigint::BigUint], m: u64, rel: &RatPoly, split: &RatPoly) -> RatPoly {
    let mut acc = RatPoly::zero();
    let mut split_pow = RatPoly::one();
    for (i, fi) in f.iter().enumerate() {
        if i > 0 {
            split_pow = &split_pow * split;
        }
        let c = BigRational::from_integer(fi.clone().into());
        let term = &rel.pow(m - i as u64) * &split_pow;
        acc = &acc + &term.scale(&c);
    }
    acc
}

/// `spRel(H) - r/(1-r) Rel(H)`, whose roots off the roots of `Rel(H)` are
/// reliability roots of `G[H]` whenever `r` is a reliability root of `G`.
pub fn corollary_root_poly(r: &CRational, gadget: &Gadget, guard: usize) -> Result<Vec<CRational>> {
    let one = Complex::new(BigRational::one(), BigRational::zero());
    if *r == one {
        return Err(Error::InvalidArgument("r = 1 is a pole of r/(1-r)".into()));
    }
    let t = r / (&one - r);
    let rel = gadget.rel(guard)?;
    let split = gadget.split_rel(guard)?;
    let d = rel.degree().unwrap_or(0).max(split.degree().unwrap_or(0));
    let out: Vec<CRational> = (0..=d)
        .map(|j| {
            Complex::new(split.coeff(j), BigRational::zero())
                - &t * Complex::new(rel.coeff(j), BigRational::zero())
        })
        .collect();
    let mut out = out;
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// `G_{3,3}^{k,6k}` with every edge replaced by `K_n` minus an edge.
pub fn construct_gkn(k: u64, n: usize) -> Result<Multigraph> {
    if !(3..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "gadget size must be 3..=6, got {n}"
        )));
    }
    if k < 1 {
        return Err(Error::InvalidArgument(
            "bundle size must be at least 1".into(),
        ));
    }
    let base = build_family_graph(&FamilyParams::new(3, 3, k, 6 * k)?)?;
    edge_substitute_graph(&base, &Gadget::complete_minus(n)?)
}

/// Vertex and edge counts of [`construct_gkn`] without building it.
pub fn gkn_size(k: u64, n: usize) -> (u64, u64) {
    let base_edges = 60 * k;
    let n = n as u64;
    (6 + base_edges * (n - 2), base_edges * (n * (n - 1) / 2 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reliability::{rel_bruteforce, DEFAULT_GUARD};

    #[test]
    fn single_edge_gives_the_gadget() {
        let g = Multigraph::path(2);
        let d = Gadget::complete_minus(4).unwrap();
        assert_eq!(
            edge_substitute_poly(&g, &d, DEFAULT_GUARD).unwrap(),
            d.rel(DEFAULT_GUARD).unwrap()
        );
    }

    #[test]
    fn series_into_triangle_is_hexagon() {
        let k3 = Multigraph::complete(3);
        let s = Gadget::series(2);
        let sub = edge_substitute_graph(&k3, &s).unwrap();
        assert_eq!((sub.n(), sub.m()), (6, 6));
        let c6 = rel_bruteforce(&Multigraph::cycle(6), DEFAULT_GUARD).unwrap();
        assert_eq!(rel_bruteforce(&sub, DEFAULT_GUARD).unwrap(), c6);
        assert_eq!(edge_substitute_poly(&k3, &s, DEFAULT_GUARD).unwrap(), c6);
    }

    #[test]
    fn path_gadget_into_double_edge_is_square() {
        let g = Multigraph::bundle(2);
        let h = Gadget::complete_minus(3).unwrap();
        let c4 = rel_bruteforce(&Multigraph::cycle(4), DEFAULT_GUARD).unwrap();
        assert_eq!(edge_substitute_poly(&g, &h, DEFAULT_GUARD).unwrap(), c4);
        let sub = edge_substitute_graph(&g, &h).unwrap();
        assert_eq!(rel_bruteforce(&sub, DEFAULT_GUARD).unwrap(), c4);
    }

    #[test]
    fn diamond_into_path() {
        // two triangles sharing the edge {2, 3}; terminals 0 and 1 are opposite
        let diamond =
            Multigraph::new(4, [(0, 2, 1), (0, 3, 1), (2, 3, 1), (1, 2, 1), (1, 3, 1)]).unwrap();
        let d = Gadget::new(diamond, 0, 1).unwrap();
        let p4 = Multigraph::path(4);
        let sub = edge_substitute_graph(&p4, &d).unwrap();
        assert_eq!((sub.n(), sub.m()), (10, 15));
        assert_eq!(
            edge_substitute_poly(&p4, &d, DEFAULT_GUARD).unwrap(),
            d.rel(DEFAULT_GUARD).unwrap().pow(3)
        );
    }

    #[test]
    fn bundle_substitution_is_power_substitution() {
        let g =
            Multigraph::new(4, [(0, 1, 2), (1, 2, 1), (2, 3, 1), (0, 3, 1), (0, 2, 1)]).unwrap();
        let rel = rel_bruteforce(&g, DEFAULT_GUARD).unwrap();
        for k in 1..=3 {
            assert_eq!(
                edge_substitute_poly(&g, &Gadget::bundle(k), DEFAULT_GUARD).unwrap(),
                rel.substitute_power(k as usize).unwrap()
            );
        }
    }

    #[test]
    fn corollary_polynomials() {
        let zero = Complex::new(BigRational::zero(), BigRational::zero());
        let h = Gadget::complete_minus(4).unwrap();
        let p = corollary_root_poly(&zero, &h, DEFAULT_GUARD).unwrap();
        let split = h.split_rel(DEFAULT_GUARD).unwrap();
        assert!(p
            .iter()
            .enumerate()
            .all(|(j, c)| c.re == split.coeff(j) && c.im.is_zero()));
        let one = Complex::new(BigRational::one(), BigRational::zero());
        assert!(corollary_root_poly(&one, &h, DEFAULT_GUARD).is_err());
    }

    #[test]
    fn table_sizes() {
        assert_eq!(gkn_size(9, 3), (546, 1080));
        assert_eq!(gkn_size(7, 4), (846, 2100));
        assert_eq!(gkn_size(6, 5), (1086, 3240));
        assert_eq!(gkn_size(6, 6), (1446, 5040));
        let g = construct_gkn(1, 3).unwrap();
        assert_eq!((g.n() as u64, g.m()), gkn_size(1, 3));
        assert!(g.is_simple());
        assert_eq!(g.edge_connectivity().unwrap(), 2);
        assert!(construct_gkn(1, 7).is_err());
    }
}
