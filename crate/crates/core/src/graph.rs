//! Loopless undirected multigraphs with edge multiplicities.
//!
//! Parallel edges are stored as a multiplicity on a single vertex pair, so a
//! bundle of `k` edges between `u` and `v` is one [`Edge`] with `mult == k`.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bundle of `mult` parallel edges between `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[u64; 3]>,
}

impl Multigraph {
    /// Builds a graph on vertices `0..n`, merging repeated pairs.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut merged: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (a, b, mult) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) references a vertex outside 0..{n}"
                )));
            }
            if mult < 1 {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) has multiplicity {mult}"
                )));
            }
            *merged.entry((a.min(b), a.max(b))).or_insert(0) += mult;
        }
        let edges = merged
            .into_iter()
            .map(|((u, v), mult)| Edge { u, v, mult })
            .collect();
        Ok(Multigraph { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        Multigraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(Edge { u, v, mult: 1 });
            }
        }
        Multigraph { n, edges }
    }

    /// `K_n` minus the edge `{0, 1}`.
    pub fn complete_minus_edge(n: usize) -> Self {
        let mut g = Self::complete(n);
        g.edges.retain(|e| !(e.u == 0 && e.v == 1));
        g
    }

    /// Path on `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n)
            .map(|v| Edge {
                u: v - 1,
                v,
                mult: 1,
            })
            .collect();
        Multigraph { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least three vertices");
        let mut g = Self::path(n);
        g.edges.push(Edge {
            u: 0,
            v: n - 1,
            mult: 1,
        });
        g.edges.sort();
        g
    }

    /// Two vertices joined by `k` parallel edges.
    pub fn bundle(k: u64) -> Self {
        assert!(k >= 1);
        Multigraph {
            n: 2,
            edges: vec![Edge {
                u: 0,
                v: 1,
                mult: k,
            }],
        }
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + shift,
            v: e.v + shift,
            mult: e.mult,
        }));
        Multigraph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of edges, counting multiplicity.
    pub fn m(&self) -> u64 {
        self.edges.iter().map(|e| e.mult).sum()
    }

    /// Distinct vertex pairs, sorted by `(u, v)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn pair_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u64 {
        let key = (a.min(b), a.max(b));
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&key))
            .map(|i| self.edges[i].mult)
            .unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += e.mult;
            deg[e.v] += e.mult;
        }
        deg
    }

    /// Adjacency lists of `(neighbour, multiplicity)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, u64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.mult));
            adj[e.v].push((e.u, e.mult));
        }
        adj
    }

    /// True when every pair has multiplicity one.
    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == 1)
    }

    /// True when no edge incident to `w` is part of a bundle of size > 1.
    pub fn has_no_multiple_edges_at(&self, w: usize) -> bool {
        self.edges
            .iter()
            .filter(|e| e.u == w || e.v == w)
            .all(|e| e.mult == 1)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        let mut edges = Vec::with_capacity(doc.edges.len());
        for [u, v, mult] in doc.edges {
            edges.push((to_index(u)?, to_index(v)?, mult));
        }
        Multigraph::new(doc.n, edges)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| [e.u as u64, e.v as u64, e.mult])
                .collect(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    pub fn is_connected(&self) -> Result<bool> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(self.component_labels().1 == 1)
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected()? {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Component label per vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Every edge multiplicity multiplied by `k`.
    pub fn bundle_replace(&self, k: u64) -> Result<Multigraph> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "bundle size must be at least 1, got {k}"
            )));
        }
        Ok(Multigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    mult: e.mult * k,
                    ..*e
                })
                .collect(),
        })
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| local[e.u] != usize::MAX && local[e.v] != usize::MAX)
            .map(|e| (local[e.u], local[e.v], e.mult));
        Multigraph::new(vertices.len(), edges).expect("induced subgraph is well formed")
    }

    /// Biconnected components. A bridge bundle forms a two-vertex block.
    pub fn blocks(&self) -> Result<Vec<Block>> {
        self.require_connected()?;
        Ok(BlockFinder::new(self).run())
    }

    /// Minimum number of edges (with multiplicity) whose removal disconnects the graph.
    pub fn edge_connectivity(&self) -> Result<u64> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(
                "edge connectivity needs at least two vertices".into(),
            ));
        }
        if !self.is_connected()? {
            return Ok(0);
        }
        let mut net = FlowNetwork::new(self);
        let mut best = self.degrees().into_iter().min().unwrap_or(0);
        for t in 1..self.n {
            best = best.min(net.max_flow(0, t, best));
        }
        Ok(best)
    }

    /// Like [`edge_connectivity`](Self::edge_connectivity) but only probes the
    /// given sink vertices against vertex 0; an upper bound in general, exact
    /// when some probed sink lies across a minimum cut from vertex 0.
    pub fn edge_connectivity_sampled(&self, sinks: &[usize]) -> Result<u64> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(
                "edge connectivity needs at least two vertices".into(),
            ));
        }
        let mut net = FlowNetwork::new(self);
        let mut best = self.degrees().into_iter().min().unwrap_or(0);
        for &t in sinks.iter().filter(|&&t| t != 0 && t < self.n) {
            best = best.min(net.max_flow(0, t, best));
        }
        Ok(best)
    }

    /// Number of spanning trees, by the determinant of a reduced Laplacian.
    pub fn spanning_tree_count(&self) -> Result<BigInt> {
        self.require_connected()?;
        let size = self.n - 1;
        if size == 0 {
            return Ok(BigInt::one());
        }
        let mut lap = vec![vec![BigInt::zero(); size]; size];
        for e in &self.edges {
            let w = BigInt::from(e.mult);
            for &(a, b) in &[(e.u, e.v), (e.v, e.u)] {
                if a < size {
                    lap[a][a] += &w;
                    if b < size {
                        lap[a][b] -= &w;
                    }
                }
            }
        }
        Ok(bareiss_determinant(lap))
    }
}

fn to_index(x: u64) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::Parse(format!("vertex id {x} out of range")))
}

/// Fraction-free Gaussian elimination over the integers.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// A biconnected component together with the original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub graph: Multigraph,
    /// `vertices[i]` is the original id of block vertex `i`.
    pub vertices: Vec<usize>,
}

struct BlockFinder<'a> {
    g: &'a Multigraph,
    adj: Vec<Vec<(usize, usize)>>,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<usize>,
    blocks: Vec<Block>,
}

impl<'a> BlockFinder<'a> {
    fn new(g: &'a Multigraph) -> Self {
        let mut adj = vec![Vec::new(); g.n];
        for (i, e) in g.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        BlockFinder {
            g,
            adj,
            disc: vec![usize::MAX; g.n],
            low: vec![0; g.n],
            timer: 0,
            stack: Vec::new(),
            blocks: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<Block> {
        if self.g.n > 0 {
            self.visit(0, usize::MAX);
        }
        self.blocks
    }

    fn visit(&mut self, x: usize, parent_edge: usize) {
        self.disc[x] = self.timer;
        self.low[x] = self.timer;
        self.timer += 1;
        for idx in 0..self.adj[x].len() {
            let (y, e) = self.adj[x][idx];
            if e == parent_edge {
                continue;
            }
            if self.disc[y] == usize::MAX {
                self.stack.push(e);
                self.visit(y, e);
                self.low[x] = self.low[x].min(self.low[y]);
                if self.low[y] >= self.disc[x] {
                    self.pop_block(e);
                }
            } else if self.disc[y] < self.disc[x] {
                self.stack.push(e);
                self.low[x] = self.low[x].min(self.disc[y]);
            }
        }
    }

    fn pop_block(&mut self, until: usize) {
        let mut edge_ids = Vec::new();
        while let Some(e) = self.stack.pop() {
            edge_ids.push(e);
            if e == until {
                break;
            }
        }
        let mut vertices: Vec<usize> = edge_ids
            .iter()
            .flat_map(|&e| [self.g.edges[e].u, self.g.edges[e].v])
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        let graph = self.g.induced(&vertices);
        self.blocks.push(Block { graph, vertices });
    }
}

/// Residual network with symmetric capacities for undirected max-flow.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
    base: Vec<u64>,
}

impl FlowNetwork {
    fn new(g: &Multigraph) -> Self {
        let mut net = FlowNetwork {
            head: vec![Vec::new(); g.n],
            to: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
        };
        for e in &g.edges {
            // arc 2i goes u->v, arc 2i+1 goes v->u; each is the other's reverse
            net.head[e.u].push(net.to.len());
            net.to.push(e.v);
            net.base.push(e.mult);
            net.head[e.v].push(net.to.len());
            net.to.push(e.u);
            net.base.push(e.mult);
        }
        net.cap = net.base.clone();
        net
    }

    /// Max flow from `s` to `t`, stopping early once it reaches `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        self.cap.copy_from_slice(&self.base);
        let n = self.head.len();
        let mut flow = 0;
        let mut pred = vec![usize::MAX; n];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = usize::MAX);
            pred[s] = usize::MAX - 1;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &arc in &self.head[x] {
                    let y = self.to[arc];
                    if self.cap[arc] > 0 && pred[y] == usize::MAX {
                        pred[y] = arc;
                        if y == t {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if pred[t] == usize::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut y = t;
            while y != s {
                let arc = pred[y];
                push = push.min(self.cap[arc]);
                y = self.to[arc ^ 1];
            }
            let mut y = t;
            while y != s {
                let arc = pred[y];
                self.cap[arc] -= push;
                self.cap[arc ^ 1] += push;
                y = self.to[arc ^ 1];
            }
            flow += push;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::complete(3)
    }

    #[test]
    fn parse_merges_and_normalizes() {
        let g = Multigraph::parse_json(r#"{"n":2,"edges":[[0,1,6]]}"#).unwrap();
        assert_eq!(g.m(), 6);
        let g = Multigraph::parse_json(r#"{"n":3,"edges":[[1,0,1],[2,1,1],[0,2,1]]}"#).unwrap();
        assert_eq!(g, triangle());
        let g = Multigraph::parse_json(r#"{"n":2,"edges":[[0,1,2],[1,0,3]]}"#).unwrap();
        assert_eq!(g.multiplicity(0, 1), 5);
    }

    #[test]
    fn parse_rejects_bad_input() {
        for doc in [
            r#"{"n":2,"edges":[[0,0,1]]}"#,
            r#"{"n":2,"edges":[[0,2,1]]}"#,
            r#"{"n":2,"edges":[[0,1,0]]}"#,
            r#"{"n":2,"edges":[[0,1]]}"#,
            r#"not json"#,
        ] {
            assert!(Multigraph::parse_json(doc).is_err(), "{doc}");
        }
    }

    #[test]
    fn json_round_trip() {
        let g = Multigraph::new(4, [(0, 1, 2), (1, 2, 1), (2, 3, 5), (0, 3, 1)]).unwrap();
        assert_eq!(Multigraph::parse_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn connectivity() {
        assert!(triangle().is_connected().unwrap());
        assert!(!Multigraph::empty(2).is_connected().unwrap());
        let g = Multigraph::new(3, [(0, 1, 1)]).unwrap();
        assert!(!g.is_connected().unwrap());
        assert!(Multigraph::empty(1).is_connected().unwrap());
        assert!(matches!(
            Multigraph::empty(0).is_connected(),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn blocks_of_small_graphs() {
        let k4 = Multigraph::complete(4);
        let b = k4.blocks().unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].graph, k4);

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
        let b = bowtie.blocks().unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|blk| blk.graph == triangle()));

        let p3 = Multigraph::new(3, [(0, 1, 1), (1, 2, 4)]).unwrap();
        let mut mults: Vec<u64> = p3.blocks().unwrap().iter().map(|b| b.graph.m()).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 4]);
        assert!(Multigraph::empty(2).blocks().is_err());
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(Multigraph::complete(4).edge_connectivity().unwrap(), 3);
        assert_eq!(Multigraph::bundle(6).edge_connectivity().unwrap(), 6);
        assert_eq!(Multigraph::cycle(5).edge_connectivity().unwrap(), 2);
        assert_eq!(Multigraph::path(4).edge_connectivity().unwrap(), 1);
        assert!(Multigraph::empty(1).edge_connectivity().is_err());
    }

    #[test]
    fn spanning_trees() {
        assert_eq!(triangle().spanning_tree_count().unwrap(), BigInt::from(3));
        assert_eq!(
            Multigraph::complete(4).spanning_tree_count().unwrap(),
            BigInt::from(16)
        );
        assert_eq!(
            Multigraph::complete(6).spanning_tree_count().unwrap(),
            BigInt::from(1296)
        );
        assert_eq!(
            Multigraph::bundle(6).spanning_tree_count().unwrap(),
            BigInt::from(6)
        );
        assert!(Multigraph::empty(3).spanning_tree_count().is_err());
    }

    #[test]
    fn bundle_replace_scales() {
        let t2 = triangle().bundle_replace(2).unwrap();
        assert!(t2.edges().iter().all(|e| e.mult == 2));
        assert_eq!(triangle().bundle_replace(1).unwrap(), triangle());
        assert!(triangle().bundle_replace(0).is_err());
    }
}
