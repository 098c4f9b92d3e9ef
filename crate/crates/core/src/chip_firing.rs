//! Critical configurations of the chip-firing game with a sink, and the
//! H-vector they count.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::poly::HVector;

/// Chips per vertex. The sink holds minus the total of the others.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub theta: Vec<i64>,
    pub sink: usize,
}

impl Configuration {
    fn from_chips(chips: &[u64], sink: usize) -> Self {
        let mut theta: Vec<i64> = chips.iter().map(|&c| c as i64).collect();
        theta[sink] = 0;
        theta[sink] = -theta.iter().sum::<i64>();
        Configuration { theta, sink }
    }

    pub fn is_stable(&self, degrees: &[u64]) -> bool {
        (0..self.theta.len())
            .filter(|&v| v != self.sink)
            .all(|v| self.theta[v] < degrees[v] as i64)
    }
}

/// `prod x_v^{deg(v) - 1 - theta(v)}` over non-sink vertices; the sink's slot is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CriticalMonomial {
    pub exponents: Vec<u64>,
}

impl CriticalMonomial {
    pub fn degree(&self) -> u64 {
        self.exponents.iter().sum()
    }

    fn of(config: &Configuration, degrees: &[u64]) -> Self {
        let exponents = (0..degrees.len())
            .map(|v| {
                if v == config.sink {
                    0
                } else {
                    (degrees[v] as i64 - 1 - config.theta[v]) as u64
                }
            })
            .collect();
        CriticalMonomial { exponents }
    }
}

fn check_input(g: &Multigraph, sink: usize) -> Result<()> {
    g.require_connected()?;
    if g.n() < 2 {
        return Err(Error::InvalidArgument(
            "chip-firing needs at least 2 vertices".into(),
        ));
    }
    if sink >= g.n() {
        return Err(Error::InvalidArgument(format!(
            "sink {sink} is not a vertex of a graph on {} vertices",
            g.n()
        )));
    }
    Ok(())
}

/// Burning test: fire the sink, then every vertex must fire exactly once.
fn burns(chips: &[u64], sink: usize, degrees: &[u64], adj: &[Vec<(usize, u64)>]) -> bool {
    let n = degrees.len();
    let mut burnt = vec![false; n];
    let mut received = vec![0u64; n];
    burnt[sink] = true;
    let mut stack = vec![sink];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &(y, k) in &adj[x] {
            if burnt[y] {
                continue;
            }
            received[y] += k;
            if chips[y] + received[y] >= degrees[y] {
                burnt[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Every critical configuration, in lexicographic order of chip vectors.
pub fn critical_configs(g: &Multigraph, sink: usize) -> Result<Vec<Configuration>> {
    check_input(g, sink)?;
    let degrees = g.degrees();
    let adj = g.adjacency();
    let n = g.n();
    let mut chips = vec![0u64; n];
    let mut out = Vec::new();
    loop {
        if burns(&chips, sink, &degrees, &adj) {
            out.push(Configuration::from_chips(&chips, sink));
        }
        // odometer over prod_{v != sink} 0..deg(v)
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(out);
            }
            v -= 1;
            if v == sink {
                continue;
            }
            chips[v] += 1;
            if chips[v] < degrees[v] {
                break;
            }
            chips[v] = 0;
        }
    }
}

pub fn critical_monomials(g: &Multigraph, sink: usize) -> Result<Vec<CriticalMonomial>> {
    let degrees = g.degrees();
    Ok(critical_configs(g, sink)?
        .iter()
        .map(|c| CriticalMonomial::of(c, &degrees))
        .collect())
}

/// `H_i` = number of critical monomials of degree `i`.
pub fn h_vector_chip(g: &Multigraph, sink: usize) -> Result<HVector> {
    let monomials = critical_monomials(g, sink)?;
    let len = (g.m() + 2 - g.n() as u64) as usize;
    let mut values = vec![BigUint::from(0u32); len];
    for mono in &monomials {
        let d = mono.degree() as usize;
        if d >= len {
            return Err(Error::InvalidGraph(format!(
                "critical monomial of degree {d} exceeds m - n + 1 = {}",
                len - 1
            )));
        }
        values[d] += 1u32;
    }
    Ok(HVector {
        values,
        n: g.n(),
        m: g.m(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub closed_under_division: bool,
    pub pure: bool,
    pub top_degree: Option<u64>,
    /// `None` when the sink has incident multiple edges or `n < 3`.
    pub support_bound: Option<bool>,
    pub violations: Vec<String>,
}

impl IdealReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the order-ideal structure of a critical monomial set.
///
/// `simple_sink` says whether the sink used to produce the monomials has no
/// incident multiple edges; if so (and `n >= 3`) every monomial may use at
/// most `n - 2` variables.
pub fn ideal_check(
    monomials: &[CriticalMonomial],
    n: usize,
    m: u64,
    simple_sink: bool,
) -> IdealReport {
    let set: HashSet<&CriticalMonomial> = monomials.iter().collect();
    let mut violations = Vec::new();
    let mut closed = true;
    let mut pure = true;
    let top = m + 1 - n as u64;
    let mut top_degree = None;

    for mono in monomials {
        top_degree = top_degree.max(Some(mono.degree()));
        let mut maximal = true;
        for v in 0..mono.exponents.len() {
            let mut probe = mono.clone();
            if probe.exponents[v] > 0 {
                probe.exponents[v] -= 1;
                if !set.contains(&probe) {
                    closed = false;
                    violations.push(format!(
                        "{:?} is missing divisor {:?}",
                        mono.exponents, probe.exponents
                    ));
                }
                probe.exponents[v] += 1;
            }
            probe.exponents[v] += 1;
            if set.contains(&probe) {
                maximal = false;
            }
        }
        if maximal && mono.degree() != top {
            pure = false;
            violations.push(format!(
                "maximal monomial {:?} has degree {}, expected {top}",
                mono.exponents,
                mono.degree()
            ));
        }
    }

    let support_bound = (simple_sink && n >= 3).then(|| {
        let mut holds = true;
        for mono in monomials {
            let support = mono.exponents.iter().filter(|&&e| e > 0).count();
            if support > n - 2 {
                holds = false;
                violations.push(format!(
                    "{:?} uses {support} > n - 2 variables",
                    mono.exponents
                ));
            }
        }
        holds
    });

    IdealReport {
        closed_under_division: closed,
        pure,
        top_degree,
        support_bound,
        violations,
    }
}

/// Recurrence straight from the firing rules: a stable `theta` is critical
/// iff some nontrivial legal firing sequence returns to it. Breadth-first
/// over reachable chip vectors; the sink fires only when nothing else can.
pub fn is_critical_by_firing(g: &Multigraph, config: &Configuration) -> Result<bool> {
    check_input(g, config.sink)?;
    let degrees = g.degrees();
    let adj = g.adjacency();
    let sink = config.sink;
    if !config.is_stable(&degrees) {
        return Ok(false);
    }
    let successors = |state: &Vec<i64>| -> Vec<Vec<i64>> {
        let ready: Vec<usize> = (0..state.len())
            .filter(|&v| v != sink && state[v] >= degrees[v] as i64)
            .collect();
        let firing = if ready.is_empty() { vec![sink] } else { ready };
        firing
            .into_iter()
            .map(|x| {
                let mut next = state.clone();
                next[x] -= degrees[x] as i64;
                for &(y, k) in &adj[x] {
                    next[y] += k as i64;
                }
                next
            })
            .collect()
    };
    let start = config.theta.clone();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = successors(&start).into();
    while let Some(state) = queue.pop_front() {
        if state == start {
            return Ok(true);
        }
        if seen.insert(state.clone()) {
            queue.extend(successors(&state));
        }
    }
    Ok(false)
}

/// Compares the burning test against [`is_critical_by_firing`] on every
/// stable configuration. Only meant for tiny graphs.
pub fn burning_matches_firing(g: &Multigraph, sink: usize) -> Result<bool> {
    if g.m() > 8 {
        return Err(Error::GuardExceeded {
            pairs: g.m() as usize,
            guard: 8,
        });
    }
    let critical: HashSet<Configuration> = critical_configs(g, sink)?.into_iter().collect();
    let degrees = g.degrees();
    let n = g.n();
    let mut chips = vec![0u64; n];
    loop {
        let config = Configuration::from_chips(&chips, sink);
        if is_critical_by_firing(g, &config)? != critical.contains(&config) {
            return Ok(false);
        }
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(true);
            }
            v -= 1;
            if v == sink {
                continue;
            }
            chips[v] += 1;
            if chips[v] < degrees[v] {
                break;
            }
            chips[v] = 0;
        }
    }
}
