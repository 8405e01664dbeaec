//! Circuit-coprimality and the resulting semi-factoriality verdict.
//!
//! A labelled graph is circuit-coprime if, after contracting infinite edges,
//! the labels along every circuit have gcd one. Three independent deciders are
//! provided:
//!
//! * [`circuit_coprime_prime_forest`]: for each prime `p`, the edges with
//!   labels divisible by `p` must form a forest.
//! * [`circuit_coprime_snf`]: the Smith normal form of the labelled
//!   fundamental circuit matrix must be all ones.
//! * [`circuit_coprime_naive`]: every enumerated circuit is checked directly.
//!
//! When the graph is circuit-coprime, the curve is semi-factorial and
//! `Pic / cl(e)` is a Néron lft-model. The converse needs a strictly henselian
//! base (or split singularities); a verdict states the combinatorial fact only.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::circuits::fundamental_circuit_matrix;
use crate::error::Result;
use crate::graph::{contract_infinite, enumerate_circuits, spanning_tree, LabelledGraph};
use crate::zlinalg::snf;

/// Which decider produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    PrimeForest,
    Snf,
    Naive,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::PrimeForest, Method::Snf, Method::Naive];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::PrimeForest => "prime-forest",
            Method::Snf => "snf",
            Method::Naive => "naive",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method {s:?}; expected prime-forest, snf or naive"))
    }
}

/// Evidence for a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The nonzero diagonal of the SNF of the labelled fundamental matrix of
    /// the contracted graph, all ones.
    Coprime { snf_diagonal: Vec<BigInt> },
    /// A prime and the edge ids of a circuit, in traversal order, all of whose
    /// labels it divides.
    Circuit { prime: u64, edges: Vec<String> },
}

impl Witness {
    /// Check a witness against `g` independently of the decider that made it.
    pub fn is_valid_for(&self, g: &LabelledGraph) -> bool {
        match self {
            Witness::Coprime { snf_diagonal } => {
                snf_diagonal.len() == contract_infinite(g).graph.nullity() && snf_diagonal.iter().all(One::is_one)
            }
            Witness::Circuit { prime, edges } => {
                let c = contract_infinite(g).graph;
                let mut idx = Vec::new();
                for id in edges {
                    let Some(e) = c.edge_index(id) else { return false };
                    match c.edge(e).label.value() {
                        Some(l) if l % prime == 0 => idx.push(e),
                        _ => return false,
                    }
                }
                is_prime(*prime) && shortest_cycle(&c, &idx).is_some()
            }
        }
    }
}

/// The outcome of a circuit-coprimality decision and its interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub circuit_coprime: bool,
    pub method: Method,
    pub witness: Witness,
    /// Every line bundle on the generic fibre extends to the curve.
    pub semi_factorial: bool,
    /// `Pic / cl(e)` is a Néron lft-model of the Picard scheme of the generic fibre.
    pub neron_lft_model: bool,
}

impl Verdict {
    fn new(method: Method, witness: Witness) -> Verdict {
        let ok = matches!(witness, Witness::Coprime { .. });
        Verdict { circuit_coprime: ok, method, witness, semi_factorial: ok, neron_lft_model: ok }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "circuit-coprime: {}; semi-factorial: {}; Néron lft-model: {}",
            self.circuit_coprime, self.semi_factorial, self.neron_lft_model
        )
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Distinct prime factors by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A shortest circuit among `edges`, as edge indices in traversal order.
fn shortest_cycle(g: &LabelledGraph, edges: &[usize]) -> Option<Vec<usize>> {
    if let Some(&l) = edges.iter().find(|&&e| g.edge(e).is_loop()) {
        return Some(vec![l]);
    }
    let n = g.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in edges {
        let edge = g.edge(e);
        adj[edge.source].push((edge.target, e));
        adj[edge.target].push((edge.source, e));
    }
    let mut best: Option<Vec<usize>> = None;
    for &e in edges {
        let edge = g.edge(e);
        // shortest path from target back to source avoiding e
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([edge.target]);
        seen[edge.target] = true;
        while let Some(u) = queue.pop_front() {
            if u == edge.source {
                break;
            }
            for &(w, f) in &adj[u] {
                if f != e && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((u, f));
                    queue.push_back(w);
                }
            }
        }
        if !seen[edge.source] {
            continue;
        }
        let mut back = Vec::new();
        let mut cur = edge.source;
        while let Some((u, f)) = prev[cur] {
            back.push(f);
            cur = u;
        }
        // back runs from source to target; traverse e first, then walk back
        let mut cycle = vec![e];
        cycle.extend(back.into_iter().rev());
        if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
            best = Some(cycle);
        }
    }
    best
}

fn ids(g: &LabelledGraph, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| g.edge(e).id.clone()).collect()
}

fn coprime_witness(c: &LabelledGraph) -> Witness {
    let n = fundamental_circuit_matrix(c, &spanning_tree(c), true).expect("contracted graphs have finite labels");
    let snf_diagonal = snf(&n.matrix).diagonal;
    Witness::Coprime { snf_diagonal }
}

fn edges_divisible_by(c: &LabelledGraph, p: u64) -> Vec<usize> {
    (0..c.edge_count())
        .filter(|&e| c.edge(e).label.value().is_some_and(|l| l % p == 0))
        .collect()
}

fn labelled_primes(c: &LabelledGraph) -> Vec<u64> {
    let mut primes: Vec<u64> = c.edges().iter().filter_map(|e| e.label.value()).flat_map(prime_factors).collect();
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// Decide by checking, for each prime `p` dividing a label, that the edges
/// with `p`-divisible labels form a forest. A negative witness is a shortest
/// such circuit over all primes, the smaller prime winning ties.
pub fn circuit_coprime_prime_forest(g: &LabelledGraph) -> Verdict {
    let c = contract_infinite(g).graph;
    let mut best: Option<(u64, Vec<usize>)> = None;
    for p in labelled_primes(&c) {
        if let Some(cycle) = shortest_cycle(&c, &edges_divisible_by(&c, p)) {
            if best.as_ref().is_none_or(|(_, b)| cycle.len() < b.len()) {
                best = Some((p, cycle));
            }
        }
    }
    match best {
        Some((prime, cycle)) => Verdict::new(Method::PrimeForest, Witness::Circuit { prime, edges: ids(&c, &cycle) }),
        None => Verdict::new(Method::PrimeForest, coprime_witness(&c)),
    }
}

/// Decide by the Smith normal form of the labelled fundamental circuit matrix:
/// coprime iff all `r` diagonal entries are one.
pub fn circuit_coprime_snf(g: &LabelledGraph) -> Verdict {
    let c = contract_infinite(g).graph;
    let n = fundamental_circuit_matrix(&c, &spanning_tree(&c), true).expect("contracted graphs have finite labels");
    let diagonal = snf(&n.matrix).diagonal;
    let Some(last) = diagonal.last().filter(|d| !d.is_one()) else {
        return Verdict::new(Method::Snf, Witness::Coprime { snf_diagonal: diagonal });
    };
    // p divides d_r exactly when the p-divisible edges contain a circuit
    let d = last.to_u64().expect("the last invariant factor divides a product of labels");
    let p = prime_factors(d)[0];
    let cycle = shortest_cycle(&c, &edges_divisible_by(&c, p)).expect("a prime dividing d_r has a circuit");
    Verdict::new(Method::Snf, Witness::Circuit { prime: p, edges: ids(&c, &cycle) })
}

/// Decide by enumerating every circuit and taking the gcd of its labels.
pub fn circuit_coprime_naive(g: &LabelledGraph, cap: usize) -> Result<Verdict> {
    let c = contract_infinite(g).graph;
    for circuit in enumerate_circuits(&c, cap)? {
        let gcd = circuit
            .edges()
            .iter()
            .map(|&e| c.edge(e).label.value().expect("contracted graphs have finite labels"))
            .fold(0, |a, b| a.gcd(&b));
        if gcd > 1 {
            let witness = Witness::Circuit { prime: prime_factors(gcd)[0], edges: ids(&c, circuit.edges()) };
            return Ok(Verdict::new(Method::Naive, witness));
        }
    }
    Ok(Verdict::new(Method::Naive, coprime_witness(&c)))
}

/// Run the chosen decider. `cap` only matters for [`Method::Naive`].
pub fn decide(g: &LabelledGraph, method: Method, cap: usize) -> Result<Verdict> {
    match method {
        Method::PrimeForest => Ok(circuit_coprime_prime_forest(g)),
        Method::Snf => Ok(circuit_coprime_snf(g)),
        Method::Naive => circuit_coprime_naive(g, cap),
    }
}

/// The semi-factoriality verdict, using the prime-forest decider.
pub fn semifactorial_verdict(g: &LabelledGraph) -> Verdict {
    circuit_coprime_prime_forest(g)
}

/// The blow-up level at which every finite label has become one:
/// `max(1, ceil((m - 1) / 2))` over finite labels `m`, or 0 without edges.
pub fn stabilization_index(g: &LabelledGraph) -> u32 {
    if g.edge_count() == 0 {
        return 0;
    }
    let m = g.max_finite_label().unwrap_or(1);
    (m / 2).max(1) as u32
}
