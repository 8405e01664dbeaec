//! Seeded random and exhaustive generators of small labelled graphs, used to
//! cross-check the deciders against each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeLabel, GraphBuilder, LabelInput, LabelledGraph};

/// Environment variable holding the seed for randomized corpora.
pub const SEED_ENV: &str = "SEMIFACT_SEED";

/// The seed from `SEMIFACT_SEED`, or 0.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of random graphs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomGraphParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_label: u64,
    /// Probability that an edge is labelled infinity.
    pub infinite_probability: f64,
    /// Probability that an extra edge is a loop.
    pub loop_probability: f64,
}

impl Default for RandomGraphParams {
    fn default() -> Self {
        RandomGraphParams {
            max_vertices: 6,
            max_edges: 9,
            max_label: 12,
            infinite_probability: 0.0,
            loop_probability: 0.1,
        }
    }
}

const VERTEX_IDS: [&str; 8] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8"];
const EDGE_IDS: [&str; 12] = ["e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9", "e10", "e11", "e12"];

fn name(table: &[&str], prefix: char, i: usize) -> String {
    table.get(i).map_or_else(|| format!("{prefix}{}", i + 1), |s| s.to_string())
}

fn build(n: usize, edges: &[(usize, usize, EdgeLabel)]) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_vertex(name(&VERTEX_IDS, 'v', v));
    }
    for (i, &(s, t, l)) in edges.iter().enumerate() {
        b.add_edge(
            name(&EDGE_IDS, 'e', i),
            name(&VERTEX_IDS, 'v', s),
            name(&VERTEX_IDS, 'v', t),
            LabelInput::from(l),
        );
    }
    b.build().expect("generated graphs are valid")
}

/// A connected random graph: a random spanning tree plus extra edges, loops
/// and parallel edges included.
pub fn random_graph<R: Rng>(rng: &mut R, p: &RandomGraphParams) -> LabelledGraph {
    let n = rng.gen_range(1..=p.max_vertices.max(1));
    let min_edges = n - 1;
    let m = rng.gen_range(min_edges..=p.max_edges.max(min_edges));
    let label = |rng: &mut R| {
        if rng.gen_bool(p.infinite_probability) {
            EdgeLabel::INFINITY
        } else {
            EdgeLabel::finite(rng.gen_range(1..=p.max_label)).expect("labels are positive")
        }
    };
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let l = label(rng);
        edges.push(if rng.gen_bool(0.5) { (u, v, l) } else { (v, u, l) });
    }
    while edges.len() < m {
        let s = rng.gen_range(0..n);
        let t = if n == 1 || rng.gen_bool(p.loop_probability) { s } else { rng.gen_range(0..n) };
        let l = label(rng);
        edges.push((s, t, l));
    }
    // shuffle edge ids so tree edges are not always first
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    build(n, &edges)
}

/// `count` random graphs from `seed`.
pub fn random_graphs(seed: u64, count: usize, p: &RandomGraphParams) -> Vec<LabelledGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_graph(&mut r, p)).collect()
}

type Slot = (u8, u8);

fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                go(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn apply(perm: &[u8], (a, b): Slot) -> Slot {
    let (x, y) = (perm[a as usize], perm[b as usize]);
    (x.min(y), x.max(y))
}

fn connected(n: usize, slots: &[Slot]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for &(a, b) in slots {
        let (x, y) = (root(&mut parent, a as usize), root(&mut parent, b as usize));
        if x != y {
            parent[x] = y;
            parts -= 1;
        }
    }
    parts == 1
}

/// Calls `f` once per isomorphism class of connected multigraphs (loops
/// allowed) with between 1 and `max_vertices` vertices, at most `max_edges`
/// edges, and labels from `labels`. Classes are taken up to vertex
/// permutation and reordering of parallel edges; orientations are fixed
/// from smaller to larger vertex.
pub fn for_each_small_graph<F: FnMut(&LabelledGraph)>(max_vertices: usize, max_edges: usize, labels: &[EdgeLabel], mut f: F) {
    let mut labels = labels.to_vec();
    labels.sort_by_key(|l| l.value().unwrap_or(u64::MAX));
    labels.dedup();
    for n in 1..=max_vertices {
        let slots: Vec<Slot> = (0..n as u8).flat_map(|a| (a..n as u8).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut structure = Vec::new();
        structures(&slots, 0, max_edges, &mut structure, &mut |s| {
            if !connected(n, s) {
                return;
            }
            let mut auts = Vec::new();
            for p in &perms {
                let mut img: Vec<Slot> = s.iter().map(|&e| apply(p, e)).collect();
                img.sort_unstable();
                match img.as_slice().cmp(s) {
                    std::cmp::Ordering::Less => return,
                    std::cmp::Ordering::Equal => auts.push(p.clone()),
                    std::cmp::Ordering::Greater => {}
                }
            }
            label_structure(n, s, &labels, &auts, &mut f);
        });
    }
}

/// Nondecreasing slot sequences (multisets) of length at most `max_len`.
fn structures(slots: &[Slot], from: usize, max_len: usize, cur: &mut Vec<Slot>, f: &mut dyn FnMut(&[Slot])) {
    f(cur);
    if cur.len() == max_len {
        return;
    }
    for i in from..slots.len() {
        cur.push(slots[i]);
        structures(slots, i, max_len, cur, f);
        cur.pop();
    }
}

fn label_structure<F: FnMut(&LabelledGraph)>(n: usize, s: &[Slot], labels: &[EdgeLabel], auts: &[Vec<u8>], f: &mut F) {
    let mut idx = vec![0usize; s.len()];
    let mut assign = |idx: &[usize]| {
        // canonical under the automorphisms of the structure
        let own: Vec<(Slot, usize)> = s.iter().copied().zip(idx.iter().copied()).collect();
        for p in auts {
            let mut img: Vec<(Slot, usize)> = own.iter().map(|&(e, l)| (apply(p, e), l)).collect();
            img.sort_unstable();
            if img < own {
                return;
            }
        }
        let edges: Vec<(usize, usize, EdgeLabel)> =
            own.iter().map(|&((a, b), l)| (a as usize, b as usize, labels[l])).collect();
        f(&build(n, &edges));
    };
    if s.is_empty() {
        assign(&idx);
        return;
    }
    // labels are nondecreasing within each run of parallel edges
    loop {
        assign(&idx);
        let mut i = s.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 < labels.len() {
                idx[i] += 1;
                for j in i + 1..s.len() {
                    idx[j] = if s[j] == s[j - 1] { idx[j - 1] } else { 0 };
                }
                break;
            }
        }
    }
}

/// Every connected simple graph on the vertex set `{v1, ..., vn}` (not up to
/// isomorphism), all labels one.
pub fn connected_simple_graphs(n: usize) -> Vec<LabelledGraph> {
    let pairs: Vec<Slot> = (0..n as u8).flat_map(|a| (a + 1..n as u8).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let chosen: Vec<Slot> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        if connected(n, &chosen) {
            let edges: Vec<_> = chosen.iter().map(|&(a, b)| (a as usize, b as usize, EdgeLabel::ONE)).collect();
            out.push(build(n, &edges));
        }
    }
    out
}

/// The labels used by the exhaustive corpus: 1, 2, 3, 4, 6 and infinity.
pub fn exhaustive_labels() -> Vec<EdgeLabel> {
    [1, 2, 3, 4, 6]
        .into_iter()
        .filter_map(EdgeLabel::finite)
        .chain([EdgeLabel::INFINITY])
        .collect()
}
