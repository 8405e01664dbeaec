//! Fixtures, strategies and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;

use semifact::graph::GraphBuilder;
use semifact::{EdgeLabel, LabelInput, LabelledGraph};

const INF: LabelInput = LabelInput::Infinite;

fn graph(vertices: &[&str], edges: &[(&str, &str, &str, LabelInput)]) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for v in vertices {
        b.add_vertex(*v);
    }
    for &(id, s, t, l) in edges {
        b.add_edge(id, s, t, l);
    }
    b.build().unwrap()
}

/// Two triangles sharing the edge labelled 6; edges ordered 3, 2, 6, 15, 10.
pub fn g_paper() -> LabelledGraph {
    let f = LabelInput::Finite;
    graph(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v2", "v1", f(3)),
            ("e2", "v1", "v4", f(2)),
            ("e3", "v2", "v4", f(6)),
            ("e4", "v4", "v3", f(15)),
            ("e5", "v3", "v2", f(10)),
        ],
    )
}

fn with_loop(loop_label: i64, last: i64) -> LabelledGraph {
    let f = LabelInput::Finite;
    graph(
        &["v1", "v2", "v3", "v4"],
        &[
            ("e1", "v2", "v1", f(3)),
            ("e2", "v1", "v4", f(2)),
            ("e3", "v2", "v4", f(6)),
            ("e4", "v4", "v3", f(last)),
            ("e5", "v3", "v2", f(10)),
            ("e6", "v2", "v2", f(loop_label)),
        ],
    )
}

/// The circuit-coprime graph: `g_paper` plus a loop labelled 1.
pub fn excc_a() -> LabelledGraph {
    with_loop(1, 15)
}

/// Not circuit-coprime: a loop labelled 3 and a circuit labelled 6, 10, 10.
pub fn excc_b() -> LabelledGraph {
    with_loop(3, 10)
}

/// Two vertices with parallel edges 2, 1, 4 and an infinite loop on `v1`.
pub fn g_inf() -> LabelledGraph {
    let f = LabelInput::Finite;
    graph(
        &["v1", "v2"],
        &[("e1", "v1", "v2", f(2)), ("e2", "v1", "v1", INF), ("e3", "v1", "v2", f(1)), ("e4", "v1", "v2", f(4))],
    )
}

/// First blow-up of `g_inf` as drawn: old vertices `p` (the loop's) and `q`.
pub fn g_inf_first() -> LabelledGraph {
    let one = LabelInput::Finite(1);
    graph(
        &["p", "q", "a", "b", "c", "d", "f"],
        &[
            ("1", "a", "p", one),
            ("2", "a", "b", INF),
            ("3", "b", "p", one),
            ("4", "p", "q", one),
            ("5", "p", "c", one),
            ("6", "c", "q", one),
            ("7", "p", "d", one),
            ("8", "d", "f", LabelInput::Finite(2)),
            ("9", "f", "q", one),
        ],
    )
}

/// Second blow-up of `g_inf` as drawn.
pub fn g_inf_second() -> LabelledGraph {
    let one = LabelInput::Finite(1);
    graph(
        &["p", "q", "a", "b", "x", "y", "c", "d", "m", "f"],
        &[
            ("1", "a", "x", one),
            ("2", "x", "y", INF),
            ("3", "y", "b", one),
            ("4", "a", "p", one),
            ("5", "b", "p", one),
            ("6", "p", "q", one),
            ("7", "p", "c", one),
            ("8", "c", "q", one),
            ("9", "p", "d", one),
            ("10", "d", "m", one),
            ("11", "m", "f", one),
            ("12", "f", "q", one),
        ],
    )
}

/// Two vertices with an edge 2, a unit edge, an edge 3, and loops 2 on each side.
pub fn two_loops() -> LabelledGraph {
    let f = LabelInput::Finite;
    graph(
        &["v1", "v2"],
        &[
            ("e1", "v1", "v2", f(2)),
            ("e2", "v1", "v1", f(2)),
            ("e3", "v1", "v2", f(1)),
            ("e4", "v1", "v2", f(3)),
            ("e5", "v2", "v2", f(2)),
        ],
    )
}

/// Total blow-up of [`two_loops`] as drawn; old vertices `p` and `q`.
pub fn two_loops_total() -> LabelledGraph {
    let one = LabelInput::Finite(1);
    let e = |id, s, t| (id, s, t, one);
    graph(
        &["p", "q", "a", "b", "c", "d", "f"],
        &[
            e("1", "a", "p"),
            e("2", "a", "p"),
            e("3", "p", "q"),
            e("4", "p", "b"),
            e("5", "b", "q"),
            e("6", "p", "c"),
            e("7", "c", "d"),
            e("8", "d", "q"),
            e("9", "q", "f"),
            e("10", "q", "f"),
        ],
    )
}

pub fn banana(a: i64, b: i64) -> LabelledGraph {
    let f = LabelInput::Finite;
    graph(&["v1", "v2"], &[("e1", "v1", "v2", f(a)), ("e2", "v1", "v2", f(b))])
}

pub fn path(labels: &[i64]) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for i in 0..=labels.len() {
        b.add_vertex(format!("v{}", i + 1));
    }
    for (i, &l) in labels.iter().enumerate() {
        b.add_edge(format!("e{}", i + 1), format!("v{}", i + 1), format!("v{}", i + 2), l);
    }
    b.build().unwrap()
}

pub fn cycle(n: usize) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("v{}", i + 1));
    }
    for i in 0..n {
        b.add_edge(format!("e{}", i + 1), format!("v{}", i + 1), format!("v{}", (i + 1) % n + 1), 1);
    }
    b.build().unwrap()
}

pub fn complete(n: usize) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.add_vertex(format!("v{}", i + 1));
    }
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            k += 1;
            b.add_edge(format!("e{k}"), format!("v{}", i + 1), format!("v{}", j + 1), 1);
        }
    }
    b.build().unwrap()
}

/// Rebuild `g` with vertex `i` renamed `names[i]`, edge `j` renamed
/// `edge_names[j]` and the orientation of edge `j` reversed where `flip[j]`.
pub fn rebuild(g: &LabelledGraph, names: &[String], edge_names: &[String], flip: &[bool]) -> LabelledGraph {
    let mut b = GraphBuilder::new();
    for n in names {
        b.add_vertex(n.clone());
    }
    for (j, e) in g.edges().iter().enumerate() {
        let (s, t) = if flip[j] { (e.target, e.source) } else { (e.source, e.target) };
        b.add_edge(edge_names[j].clone(), names[s].clone(), names[t].clone(), LabelInput::from(e.label));
    }
    b.build().unwrap()
}

/// Labels: finite in `1..=max`, or infinity with weight `inf_weight` out of 10.
pub fn label_strategy(max: i64, inf_weight: u32) -> BoxedStrategy<LabelInput> {
    if inf_weight == 0 {
        (1..=max).prop_map(LabelInput::Finite).boxed()
    } else {
        prop_oneof![
            10 - inf_weight => (1..=max).prop_map(LabelInput::Finite),
            inf_weight => Just(LabelInput::Infinite),
        ]
        .boxed()
    }
}

/// Connected multigraphs with loops: a random spanning tree plus extra edges.
pub fn graph_strategy(max_vertices: usize, max_extra: usize, labels: BoxedStrategy<LabelInput>) -> impl Strategy<Value = LabelledGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let tree = prop::collection::vec((any::<Index>(), any::<bool>(), labels.clone()), n - 1);
        let extra = prop::collection::vec((0..n, 0..n, labels.clone()), 0..=max_extra);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut edges = Vec::new();
            for (v, (parent, flip, l)) in (1..n).zip(tree) {
                let u = parent.index(v);
                edges.push(if flip { (v, u, l) } else { (u, v, l) });
            }
            edges.extend(extra);
            let mut b = GraphBuilder::new();
            for v in 0..n {
                b.add_vertex(format!("v{}", v + 1));
            }
            for (i, (s, t, l)) in edges.into_iter().enumerate() {
                b.add_edge(format!("e{}", i + 1), format!("v{}", s + 1), format!("v{}", t + 1), l);
            }
            b.build().unwrap()
        })
    })
}

/// Finite labels only.
pub fn finite_graphs(max_vertices: usize, max_extra: usize, max_label: i64) -> impl Strategy<Value = LabelledGraph> {
    graph_strategy(max_vertices, max_extra, label_strategy(max_label, 0))
}

pub fn label_value(l: EdgeLabel) -> Option<u64> {
    l.value()
}

// ---------------------------------------------------------------------------
// Oracles. None of these use the library's linear algebra.

/// Determinant by fraction-free Gaussian elimination in `i128`.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Every `k × k` minor of `m`.
pub fn minors(m: &[Vec<i128>], k: usize) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for r in subsets(rows, k) {
        for c in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
            out.push(det_i128(&sub));
        }
    }
    out
}

/// Invariant factors `D_i / D_{i-1}` from gcds of minors, padded with zeros
/// to `min(rows, cols)` entries.
pub fn invariant_factors_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let k = rows.min(cols);
    let mut out = Vec::with_capacity(k);
    let mut prev = 1i128;
    for i in 1..=k {
        let d = minors(m, i).into_iter().fold(0i128, |a, b| a.gcd(&b));
        if d == 0 {
            out.resize(k, 0);
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

pub fn to_i128(m: &semifact::zlinalg::IntMatrix) -> Vec<Vec<i128>> {
    m.row_vectors()
        .into_iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).expect("small entries")).collect())
        .collect()
}

pub fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

/// The graph Laplacian, loops ignored, parallel edges counted.
pub fn laplacian(g: &LabelledGraph) -> Vec<Vec<i128>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i128; n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        l[e.source][e.source] += 1;
        l[e.target][e.target] += 1;
        l[e.source][e.target] -= 1;
        l[e.target][e.source] -= 1;
    }
    l
}

/// The critical group of `g`: invariant factors above one of its reduced Laplacian.
pub fn critical_group(g: &LabelledGraph) -> Vec<i128> {
    let l = laplacian(g);
    let reduced: Vec<Vec<i128>> = l[1..].iter().map(|r| r[1..].to_vec()).collect();
    invariant_factors_by_minors(&reduced).into_iter().filter(|&d| d > 1).collect()
}

/// Edge sets of all circuits, found by testing every edge subset: a circuit is
/// a single loop, or a connected edge set where every touched vertex has
/// degree two.
pub fn brute_force_circuits(g: &LabelledGraph) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    assert!(m <= 20, "brute force is exponential");
    let mut out = Vec::new();
    for mask in 1u32..1 << m {
        let set: Vec<usize> = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
        if set.len() == 1 {
            if g.edge(set[0]).is_loop() {
                out.push(set);
            }
            continue;
        }
        if set.iter().any(|&e| g.edge(e).is_loop()) {
            continue;
        }
        let mut deg = vec![0usize; g.vertex_count()];
        for &e in &set {
            deg[g.edge(e).source] += 1;
            deg[g.edge(e).target] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        // connected: flood from one endpoint over the chosen edges
        let start = g.edge(set[0]).source;
        let mut seen = vec![false; g.vertex_count()];
        seen[start] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for &e in &set {
                let (s, t) = (g.edge(e).source, g.edge(e).target);
                if seen[s] != seen[t] {
                    seen[s] = true;
                    seen[t] = true;
                    changed = true;
                }
            }
        }
        if deg.iter().enumerate().all(|(v, &d)| d == 0 || seen[v]) {
            out.push(set);
        }
    }
    out.sort();
    out
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn abs_big(v: &BigInt) -> BigInt {
    v.abs()
}
