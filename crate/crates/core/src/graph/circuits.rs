use std::collections::VecDeque;

use super::LabelledGraph;
use crate::error::{Error, Result};

/// A spanning tree together with its links (the non-tree edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    in_tree: Vec<bool>,
    links: Vec<usize>,
    /// Parent vertex and connecting edge, rooted at vertex 0.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
}

impl SpanningTree {
    /// Validate a user-chosen edge set as a spanning tree of `g`.
    pub fn from_edges(g: &LabelledGraph, edges: &[usize]) -> Result<SpanningTree> {
        let n = g.vertex_count();
        let mut in_tree = vec![false; g.edge_count()];
        for &e in edges {
            if e >= g.edge_count() {
                return Err(Error::NotASpanningTree(format!("edge index {e} out of range")));
            }
            if in_tree[e] {
                return Err(Error::NotASpanningTree(format!("edge `{}` repeated", g.edge(e).id)));
            }
            in_tree[e] = true;
        }
        if edges.len() + 1 != n {
            return Err(Error::NotASpanningTree(format!(
                "{} edges given, a spanning tree has {}",
                edges.len(),
                n - 1
            )));
        }
        let t = Self::grow(g, in_tree);
        if t.parent.iter().enumerate().any(|(v, p)| v != 0 && p.is_none()) {
            // n - 1 edges that do not reach every vertex must contain a circuit
            return Err(Error::NotASpanningTree("edge set contains a circuit".into()));
        }
        Ok(t)
    }

    /// Resolve edge ids, then validate as in [`SpanningTree::from_edges`].
    pub fn from_edge_ids<S: AsRef<str>>(g: &LabelledGraph, ids: &[S]) -> Result<SpanningTree> {
        let idx = ids
            .iter()
            .map(|id| g.edge_index(id.as_ref()).ok_or_else(|| Error::UnknownEdge(id.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(g, &idx)
    }

    fn grow(g: &LabelledGraph, in_tree: Vec<bool>) -> SpanningTree {
        let n = g.vertex_count();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if !in_tree[e] {
                    continue;
                }
                let w = g.edge(e).other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, e));
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let links = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
        SpanningTree { in_tree, links, parent, depth }
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    /// Tree edges in ascending index order.
    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    /// Links in ascending index order.
    pub fn links(&self) -> &[usize] {
        &self.links
    }

    /// Edges of the tree path from `from` to `to`, with the vertices visited.
    fn path(&self, from: usize, to: usize) -> (Vec<usize>, Vec<usize>) {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root has parent");
                up.push((e, p));
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root has parent");
                down.push((e, b));
                b = p;
            }
        }
        let mut edges = Vec::new();
        let mut verts = Vec::new();
        for (e, v) in up {
            edges.push(e);
            verts.push(v);
        }
        for (e, v) in down.into_iter().rev() {
            edges.push(e);
            verts.push(v);
        }
        (edges, verts)
    }
}

/// Breadth-first spanning tree from the smallest vertex id, scanning incident
/// edges in id order.
pub fn spanning_tree(g: &LabelledGraph) -> SpanningTree {
    let n = g.vertex_count();
    let mut in_tree = vec![false; g.edge_count()];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if !seen[w] {
                seen[w] = true;
                in_tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    SpanningTree::grow(g, in_tree)
}

/// A circuit with a chosen traversal direction.
///
/// Edge `i` is traversed from `vertices[i]` to `vertices[(i + 1) % len]`;
/// `agrees[i]` records whether that matches the edge's reference orientation.
/// A loop is a circuit of length one and always agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    vertices: Vec<usize>,
    edges: Vec<usize>,
    agrees: Vec<bool>,
}

impl Circuit {
    /// Build a circuit from a closed walk starting at `start`, validating that
    /// it is one.
    pub fn from_walk(g: &LabelledGraph, start: usize, edges: &[usize]) -> Result<Circuit> {
        let bad = |msg: &str| Err(Error::InvalidCircuit(msg.into()));
        if edges.is_empty() {
            return bad("empty walk");
        }
        if start >= g.vertex_count() {
            return bad("start vertex out of range");
        }
        let mut vertices = Vec::with_capacity(edges.len());
        let mut agrees = Vec::with_capacity(edges.len());
        let mut cur = start;
        for &e in edges {
            if e >= g.edge_count() {
                return bad("edge index out of range");
            }
            let edge = g.edge(e);
            if edge.source != cur && edge.target != cur {
                return bad("edge not incident to walk");
            }
            if edge.is_loop() && edges.len() > 1 {
                return bad("loop inside a longer walk");
            }
            vertices.push(cur);
            agrees.push(edge.source == cur);
            cur = edge.other(cur);
        }
        if cur != start {
            return bad("walk is not closed");
        }
        let mut vs = vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        let mut es = edges.to_vec();
        es.sort_unstable();
        es.dedup();
        if vs.len() != vertices.len() || es.len() != edges.len() {
            return bad("repeated vertex or edge");
        }
        Ok(Circuit { vertices, edges: edges.to_vec(), agrees })
    }

    /// Like [`Circuit::from_walk`], with ids.
    pub fn from_walk_ids<S: AsRef<str>>(g: &LabelledGraph, start: &str, edges: &[S]) -> Result<Circuit> {
        let s = g.vertex_index(start).ok_or_else(|| Error::UnknownVertex(start.into()))?;
        let idx = edges
            .iter()
            .map(|id| g.edge_index(id.as_ref()).ok_or_else(|| Error::UnknownEdge(id.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_walk(g, s, &idx)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn agreements(&self) -> &[bool] {
        &self.agrees
    }

    /// `Some(+1)` if `edge` is traversed along its reference orientation,
    /// `Some(-1)` if against it, `None` if not on the circuit.
    pub fn sign_of(&self, edge: usize) -> Option<i64> {
        self.edges
            .iter()
            .position(|&e| e == edge)
            .map(|i| if self.agrees[i] { 1 } else { -1 })
    }

    /// The same circuit traversed the other way round. Loops are unchanged.
    pub fn reversed(&self) -> Circuit {
        if self.edges.len() == 1 {
            return self.clone();
        }
        let len = self.edges.len();
        let mut vertices = Vec::with_capacity(len);
        let mut edges = Vec::with_capacity(len);
        let mut agrees = Vec::with_capacity(len);
        // start stays put; walk edges backwards
        vertices.push(self.vertices[0]);
        for i in (0..len).rev() {
            edges.push(self.edges[i]);
            agrees.push(!self.agrees[i]);
            if i > 0 {
                vertices.push(self.vertices[i]);
            }
        }
        Circuit { vertices, edges, agrees }
    }

    /// Edge indices in ascending order.
    pub fn edge_set(&self) -> Vec<usize> {
        let mut s = self.edges.clone();
        s.sort_unstable();
        s
    }

    pub fn edge_ids<'g>(&self, g: &'g LabelledGraph) -> Vec<&'g str> {
        self.edges.iter().map(|&e| g.edge(e).id.as_str()).collect()
    }
}

/// One fundamental circuit per link, in link order, each traversed along its link.
pub fn fundamental_circuits(g: &LabelledGraph, t: &SpanningTree) -> Vec<Circuit> {
    t.links
        .iter()
        .map(|&c| {
            let edge = g.edge(c);
            if edge.is_loop() {
                return Circuit { vertices: vec![edge.source], edges: vec![c], agrees: vec![true] };
            }
            let (path_edges, path_verts) = t.path(edge.target, edge.source);
            let mut vertices = vec![edge.source, edge.target];
            vertices.extend(&path_verts[..path_verts.len() - 1]);
            let mut edges = vec![c];
            edges.extend(path_edges);
            let agrees = edges
                .iter()
                .zip(&vertices)
                .map(|(&e, &v)| g.edge(e).source == v)
                .collect();
            Circuit { vertices, edges, agrees }
        })
        .collect()
}

/// All circuits of `g`, each once.
///
/// A circuit is reported starting at its smallest vertex and leaving it along
/// the smaller of its two incident circuit edges. Order: by start vertex,
/// loops first, then depth-first over incident edges in id order.
pub fn enumerate_circuits(g: &LabelledGraph, cap: usize) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        for &e in g.incident(s) {
            if g.edge(e).is_loop() {
                push_capped(&mut out, Circuit { vertices: vec![s], edges: vec![e], agrees: vec![true] }, cap)?;
            }
        }
        let mut walk = Walk { start: s, vertices: vec![s], edges: Vec::new() };
        on_path[s] = true;
        dfs(g, &mut walk, &mut on_path, &mut out, cap)?;
        on_path[s] = false;
    }
    Ok(out)
}

struct Walk {
    start: usize,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

fn dfs(
    g: &LabelledGraph,
    walk: &mut Walk,
    on_path: &mut [bool],
    out: &mut Vec<Circuit>,
    cap: usize,
) -> Result<()> {
    let cur = *walk.vertices.last().expect("walk starts non-empty");
    for &e in g.incident(cur) {
        let edge = g.edge(e);
        if edge.is_loop() {
            continue;
        }
        let w = edge.other(cur);
        if w == walk.start {
            if let Some(&first) = walk.edges.first() {
                if e > first {
                    let mut edges = walk.edges.clone();
                    edges.push(e);
                    let agrees =
                        edges.iter().zip(&walk.vertices).map(|(&e, &v)| g.edge(e).source == v).collect();
                    push_capped(out, Circuit { vertices: walk.vertices.clone(), edges, agrees }, cap)?;
                }
            }
        } else if w > walk.start && !on_path[w] {
            on_path[w] = true;
            walk.vertices.push(w);
            walk.edges.push(e);
            dfs(g, walk, on_path, out, cap)?;
            walk.vertices.pop();
            walk.edges.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

fn push_capped(out: &mut Vec<Circuit>, c: Circuit, cap: usize) -> Result<()> {
    if out.len() >= cap {
        return Err(Error::CircuitCapExceeded { cap });
    }
    out.push(c);
    Ok(())
}
