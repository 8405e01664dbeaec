use super::{Edge, LabelledGraph};

/// Result of contracting all infinite edges.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: LabelledGraph,
    /// For each original vertex, its image in `graph`.
    pub vertex_map: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Contract every edge labelled by infinity.
///
/// Each class of merged vertices keeps the smallest id among its members. All
/// infinite edges disappear; finite edges keep their ids and may become loops.
pub fn contract_infinite(g: &LabelledGraph) -> Contraction {
    let n = g.vertex_count();
    if !g.has_infinite_edges() {
        return Contraction { graph: g.clone(), vertex_map: (0..n).collect() };
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in g.edges().iter().filter(|e| e.label.is_infinite()) {
        let a = find(&mut parent, e.source);
        let b = find(&mut parent, e.target);
        // keep the smaller index as root so representatives are smallest ids
        if a < b {
            parent[b] = a;
        } else {
            parent[a] = b;
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut new_index = vec![usize::MAX; n];
    let mut vertices = Vec::new();
    for v in 0..n {
        if roots[v] == v {
            new_index[v] = vertices.len();
            vertices.push(g.vertex_id(v).to_owned());
        }
    }
    let vertex_map: Vec<usize> = roots.iter().map(|&r| new_index[r]).collect();
    let edges = g
        .edges()
        .iter()
        .filter(|e| !e.label.is_infinite())
        .map(|e| Edge {
            id: e.id.clone(),
            source: vertex_map[e.source],
            target: vertex_map[e.target],
            label: e.label,
        })
        .collect();
    // representatives keep relative order and edges keep theirs, so sortedness holds
    let graph = LabelledGraph::assemble(vertices, edges);
    Contraction { graph, vertex_map }
}
