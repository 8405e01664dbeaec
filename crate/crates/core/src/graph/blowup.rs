use std::collections::HashSet;
use std::sync::Arc;

use super::{EdgeLabel, LabelInput, LabelledGraph};

/// How a base edge runs through a blow-up: the path of vertices and edges
/// (indices in the blow-up graph) from the image of its source to the image of
/// its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// A blow-up graph remembering which vertices are old and which base edge each
/// new edge subdivides.
#[derive(Debug, Clone)]
pub struct BlowupGraph {
    graph: LabelledGraph,
    base: Arc<LabelledGraph>,
    level: u32,
    total: bool,
    base_vertex: Vec<Option<usize>>,
    image: Vec<usize>,
    edge_provenance: Vec<usize>,
    paths: Vec<EdgePath>,
}

impl BlowupGraph {
    /// Level-0 wrapper: the graph itself, every vertex old.
    pub fn identity(g: &LabelledGraph) -> BlowupGraph {
        Self::identity_shared(Arc::new(g.clone()))
    }

    fn identity_shared(base: Arc<LabelledGraph>) -> BlowupGraph {
        let n = base.vertex_count();
        let paths = base
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| EdgePath { vertices: vec![e.source, e.target], edges: vec![i] })
            .collect();
        BlowupGraph {
            graph: (*base).clone(),
            base_vertex: (0..n).map(Some).collect(),
            image: (0..n).collect(),
            edge_provenance: (0..base.edge_count()).collect(),
            paths,
            level: 0,
            total: false,
            base,
        }
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn base(&self) -> &LabelledGraph {
        &self.base
    }

    /// Number of first-blow-up steps applied.
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Whether the chain started with a total blow-up.
    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn is_old(&self, v: usize) -> bool {
        self.base_vertex[v].is_some()
    }

    /// Base vertex that `v` is the image of, if old.
    pub fn base_vertex(&self, v: usize) -> Option<usize> {
        self.base_vertex[v]
    }

    /// Image of a base vertex.
    pub fn image_of(&self, base_vertex: usize) -> usize {
        self.image[base_vertex]
    }

    pub fn old_vertices(&self) -> Vec<usize> {
        (0..self.graph.vertex_count()).filter(|&v| self.is_old(v)).collect()
    }

    pub fn new_vertices(&self) -> Vec<usize> {
        (0..self.graph.vertex_count()).filter(|&v| !self.is_old(v)).collect()
    }

    /// The base edge that blow-up edge `e` lies on.
    pub fn edge_provenance(&self, e: usize) -> usize {
        self.edge_provenance[e]
    }

    /// Paths replacing each base edge, indexed by base edge.
    pub fn paths(&self) -> &[EdgePath] {
        &self.paths
    }

    pub fn is_blowup_of(&self, g: &LabelledGraph) -> bool {
        *self.base == *g
    }

    /// Replace every edge for which `rule` returns a label sequence by a path
    /// with those labels. `names` gives the suffixes for interior vertices.
    fn subdivide<R, N>(&self, rule: R, names: N) -> BlowupGraph
    where
        R: Fn(EdgeLabel) -> Option<Vec<EdgeLabel>>,
        N: Fn(usize, usize) -> String,
    {
        let g = &self.graph;
        let mut used_vertices: HashSet<String> = g.vertices().iter().cloned().collect();
        let mut used_edges: HashSet<String> = g.edges().iter().map(|e| e.id.clone()).collect();
        let fresh = |used: &mut HashSet<String>, mut id: String| {
            while used.contains(&id) {
                id.push('\'');
            }
            used.insert(id.clone());
            id
        };

        let mut vertices: Vec<String> = g.vertices().to_vec();
        let mut edges = Vec::new();
        // per current edge: vertex ids and edge ids along it, source to target
        let mut segments: Vec<(Vec<String>, Vec<String>)> = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let src = g.vertex_id(e.source).to_owned();
            let tgt = g.vertex_id(e.target).to_owned();
            match rule(e.label) {
                None => {
                    edges.push((e.id.clone(), src.clone(), tgt.clone(), LabelInput::from(e.label)));
                    segments.push((vec![src, tgt], vec![e.id.clone()]));
                }
                Some(labels) => {
                    let len = labels.len();
                    let mut vs = vec![src];
                    for i in 1..len {
                        let id = fresh(&mut used_vertices, format!("{}/{}", e.id, names(i, len)));
                        vertices.push(id.clone());
                        vs.push(id);
                    }
                    vs.push(tgt);
                    let mut es = Vec::with_capacity(len);
                    for (i, &l) in labels.iter().enumerate() {
                        let id = fresh(&mut used_edges, format!("{}/{}", e.id, i + 1));
                        edges.push((id.clone(), vs[i].clone(), vs[i + 1].clone(), LabelInput::from(l)));
                        es.push(id);
                    }
                    segments.push((vs, es));
                }
            }
        }
        let new = LabelledGraph::from_parts(vertices, edges).expect("subdivision of a valid graph is valid");

        let vidx = |id: &str| new.vertex_index(id).expect("vertex present");
        let eidx = |id: &str| new.edge_index(id).expect("edge present");
        let segments: Vec<(Vec<usize>, Vec<usize>)> = segments
            .iter()
            .map(|(vs, es)| (vs.iter().map(|v| vidx(v)).collect(), es.iter().map(|e| eidx(e)).collect()))
            .collect();

        let paths = self
            .paths
            .iter()
            .map(|p| {
                let mut vertices = vec![vidx(g.vertex_id(p.vertices[0]))];
                let mut edges = Vec::new();
                for (k, &e) in p.edges.iter().enumerate() {
                    let (sv, se) = &segments[e];
                    if g.edge(e).source == p.vertices[k] {
                        vertices.extend(&sv[1..]);
                        edges.extend(se);
                    } else {
                        vertices.extend(sv[..sv.len() - 1].iter().rev());
                        edges.extend(se.iter().rev());
                    }
                }
                EdgePath { vertices, edges }
            })
            .collect();

        let mut base_vertex = vec![None; new.vertex_count()];
        let image: Vec<usize> =
            self.image.iter().map(|&v| vidx(g.vertex_id(v))).collect();
        for (b, &v) in image.iter().enumerate() {
            base_vertex[v] = Some(b);
        }
        let mut edge_provenance = vec![0; new.edge_count()];
        for (e, (_, se)) in segments.iter().enumerate() {
            for &ne in se {
                edge_provenance[ne] = self.edge_provenance[e];
            }
        }
        BlowupGraph {
            graph: new,
            base: Arc::clone(&self.base),
            level: self.level,
            total: self.total,
            base_vertex,
            image,
            edge_provenance,
            paths,
        }
    }
}

/// One blow-up step: label 1 edges stay, an edge labelled `m >= 2` becomes the
/// path `1, m - 2, 1` (just `1, 1` when `m = 2`), infinity becomes `1, inf, 1`.
pub fn first_blowup(g: &BlowupGraph) -> BlowupGraph {
    let mut out = g.subdivide(
        |l| match l.value() {
            Some(1) => None,
            Some(2) => Some(vec![EdgeLabel::ONE, EdgeLabel::ONE]),
            Some(m) => Some(vec![EdgeLabel::ONE, EdgeLabel::finite(m - 2).expect("m >= 3"), EdgeLabel::ONE]),
            None => Some(vec![EdgeLabel::ONE, EdgeLabel::INFINITY, EdgeLabel::ONE]),
        },
        |i, _| if i == 1 { "a".into() } else { "b".into() },
    );
    out.level += 1;
    out
}

/// The `n`-th blow-up graph.
pub fn nth_blowup(g: &LabelledGraph, n: u32) -> BlowupGraph {
    let mut b = BlowupGraph::identity(g);
    for _ in 0..n {
        b = first_blowup(&b);
    }
    b
}

/// Replace each finite edge of label `m` by a path of `m` unit edges; infinite
/// edges stay.
pub fn total_blowup(g: &LabelledGraph) -> BlowupGraph {
    let base = BlowupGraph::identity(g);
    let mut out = base.subdivide(
        |l| match l.value() {
            Some(m) if m >= 2 => Some(vec![EdgeLabel::ONE; m as usize]),
            _ => None,
        },
        |i, _| format!("p{i}"),
    );
    out.total = true;
    out
}
