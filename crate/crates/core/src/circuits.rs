//! Circuit matrices `M_G`, fundamental circuit matrices `N_G`, their labelled
//! variants `M_(G,l) = M_G L`, and the right-hand sides `b(e)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{enumerate_circuits, fundamental_circuits, Circuit, LabelledGraph, SpanningTree};
use crate::zlinalg::IntMatrix;

/// Default limit on the number of circuits enumerated for `M_G`.
pub const DEFAULT_CIRCUIT_CAP: usize = 10_000;

/// A circuit matrix together with the row and column orders used to build it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitMatrixBundle {
    /// One circuit per row.
    pub circuits: Vec<Circuit>,
    /// Edge ids, one per column, in the graph's edge order.
    pub edge_ids: Vec<String>,
    pub matrix: IntMatrix,
    pub labelled: bool,
}

impl CircuitMatrixBundle {
    /// The matrix with columns permuted so that `first` come first, followed
    /// by the remaining columns in edge order. Returns the column order used.
    pub fn permuted_view(&self, first: &[usize]) -> (Vec<usize>, IntMatrix) {
        let mut order = first.to_vec();
        order.extend((0..self.edge_ids.len()).filter(|j| !first.contains(j)));
        let m = self.matrix.select_cols(&order);
        (order, m)
    }

    /// For a fundamental matrix over `t`: the links-first view `[I_r | N']`
    /// (scaled by link labels in the labelled case).
    pub fn links_first(&self, t: &SpanningTree) -> (Vec<usize>, IntMatrix) {
        self.permuted_view(t.links())
    }
}

/// The matrix whose row `i` has entry `+1`/`-1` at each edge of circuit `i`
/// traversed along/against its orientation, times the edge label if
/// `labelled`.
pub fn circuit_matrix_for(g: &LabelledGraph, circuits: &[Circuit], labelled: bool) -> Result<CircuitMatrixBundle> {
    if labelled {
        if let Some(e) = g.edges().iter().find(|e| e.label.is_infinite()) {
            return Err(Error::InfiniteLabelPresent(e.id.clone()));
        }
    }
    let mut matrix = IntMatrix::zeros(circuits.len(), g.edge_count());
    for (i, c) in circuits.iter().enumerate() {
        for (&e, &agrees) in c.edges().iter().zip(c.agreements()) {
            let sign: i64 = if agrees { 1 } else { -1 };
            let scale = if labelled { g.edge(e).label.value().unwrap_or(1) } else { 1 };
            matrix[(i, e)] = BigInt::from(sign) * BigInt::from(scale);
        }
    }
    Ok(CircuitMatrixBundle {
        circuits: circuits.to_vec(),
        edge_ids: g.edges().iter().map(|e| e.id.clone()).collect(),
        matrix,
        labelled,
    })
}

/// `M_G` (or `M_(G,l)`) over all circuits in canonical order.
pub fn circuit_matrix(g: &LabelledGraph, labelled: bool, cap: usize) -> Result<CircuitMatrixBundle> {
    if labelled {
        if let Some(e) = g.edges().iter().find(|e| e.label.is_infinite()) {
            return Err(Error::InfiniteLabelPresent(e.id.clone()));
        }
    }
    let circuits = enumerate_circuits(g, cap)?;
    circuit_matrix_for(g, &circuits, labelled)
}

/// `N_G` (or `N_(G,l)`) over the fundamental circuits of `t`, rows in link order.
pub fn fundamental_circuit_matrix(g: &LabelledGraph, t: &SpanningTree, labelled: bool) -> Result<CircuitMatrixBundle> {
    circuit_matrix_for(g, &fundamental_circuits(g, t), labelled)
}

/// `b(e)`: per circuit, `-1` if `e` is traversed along its orientation, `+1`
/// if against it, `0` if absent.
pub fn rhs_vector(g: &LabelledGraph, edge_id: &str, circuits: &[Circuit]) -> Result<Vec<BigInt>> {
    let e = g.edge_index(edge_id).ok_or_else(|| Error::UnknownEdge(edge_id.into()))?;
    Ok(circuits
        .iter()
        .map(|c| BigInt::from(c.sign_of(e).map_or(0, |s| -s)))
        .collect())
}
