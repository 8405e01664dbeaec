//! Decide circuit-coprimality of labelled dual graphs of nodal curves, and with
//! it semi-factoriality of the curve and whether `Pic / cl(e)` is a Néron
//! lft-model.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: labelled multigraphs, spanning trees, circuits, contraction of
//!   infinite edges and blow-up graphs.
//! * [`zlinalg`]: exact integer linear algebra.
//! * [`circuits`]: circuit matrices and their labelled variants.
//! * [`labellings`]: Cartier vertex labellings, the multidegree operator,
//!   component groups and descent along blow-ups.
//! * [`verdict`]: three independent circuit-coprimality deciders and the
//!   resulting verdict.
//! * [`corpus`]: seeded and exhaustive generators of small graphs.

pub mod circuits;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod labellings;
pub mod verdict;
pub mod zlinalg;

pub use error::{Error, Result};
pub use graph::{EdgeLabel, LabelInput, LabelledGraph};
