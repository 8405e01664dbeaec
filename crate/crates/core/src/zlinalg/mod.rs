//! Exact integer linear algebra: Smith and Hermite normal forms, integer
//! solutions of linear systems and congruence-defined lattices.

mod dense;
mod lattice;
mod matrix;
mod snf;

pub use lattice::{congruence_lattice, hnf, image_lattice, kernel, Congruence, LatticeBasis, Modulus};
pub use matrix::{IntMatrix, MatrixParseError};
pub use snf::{coker_invariants, rank, snf, solve_diophantine, SnfDecomposition};
