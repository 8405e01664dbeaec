//! The chapters of the guide in `book/`, one module each, so that
//! `cargo test --doc` runs every snippet against the current library. The
//! README comes along too.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/circuit-matrices.md")]
pub mod circuit_matrices {}
#[doc = include_str!("../../../book/src/linear-algebra.md")]
pub mod linear_algebra {}
#[doc = include_str!("../../../book/src/blowups.md")]
pub mod blowups {}
#[doc = include_str!("../../../book/src/labellings.md")]
pub mod labellings {}
#[doc = include_str!("../../../book/src/verdicts.md")]
pub mod verdicts {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/infinite-cycles.md")]
pub mod infinite_cycles {}
