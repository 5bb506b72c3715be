//! ordercraft: a finite-scale workbench for well-quasi-order combinatorics.
//!
//! The crate materializes the classical constructions around wqo theory at
//! desk scale — finite posets with their derived orders (products,
//! lexicographic sums, sequence embeddability, down-set lattices, domination
//! orders, Rado truncations), the Dress-Schiffels finite-support product,
//! Nash-Williams barrier combinatorics with finite Ramsey extraction,
//! Hausdorff-style spine decompositions of FAC posets, and a backward
//! coverability checker for guarded vector addition systems built on the
//! same minimal-antichain machinery.
//!
//! Start from [`poset::Poset`]; every other module consumes it. The
//! `examples/` directory holds one runnable walkthrough per capability, and
//! the `ordercraft` binary exposes the same operations as subcommands.

mod bits;

pub mod barrier;
pub mod construct;
pub mod corpus;
pub mod cover;
pub mod downsets;
pub mod ds;
pub mod error;
pub mod io;
pub mod poset;
pub mod seq;
pub mod structure;
pub mod suite;

pub use error::{Error, Result};
pub use poset::{BuildMode, Cones, ElemId, ElementSequence, Poset, PosetMap};

/// Default element-count cap for the exponential constructions. The
/// `ORDERCRAFT_CAP` environment variable and the `--cap` flag override it
/// in the CLI.
pub const DEFAULT_CAP: usize = 1 << 20;
