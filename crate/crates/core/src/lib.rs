//! Exact leaky zero forcing.
//!
//! An `l`-forcing set of a graph is an initial set of colored vertices that
//! still colors the whole graph under the zero forcing color-change rule when
//! any `l` vertices are prevented from forcing ("leaks"). This crate computes
//! the minimum size of such a set, `Z_(l)(G)`, exactly by fort-based
//! constraint generation over an in-repo set-multicover branch and bound.
//!
//! Alongside the solver it ships the closed forms known for paths, cycles,
//! complete graphs, wheels, stars, hypercubes and grids, three explicit grid
//! patterns with verifiers, and a brute-force oracle for small graphs.

pub mod brute;
pub mod catalog;
pub mod cover;
pub mod error;
pub mod families;
pub mod forcing;
pub mod format;
pub mod fort;
pub mod graph;
pub mod par;
pub mod solver;
pub mod suites;
pub mod vertex_set;

pub use cover::{CoverInstance, CoverSolution};
pub use error::{Error, Result};
pub use forcing::{closure, verify_l_forcing, Verdict};
pub use fort::Fort;
pub use graph::{build_family, cartesian_product, FamilyKind, FamilySpec, Graph};
pub use par::Execution;
pub use solver::{compute_l_forcing_number, compute_with_redundancy, SolveOptions, SolveResult};
pub use vertex_set::VertexSet;
