//! Sink finding on grid unique sink orientations.
//!
//! A grid USO orients the Cartesian product `K_m x K_n` (or a product of
//! `d` complete graphs) so that every nonempty subgrid has exactly one
//! sink. This crate provides explicit grids and validators, instance
//! generators, countable vertex- and edge-query oracles (including an
//! adaptive lower-bound adversary), and the solvers.

mod digraph;

pub mod ddim;
pub mod error;
pub mod gen;
pub mod grid;
pub mod json;
pub mod oracle;
pub mod report;
pub mod solve;

pub use ddim::{DGridShape, DOrientedGrid};
pub use error::{Error, Result};
pub use grid::{Direction, EdgeRef, GridShape, Orientation, OrientedGrid, ValueMatrix, Verdict, VertexRef, Violation};
pub use oracle::{EdgeOracle, QueryCounter, VertexAnswer, VertexOracle};
