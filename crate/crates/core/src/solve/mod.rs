//! Sink-finding algorithms.

mod dc;
mod ddim;
mod diagonal;
mod elimination;
mod walk;

use crate::grid::VertexRef;
use crate::oracle::QueryCounter;

pub use dc::{dc_bound, dc_edge_solve, full_scan_solve, k_formula, k_schedule, Branching, KSchedule};
pub use ddim::{ddim_bound, ddim_solve};
pub use diagonal::{diagonal_solve, rectangular_solve};
pub use elimination::{EliminationRecord, EliminationState};
pub use walk::{random_edge_solve, walk_solve, walk_solve_from};

/// A sink together with the queries charged while finding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solution {
    pub sink: VertexRef,
    pub queries: QueryCounter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSolution {
    pub sink: Vec<usize>,
    pub queries: QueryCounter,
}
