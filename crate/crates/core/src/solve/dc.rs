//! Divide and conquer under edge queries.
//!
//! Rows and columns are split into `k` near-equal contiguous blocks. The
//! induced `k x k` grid is solved with the diagonal vertex-query solver,
//! where each induced vertex query recursively solves one block and then
//! edge-queries the `2n - 2` edges at the block sink.

use super::diagonal::{diagonal_solve, rectangular_solve};
use super::Solution;
use crate::error::{Error, Result};
use crate::grid::{GridShape, VertexRef};
use crate::oracle::{EdgeOracle, InducedVertexOracle, PaddedEdgeOracle, PartitionPair, VertexOracle};

/// `2^(2 sqrt(log2 n))` before rounding.
pub fn k_formula(n: usize) -> f64 {
    2f64.powf(2.0 * (n as f64).log2().sqrt())
}

/// Rounded branching factor clamped into `[2, ceil(n / 2)]`.
pub fn k_schedule(n: usize) -> usize {
    clamp_k(k_formula(n).round() as usize, n)
}

fn clamp_k(k: usize, n: usize) -> usize {
    k.min(n.div_ceil(2)).max(2)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Branching {
    Formula,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KSchedule {
    pub branching: Branching,
    /// Sides up to this size are solved by querying every edge.
    pub base_threshold: usize,
    pub constant: f64,
}

impl Default for KSchedule {
    fn default() -> Self {
        KSchedule { branching: Branching::Formula, base_threshold: 8, constant: 8.0 }
    }
}

impl KSchedule {
    pub fn fixed(k: usize) -> Self {
        KSchedule { branching: Branching::Fixed(k), ..Self::default() }
    }

    pub fn k(&self, n: usize) -> usize {
        match self.branching {
            Branching::Formula => k_schedule(n),
            Branching::Fixed(k) => clamp_k(k, n),
        }
    }

    /// `c * n * 2^(2 sqrt(log2 n))`.
    pub fn bound(&self, n: usize) -> f64 {
        self.constant * n as f64 * k_formula(n)
    }
}

/// Queries every edge and returns the unique vertex without outgoing edges.
pub fn full_scan_solve(o: &mut dyn EdgeOracle) -> Result<Solution> {
    let start = o.counter();
    let sink = full_scan(o)?;
    Ok(Solution { sink, queries: o.counter().since(start) })
}

fn full_scan(o: &mut dyn EdgeOracle) -> Result<VertexRef> {
    let shape = o.shape();
    let mut has_out = vec![false; shape.vertex_count()];
    for e in shape.edges() {
        let d = o.query_edge(e)?;
        has_out[shape.index(d.tail(e))] = true;
    }
    let mut sinks = shape.vertices().filter(|v| !has_out[shape.index(*v)]);
    match (sinks.next(), sinks.next()) {
        (Some(s), None) => Ok(s),
        (None, _) => Err(Error::Inconsistent("no vertex without outgoing edges".into())),
        (Some(_), Some(_)) => Err(Error::Inconsistent("more than one vertex without outgoing edges".into())),
    }
}

fn solve_block(o: &mut dyn EdgeOracle, schedule: &KSchedule) -> Result<VertexRef> {
    let shape = o.shape();
    let side = shape.rows.max(shape.cols);
    if side <= schedule.base_threshold || shape.rows.min(shape.cols) < 2 {
        return full_scan(o);
    }
    let k = schedule.k(side);
    let parts = PartitionPair::even(shape, k.min(shape.rows), k.min(shape.cols))?;
    let mut recurse = |view: &mut dyn EdgeOracle| solve_block(view, schedule);
    let mut h = InducedVertexOracle::new(o, parts, &mut recurse)?;
    let top = if h.shape().is_square() { diagonal_solve(&mut h)? } else { rectangular_solve(&mut h)? };
    h.block_sink(top.sink)
        .ok_or_else(|| Error::Inconsistent("induced sink was never queried".into()))
}

/// Edge-query solver. Rectangular inputs are padded to a square first; the
/// synthetic part is answered for free.
pub fn dc_edge_solve(o: &mut dyn EdgeOracle, schedule: &KSchedule) -> Result<Solution> {
    let shape = o.shape();
    let start = o.counter();
    let sink = if shape.is_square() {
        solve_block(o, schedule)?
    } else {
        let side = shape.rows.max(shape.cols);
        let mut padded = PaddedEdgeOracle::new(o, side)?;
        let s = solve_block(&mut padded, schedule)?;
        if !shape.contains(s) {
            return Err(Error::Inconsistent(format!("padded instance has its sink at synthetic vertex {s}")));
        }
        s
    };
    Ok(Solution { sink, queries: o.counter().since(start) })
}

/// Bound for an `m x n` instance, taken at the padded side.
pub fn dc_bound(shape: GridShape, schedule: &KSchedule) -> f64 {
    schedule.bound(shape.rows.max(shape.cols))
}
