use thiserror::Error;

use crate::grid::VertexRef;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("vertex {vertex} is outside a {rows}x{cols} grid")]
    OutOfBounds {
        vertex: VertexRef,
        rows: usize,
        cols: usize,
    },

    #[error("invalid edge {0}--{1}: endpoints must be distinct and share a row or a column")]
    InvalidEdge(VertexRef, VertexRef),

    #[error("invalid coordinate tuple {0:?}")]
    InvalidCoordinate(Vec<usize>),

    #[error("values must be pairwise distinct and finite: {0}")]
    BadValues(String),

    #[error("{what} exceeds the cap ({actual} > {cap})")]
    CapExceeded {
        what: &'static str,
        actual: u128,
        cap: u128,
    },

    #[error("not a unique sink orientation: {0}")]
    NotUso(String),

    #[error("orientation contains a directed cycle of length {}", .0.len())]
    Cyclic(Vec<VertexRef>),

    #[error("empty subgrid selection")]
    EmptySelection,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("oracle inconsistent with a unique sink orientation: {0}")]
    Inconsistent(String),

    #[error("solver returned {got} but the sink is {expected}")]
    SinkMismatch { got: String, expected: String },

    #[error("adversary has not resolved the sink yet")]
    Unresolved,

    #[error("incomplete orientation: {0}")]
    Incomplete(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
