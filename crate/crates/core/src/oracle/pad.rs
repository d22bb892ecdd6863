use super::{EdgeOracle, QueryCounter};
use crate::error::{Error, Result};
use crate::gen::padding_points_to;
use crate::grid::{Direction, EdgeRef, GridShape};

/// Presents an `m x n` edge oracle as `side x side`. Edges between real
/// vertices go to (and are charged on) the base oracle; every edge touching
/// a synthetic vertex follows [`padding_points_to`] for free.
pub struct PaddedEdgeOracle<'a> {
    base: &'a mut dyn EdgeOracle,
    side: usize,
}

impl<'a> PaddedEdgeOracle<'a> {
    pub fn new(base: &'a mut dyn EdgeOracle, side: usize) -> Result<Self> {
        let s = base.shape();
        if side < s.rows.max(s.cols) {
            return Err(Error::InvalidShape(format!("cannot pad {s} down to side {side}")));
        }
        Ok(PaddedEdgeOracle { base, side })
    }

    pub fn real_shape(&self) -> GridShape {
        self.base.shape()
    }
}

impl EdgeOracle for PaddedEdgeOracle<'_> {
    fn shape(&self) -> GridShape {
        GridShape { rows: self.side, cols: self.side }
    }

    fn query_edge(&mut self, e: EdgeRef) -> Result<Direction> {
        self.shape().check_edge(e)?;
        match padding_points_to(self.base.shape(), e.first(), e.second()) {
            Some(forward) => Ok(Direction::forward_if(forward)),
            None => self.base.query_edge(e),
        }
    }

    fn counter(&self) -> QueryCounter {
        self.base.counter()
    }
}
