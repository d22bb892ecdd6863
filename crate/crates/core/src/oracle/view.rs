use std::ops::Range;

use super::{EdgeOracle, QueryCounter, VertexAnswer, VertexOracle};
use crate::error::{Error, Result};
use crate::grid::{Direction, EdgeRef, GridShape, VertexRef};

/// Edge oracle restricted to the contiguous block `rows x cols` of a base
/// oracle, re-indexed from zero. Costs accrue on the base counter.
pub struct SubgridEdgeOracle<'a> {
    base: &'a mut dyn EdgeOracle,
    rows: Range<usize>,
    cols: Range<usize>,
}

impl<'a> SubgridEdgeOracle<'a> {
    pub fn new(base: &'a mut dyn EdgeOracle, rows: Range<usize>, cols: Range<usize>) -> Result<Self> {
        let outer = base.shape();
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::EmptySelection);
        }
        if rows.end > outer.rows || cols.end > outer.cols {
            return Err(Error::OutOfBounds {
                vertex: VertexRef::new(rows.end - 1, cols.end - 1),
                rows: outer.rows,
                cols: outer.cols,
            });
        }
        Ok(SubgridEdgeOracle { base, rows, cols })
    }

    pub fn to_base(&self, v: VertexRef) -> VertexRef {
        VertexRef::new(self.rows.start + v.row, self.cols.start + v.col)
    }
}

impl EdgeOracle for SubgridEdgeOracle<'_> {
    fn shape(&self) -> GridShape {
        GridShape { rows: self.rows.len(), cols: self.cols.len() }
    }

    fn query_edge(&mut self, e: EdgeRef) -> Result<Direction> {
        self.shape().check_edge(e)?;
        // the offset map is monotone, so canonical order is preserved
        let outer = EdgeRef::new(self.to_base(e.first()), self.to_base(e.second()))?;
        self.base.query_edge(outer)
    }

    fn counter(&self) -> QueryCounter {
        self.base.counter()
    }
}

/// The transposed view of a vertex oracle: row `i` of the view is column
/// `i` of the base.
pub struct TransposedVertexOracle<'a> {
    base: &'a mut dyn VertexOracle,
}

impl<'a> TransposedVertexOracle<'a> {
    pub fn new(base: &'a mut dyn VertexOracle) -> Self {
        TransposedVertexOracle { base }
    }
}

impl VertexOracle for TransposedVertexOracle<'_> {
    fn shape(&self) -> GridShape {
        self.base.shape().transpose()
    }

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer> {
        let a = self.base.query(v.transpose())?;
        let shape = self.shape();
        let outgoing: Vec<VertexRef> = a.outgoing.iter().map(|w| w.transpose()).collect();
        VertexAnswer::from_fn(shape, v, |w| Ok(outgoing.contains(&w)))
    }

    fn counter(&self) -> QueryCounter {
        self.base.counter()
    }
}
