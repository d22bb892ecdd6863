//! Row/column elimination bookkeeping.
//!
//! A queried non-sink vertex `v` is the sink of the subgrid `I_v x J_v`,
//! where `I_v` is `row(v)` plus every row whose vertex in `v`'s column
//! points to `v`, and `J_v` is the analogue over columns. No vertex of that
//! subgrid can be the global sink.

use crate::error::{Error, Result};
use crate::grid::{GridShape, VertexRef};
use crate::oracle::VertexAnswer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationRecord {
    pub vertex: VertexRef,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl EliminationRecord {
    /// Built from direct incoming edges of the answer only.
    pub fn from_answer(a: &VertexAnswer) -> Self {
        let v = a.vertex;
        let mut rows = vec![v.row];
        let mut cols = vec![v.col];
        for w in &a.incoming {
            if w.col == v.col {
                rows.push(w.row);
            } else {
                cols.push(w.col);
            }
        }
        rows.sort_unstable();
        cols.sort_unstable();
        EliminationRecord { vertex: v, rows, cols }
    }
}

/// Active subgrid, eliminated vertices and the queried vertex per active
/// line.
#[derive(Clone, Debug)]
pub struct EliminationState {
    shape: GridShape,
    active_rows: Vec<bool>,
    active_cols: Vec<bool>,
    eliminated: Vec<bool>,
    // column of the queried vertex in each active row, and vice versa
    row_query: Vec<Option<usize>>,
    col_query: Vec<Option<usize>>,
    records: Vec<EliminationRecord>,
    sink: Option<VertexRef>,
}

impl EliminationState {
    pub fn new(shape: GridShape) -> Self {
        EliminationState {
            shape,
            active_rows: vec![true; shape.rows],
            active_cols: vec![true; shape.cols],
            eliminated: vec![false; shape.vertex_count()],
            row_query: vec![None; shape.rows],
            col_query: vec![None; shape.cols],
            records: Vec::new(),
            sink: None,
        }
    }

    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn sink(&self) -> Option<VertexRef> {
        self.sink
    }

    pub fn records(&self) -> &[EliminationRecord] {
        &self.records
    }

    pub fn is_eliminated(&self, v: VertexRef) -> bool {
        self.eliminated[self.shape.index(v)]
    }

    pub fn active_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.shape.rows).filter(|&r| self.active_rows[r])
    }

    pub fn active_cols(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.shape.cols).filter(|&c| self.active_cols[c])
    }

    /// Column of the queried vertex in active row `r`.
    pub fn queried_in_row(&self, r: usize) -> Option<usize> {
        self.row_query[r]
    }

    /// Row of the queried vertex in active column `c`.
    pub fn queried_in_col(&self, c: usize) -> Option<usize> {
        self.col_query[c]
    }

    pub fn note_query(&mut self, a: &VertexAnswer) -> Result<()> {
        let v = a.vertex;
        self.shape.check(v)?;
        if !self.active_rows[v.row] || !self.active_cols[v.col] {
            return Err(Error::Inconsistent(format!("query {v} lies outside the active subgrid")));
        }
        if self.row_query[v.row].is_some_and(|c| c != v.col) || self.col_query[v.col].is_some_and(|r| r != v.row) {
            return Err(Error::Inconsistent(format!("query {v} shares an active line with an earlier query")));
        }
        self.row_query[v.row] = Some(v.col);
        self.col_query[v.col] = Some(v.row);
        if a.is_sink() {
            self.sink = Some(v);
            return Ok(());
        }
        let rec = EliminationRecord::from_answer(a);
        for &r in &rec.rows {
            for &c in &rec.cols {
                let idx = self.shape.index(VertexRef::new(r, c));
                self.eliminated[idx] = true;
            }
        }
        self.records.push(rec);
        Ok(())
    }

    /// Whether row `r` is eliminated at every active column.
    pub fn fully_eliminated_row(&self, r: usize) -> bool {
        self.active_cols().all(|c| self.is_eliminated(VertexRef::new(r, c)))
    }

    /// Whether column `c` is eliminated at every active row.
    pub fn fully_eliminated_col(&self, c: usize) -> bool {
        self.active_rows().all(|r| self.is_eliminated(VertexRef::new(r, c)))
    }

    /// Lowest fully eliminated active row and column; `None` once the sink
    /// has been found or when no such pair exists.
    pub fn eliminated_lines(&self) -> Option<(usize, usize)> {
        if self.sink.is_some() {
            return None;
        }
        let r = self.active_rows().find(|&r| self.fully_eliminated_row(r))?;
        let c = self.active_cols().find(|&c| self.fully_eliminated_col(c))?;
        Some((r, c))
    }

    pub fn deactivate_row(&mut self, r: usize) {
        self.active_rows[r] = false;
        if let Some(c) = self.row_query[r].take() {
            self.col_query[c] = None;
        }
    }

    pub fn deactivate_col(&mut self, c: usize) {
        self.active_cols[c] = false;
        if let Some(r) = self.col_query[c].take() {
            self.row_query[r] = None;
        }
    }
}
