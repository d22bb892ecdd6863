//! Adaptive adversary for the vertex-query lower bound `m + n - 1`.
//!
//! No instance is fixed up front. The first query that lands in a fresh row
//! freezes that row: the queried vertex becomes the row's sink and the whole
//! row points into every row that is not frozen yet, so the query rules out
//! exactly that row. Once a single fresh row is left, each new query there is
//! answered as larger than every unqueried vertex of the row; the last
//! unqueried vertex is the global sink. Any solver therefore spends at least
//! `m - 1` queries freezing rows and `n` queries in the final row.

use std::collections::HashMap;

use super::{QueryCounter, Transcript, TranscriptEntry, VertexAnswer, VertexOracle};
use crate::error::{Error, Result};
use crate::grid::{GridShape, OrientedGrid, ValueMatrix, VertexRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Row {
    Fresh,
    Frozen { order: usize, sink_col: usize },
}

pub struct AdversaryVertexOracle {
    shape: GridShape,
    rows: Vec<Row>,
    frozen: usize,
    final_row: Option<usize>,
    // columns of the final row in query order
    final_queried: Vec<usize>,
    sink: Option<VertexRef>,
    cache: HashMap<VertexRef, VertexAnswer>,
    counter: QueryCounter,
    transcript: Transcript,
}

impl AdversaryVertexOracle {
    pub fn new(shape: GridShape) -> Self {
        AdversaryVertexOracle {
            shape,
            rows: vec![Row::Fresh; shape.rows],
            frozen: 0,
            final_row: None,
            final_queried: Vec::new(),
            sink: None,
            cache: HashMap::new(),
            counter: QueryCounter::default(),
            transcript: Transcript::default(),
        }
    }

    pub fn sink(&self) -> Option<VertexRef> {
        self.sink
    }

    /// The row left over after all others froze, once it has been reached.
    pub fn final_row(&self) -> Option<usize> {
        self.final_row
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    // Within a frozen row the sink is minimal and the rest ascend by column.
    fn rank_in_frozen_row(sink_col: usize, col: usize) -> usize {
        if col == sink_col {
            0
        } else {
            col + 1
        }
    }

    fn freeze_order(&self, row: usize) -> Option<usize> {
        match self.rows[row] {
            Row::Frozen { order, .. } => Some(order),
            Row::Fresh => None,
        }
    }

    /// Value matrix realizing every answer given so far: frozen rows occupy
    /// descending value bands in freeze order, and the final row descends in
    /// query order down to the sink.
    pub fn materialize_values(&self) -> Result<ValueMatrix> {
        if self.sink.is_none() {
            return Err(Error::Unresolved);
        }
        let (m, n) = (self.shape.rows, self.shape.cols);
        let band = n + 1;
        let values = self
            .shape
            .vertices()
            .map(|v| match self.rows[v.row] {
                Row::Frozen { order, sink_col } => {
                    ((m - order) * band + Self::rank_in_frozen_row(sink_col, v.col)) as f64
                }
                Row::Fresh => {
                    let pos = self.final_queried.iter().position(|&c| c == v.col).expect("final row fully queried");
                    (n - 1 - pos) as f64
                }
            })
            .collect();
        ValueMatrix::new(self.shape, values)
    }

    pub fn materialize(&self) -> Result<OrientedGrid> {
        Ok(self.materialize_values()?.orient())
    }

    fn answer(&mut self, v: VertexRef) -> VertexAnswer {
        let fresh_rows = self.shape.rows - self.frozen;
        if self.rows[v.row] == Row::Fresh && fresh_rows >= 2 {
            self.rows[v.row] = Row::Frozen { order: self.frozen, sink_col: v.col };
            self.frozen += 1;
        }
        match self.rows[v.row] {
            Row::Frozen { order, sink_col } => {
                let own = Self::rank_in_frozen_row(sink_col, v.col);
                VertexAnswer::from_fn(self.shape, v, |w| {
                    Ok(if w.row == v.row {
                        own > Self::rank_in_frozen_row(sink_col, w.col)
                    } else {
                        // earlier-frozen rows point in; everything else is below
                        self.freeze_order(w.row).is_none_or(|o| o > order)
                    })
                })
                .expect("infallible")
            }
            Row::Fresh => {
                self.final_row = Some(v.row);
                let queried_before = self.final_queried.clone();
                self.final_queried.push(v.col);
                if self.final_queried.len() == self.shape.cols {
                    self.sink = Some(v);
                }
                VertexAnswer::from_fn(self.shape, v, |w| {
                    Ok(w.row == v.row && !queried_before.contains(&w.col))
                })
                .expect("infallible")
            }
        }
    }
}

impl VertexOracle for AdversaryVertexOracle {
    fn shape(&self) -> GridShape {
        self.shape
    }

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer> {
        self.shape.check(v)?;
        if let Some(a) = self.cache.get(&v) {
            return Ok(a.clone());
        }
        let a = self.answer(v);
        self.counter.vertex += 1;
        self.transcript.push(TranscriptEntry::Vertex(a.clone()));
        self.cache.insert(v, a.clone());
        Ok(a)
    }

    fn counter(&self) -> QueryCounter {
        self.counter
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::ExplicitVertexOracle;

    fn check_consistent(adv: &AdversaryVertexOracle) {
        let g = adv.materialize().unwrap();
        if g.shape().size() <= crate::grid::DEFAULT_VALIDATION_CAP {
            assert!(g.validate_uso().unwrap().is_uso());
        }
        assert_eq!(g.brute_force_sink().unwrap(), adv.sink().unwrap());
        let mut replay = ExplicitVertexOracle::new(&g);
        assert_eq!(adv.transcript().replay_vertices(&mut replay).unwrap(), None);
    }

    #[test]
    fn one_by_one() {
        let mut adv = AdversaryVertexOracle::new(GridShape::new(1, 1).unwrap());
        assert!(adv.query(VertexRef::new(0, 0)).unwrap().is_sink());
        assert_eq!(adv.counter().vertex, 1);
        check_consistent(&adv);
    }

    /// Every query order on 2x2 needs three queries before a sink shows up.
    #[test]
    fn two_by_two_forces_three() {
        let shape = GridShape::square(2).unwrap();
        let all: Vec<VertexRef> = shape.vertices().collect();
        let mut orders = Vec::new();
        permute(&mut all.clone(), 0, &mut orders);
        for order in orders {
            let mut adv = AdversaryVertexOracle::new(shape);
            let mut used = 0;
            for &v in &order {
                used += 1;
                if adv.query(v).unwrap().is_sink() {
                    break;
                }
            }
            assert!(used >= 3, "{order:?}");
            check_consistent(&adv);
        }
    }

    fn permute(items: &mut Vec<VertexRef>, k: usize, out: &mut Vec<Vec<VertexRef>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, out);
            items.swap(k, i);
        }
    }

    #[test]
    fn materialize_before_sink_fails() {
        let mut adv = AdversaryVertexOracle::new(GridShape::new(3, 4).unwrap());
        adv.query(VertexRef::new(1, 2)).unwrap();
        assert!(matches!(adv.materialize(), Err(Error::Unresolved)));
    }

    #[test]
    fn row_major_scan_is_consistent() {
        let shape = GridShape::new(3, 4).unwrap();
        let mut adv = AdversaryVertexOracle::new(shape);
        for v in shape.vertices() {
            if adv.query(v).unwrap().is_sink() {
                break;
            }
        }
        // row 1 and row 2 freeze on their first query; row 3 needs all 4
        assert_eq!(adv.sink(), Some(VertexRef::new(2, 3)));
        check_consistent(&adv);
    }

    #[test]
    fn revisiting_frozen_rows_is_consistent() {
        let shape = GridShape::new(4, 3).unwrap();
        let mut adv = AdversaryVertexOracle::new(shape);
        let order = [(2, 1), (2, 0), (0, 2), (2, 2), (0, 0), (3, 1), (1, 0), (1, 1), (1, 2)];
        for (i, j) in order {
            adv.query(VertexRef::new(i, j)).unwrap();
        }
        assert_eq!(adv.sink(), Some(VertexRef::new(1, 2)));
        check_consistent(&adv);
    }
}
