//! Induced grid over a row/column partition.
//!
//! With rows split into blocks `P_1..P_k` and columns into `Q_1..Q_l`, the
//! induced `(k, l)`-grid `H` has one vertex per block `P_i x Q_j`. Block `x`
//! points to an adjacent block `y` iff the sink of `x` has at least one
//! outgoing edge into `y`. `H` is again a USO and its sink is the block that
//! holds the sink of the base grid.

use std::collections::HashMap;
use std::ops::Range;

use super::{EdgeOracle, QueryCounter, SubgridEdgeOracle, VertexAnswer, VertexOracle};
use crate::error::{Error, Result};
use crate::grid::{Direction, GridShape, Orientation, OrientedGrid, VertexRef};

/// Contiguous partitions of the row and column index ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionPair {
    rows: Vec<Range<usize>>,
    cols: Vec<Range<usize>>,
    row_block: Vec<usize>,
    col_block: Vec<usize>,
}

impl PartitionPair {
    /// Blocks of the given sizes, in order.
    pub fn from_sizes(row_sizes: &[usize], col_sizes: &[usize]) -> Result<Self> {
        fn ranges(sizes: &[usize]) -> Result<(Vec<Range<usize>>, Vec<usize>)> {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Error::InvalidPartition(format!("block sizes {sizes:?} must be nonempty and positive")));
            }
            let mut out = Vec::with_capacity(sizes.len());
            let mut owner = Vec::new();
            let mut start = 0;
            for (b, &s) in sizes.iter().enumerate() {
                out.push(start..start + s);
                owner.extend(std::iter::repeat_n(b, s));
                start += s;
            }
            Ok((out, owner))
        }
        let (rows, row_block) = ranges(row_sizes)?;
        let (cols, col_block) = ranges(col_sizes)?;
        Ok(PartitionPair { rows, cols, row_block, col_block })
    }

    /// `k_rows x k_cols` blocks whose sizes differ by at most one, larger
    /// blocks first.
    pub fn even(shape: GridShape, k_rows: usize, k_cols: usize) -> Result<Self> {
        fn sizes(total: usize, k: usize) -> Result<Vec<usize>> {
            if k == 0 || k > total {
                return Err(Error::InvalidPartition(format!("cannot split {total} into {k} nonempty blocks")));
            }
            let (base, extra) = (total / k, total % k);
            Ok((0..k).map(|b| base + usize::from(b < extra)).collect())
        }
        Self::from_sizes(&sizes(shape.rows, k_rows)?, &sizes(shape.cols, k_cols)?)
    }

    pub fn singletons(shape: GridShape) -> Self {
        Self::even(shape, shape.rows, shape.cols).expect("valid")
    }

    pub fn whole(shape: GridShape) -> Self {
        Self::even(shape, 1, 1).expect("valid")
    }

    /// Shape of the partitioned base grid.
    pub fn base_shape(&self) -> GridShape {
        GridShape { rows: self.row_block.len(), cols: self.col_block.len() }
    }

    /// Shape of the induced grid, `k x l`.
    pub fn block_shape(&self) -> GridShape {
        GridShape { rows: self.rows.len(), cols: self.cols.len() }
    }

    pub fn row_range(&self, block: usize) -> Range<usize> {
        self.rows[block].clone()
    }

    pub fn col_range(&self, block: usize) -> Range<usize> {
        self.cols[block].clone()
    }

    pub fn block_of(&self, v: VertexRef) -> VertexRef {
        VertexRef::new(self.row_block[v.row], self.col_block[v.col])
    }
}

/// Finds the sink of one block using only edge queries inside the block.
pub type BlockSolver<'s> = dyn FnMut(&mut dyn EdgeOracle) -> Result<VertexRef> + 's;

/// Vertex oracle over the induced grid `H`, implemented with edge queries on
/// the base grid. A query on block `x` solves `x` with the block solver and
/// then edge-queries every base edge at the block sink.
pub struct InducedVertexOracle<'a, 's> {
    base: &'a mut dyn EdgeOracle,
    parts: PartitionPair,
    solver: &'s mut BlockSolver<'s>,
    cache: HashMap<VertexRef, VertexAnswer>,
    block_sinks: HashMap<VertexRef, VertexRef>,
    queries: u64,
}

impl<'a, 's> InducedVertexOracle<'a, 's> {
    pub fn new(base: &'a mut dyn EdgeOracle, parts: PartitionPair, solver: &'s mut BlockSolver<'s>) -> Result<Self> {
        if parts.base_shape() != base.shape() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} but the oracle is {}",
                parts.base_shape(),
                base.shape()
            )));
        }
        Ok(InducedVertexOracle {
            base,
            parts,
            solver,
            cache: HashMap::new(),
            block_sinks: HashMap::new(),
            queries: 0,
        })
    }

    /// Base-grid sink of block `x`, if `x` has been queried.
    pub fn block_sink(&self, x: VertexRef) -> Option<VertexRef> {
        self.block_sinks.get(&x).copied()
    }

    pub fn partition(&self) -> &PartitionPair {
        &self.parts
    }
}

impl VertexOracle for InducedVertexOracle<'_, '_> {
    fn shape(&self) -> GridShape {
        self.parts.block_shape()
    }

    fn query(&mut self, x: VertexRef) -> Result<VertexAnswer> {
        self.shape().check(x)?;
        if let Some(a) = self.cache.get(&x) {
            return Ok(a.clone());
        }
        let (rows, cols) = (self.parts.row_range(x.row), self.parts.col_range(x.col));
        let local = {
            let mut view = SubgridEdgeOracle::new(&mut *self.base, rows.clone(), cols.clone())?;
            let local = (self.solver)(&mut view)?;
            view.shape().check(local)?;
            local
        };
        let sink = VertexRef::new(rows.start + local.row, cols.start + local.col);

        let base_shape = self.base.shape();
        let h = self.parts.block_shape();
        let mut out_row_blocks = vec![false; h.cols];
        let mut out_col_blocks = vec![false; h.rows];
        for w in base_shape.neighbors(sink) {
            if !self.base.points_to(sink, w)? {
                continue;
            }
            let y = self.parts.block_of(w);
            if y == x {
                return Err(Error::Inconsistent(format!("block solver returned {sink}, which is not the sink of its block")));
            }
            if w.row == sink.row {
                out_row_blocks[y.col] = true;
            } else {
                out_col_blocks[y.row] = true;
            }
        }
        let answer = VertexAnswer::from_fn(h, x, |y| {
            Ok(if y.row == x.row { out_row_blocks[y.col] } else { out_col_blocks[y.row] })
        })?;
        self.queries += 1;
        self.block_sinks.insert(x, sink);
        self.cache.insert(x, answer.clone());
        Ok(answer)
    }

    fn counter(&self) -> QueryCounter {
        QueryCounter { vertex: self.queries, edge: self.base.counter().edge }
    }
}

fn block_sinks(grid: &OrientedGrid, parts: &PartitionPair) -> Result<HashMap<VertexRef, VertexRef>> {
    let mut sinks = HashMap::new();
    for x in parts.block_shape().vertices() {
        let rows: Vec<usize> = parts.row_range(x.row).collect();
        let cols: Vec<usize> = parts.col_range(x.col).collect();
        let (sub, map) = grid.restrict(&rows, &cols)?;
        sinks.insert(x, map.to_parent(sub.brute_force_sink()?));
    }
    Ok(sinks)
}

fn points_into_block(grid: &OrientedGrid, parts: &PartitionPair, u: VertexRef, y: VertexRef) -> bool {
    grid.shape().neighbors(u).any(|w| parts.block_of(w) == y && grid.points_to(u, w))
}

/// Materializes the induced grid from brute-force block sinks, orienting
/// each block edge from the perspective of its canonical first endpoint.
pub fn induced_grid(grid: &OrientedGrid, parts: &PartitionPair) -> Result<OrientedGrid> {
    if parts.base_shape() != grid.shape() {
        return Err(Error::InvalidPartition("partition does not cover the grid".into()));
    }
    let sinks = block_sinks(grid, parts)?;
    Ok(OrientedGrid::from_fn(parts.block_shape(), |e| {
        let (x, y) = (e.first(), e.second());
        Direction::forward_if(points_into_block(grid, parts, sinks[&x], y))
    }))
}

/// Whether the block relation is antisymmetric and total: for every pair of
/// adjacent blocks exactly one block sink points into the other block.
pub fn induced_relation_is_tournament(grid: &OrientedGrid, parts: &PartitionPair) -> Result<bool> {
    let sinks = block_sinks(grid, parts)?;
    Ok(parts.block_shape().edges().all(|e| {
        let (x, y) = (e.first(), e.second());
        points_into_block(grid, parts, sinks[&x], y) != points_into_block(grid, parts, sinks[&y], x)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_one_line;
    use crate::oracle::ExplicitEdgeOracle;

    fn scan_all_edges(o: &mut dyn EdgeOracle) -> Result<VertexRef> {
        let shape = o.shape();
        let mut out = vec![0usize; shape.vertex_count()];
        for e in shape.edges() {
            let d = o.query_edge(e)?;
            out[shape.index(d.tail(e))] += 1;
        }
        let sinks: Vec<VertexRef> = shape.vertices().filter(|v| out[shape.index(*v)] == 0).collect();
        match sinks.as_slice() {
            [s] => Ok(*s),
            _ => Err(Error::Inconsistent("no unique sink".into())),
        }
    }

    #[test]
    fn even_partition_sizes() {
        let p = PartitionPair::even(GridShape::new(7, 5).unwrap(), 3, 2).unwrap();
        assert_eq!((0..3).map(|b| p.row_range(b).len()).collect::<Vec<_>>(), vec![3, 2, 2]);
        assert_eq!((0..2).map(|b| p.col_range(b).len()).collect::<Vec<_>>(), vec![3, 2]);
        assert_eq!(p.block_of(VertexRef::new(3, 3)), VertexRef::new(1, 1));
        assert!(PartitionPair::even(GridShape::new(2, 2).unwrap(), 3, 1).is_err());
        assert!(PartitionPair::from_sizes(&[2, 0], &[1]).is_err());
    }

    #[test]
    fn singleton_blocks_reproduce_the_grid() {
        let vm = gen_one_line(3, 4, 6).unwrap();
        let g = vm.orient();
        let parts = PartitionPair::singletons(g.shape());
        assert_eq!(induced_grid(&g, &parts).unwrap(), g);

        let mut base = ExplicitEdgeOracle::new(&vm);
        let mut solver = scan_all_edges;
        let mut h = InducedVertexOracle::new(&mut base, parts, &mut solver).unwrap();
        for v in g.shape().vertices() {
            let before = h.counter().edge;
            let a = h.query(v).unwrap();
            assert!(h.counter().edge - before <= 1 + 2 + 3);
            let mut out = a.outgoing.clone();
            out.sort();
            let mut want = g.out_neighbors(v).unwrap();
            want.sort();
            assert_eq!(out, want);
        }
    }

    #[test]
    fn whole_block_finds_sink() {
        let vm = gen_one_line(4, 3, 2).unwrap();
        let g = vm.orient();
        let mut base = ExplicitEdgeOracle::new(&vm);
        let mut solver = scan_all_edges;
        let mut h = InducedVertexOracle::new(&mut base, PartitionPair::whole(g.shape()), &mut solver).unwrap();
        assert_eq!(h.shape(), GridShape::new(1, 1).unwrap());
        assert!(h.query(VertexRef::new(0, 0)).unwrap().is_sink());
        assert_eq!(h.block_sink(VertexRef::new(0, 0)), Some(g.brute_force_sink().unwrap()));
    }

    #[test]
    fn lying_block_solver_is_caught() {
        let vm = gen_one_line(4, 4, 2).unwrap();
        let g = vm.orient();
        let sink = g.brute_force_sink().unwrap();
        let parts = PartitionPair::whole(g.shape());
        let mut base = ExplicitEdgeOracle::new(&vm);
        let wrong = VertexRef::new((sink.row + 1) % 4, sink.col);
        let mut solver = move |_: &mut dyn EdgeOracle| Ok(wrong);
        let mut h = InducedVertexOracle::new(&mut base, parts, &mut solver).unwrap();
        assert!(matches!(h.query(VertexRef::new(0, 0)), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn oracle_matches_materialized_grid() {
        for seed in 0..20 {
            let vm = gen_one_line(7, 6, seed).unwrap();
            let g = vm.orient();
            let parts = PartitionPair::even(g.shape(), 3, 2).unwrap();
            let h = induced_grid(&g, &parts).unwrap();
            assert!(h.validate_uso().unwrap().is_uso());
            assert!(induced_relation_is_tournament(&g, &parts).unwrap());
            let mut base = ExplicitEdgeOracle::new(&vm);
            let mut solver = scan_all_edges;
            let mut oracle = InducedVertexOracle::new(&mut base, parts.clone(), &mut solver).unwrap();
            for x in h.shape().vertices() {
                let a = oracle.query(x).unwrap();
                let mut out = a.outgoing.clone();
                out.sort();
                let mut want = h.out_neighbors(x).unwrap();
                want.sort();
                assert_eq!(out, want);
            }
            let hs = h.brute_force_sink().unwrap();
            assert_eq!(parts.block_of(g.brute_force_sink().unwrap()), hs);
        }
    }
}
