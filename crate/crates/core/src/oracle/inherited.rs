//! Vertex queries on `d`-dimensional grids and the inherited grid.
//!
//! Fixing two dimensions `a` and `b` splits a `d`-dimensional grid into
//! `n_a * n_b` blocks, each a `(d - 2)`-dimensional subgrid. The inherited
//! `(n_a, n_b)`-grid has one vertex per block; block `x` points to `y` iff
//! the sink of `x` points into `y`.

use std::collections::HashMap;

use super::{QueryCounter, VertexAnswer, VertexOracle};
use crate::ddim::{DGridShape, DOrientedGrid};
use crate::error::{Error, Result};
use crate::grid::{GridShape, VertexRef};

/// Outgoing edges of one vertex, grouped by dimension: `outgoing[k]` holds
/// the coordinate values along dimension `k` that the vertex points to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DVertexAnswer {
    pub vertex: Vec<usize>,
    pub outgoing: Vec<Vec<usize>>,
}

impl DVertexAnswer {
    pub fn is_sink(&self) -> bool {
        self.outgoing.iter().all(Vec::is_empty)
    }
}

pub trait DVertexOracle {
    fn dims(&self) -> Vec<usize>;

    fn query(&mut self, x: &[usize]) -> Result<DVertexAnswer>;

    fn counter(&self) -> QueryCounter;
}

impl<T: DVertexOracle + ?Sized> DVertexOracle for &mut T {
    fn dims(&self) -> Vec<usize> {
        (**self).dims()
    }

    fn query(&mut self, x: &[usize]) -> Result<DVertexAnswer> {
        (**self).query(x)
    }

    fn counter(&self) -> QueryCounter {
        (**self).counter()
    }
}

fn check_coords(dims: &[usize], x: &[usize]) -> Result<()> {
    if x.len() != dims.len() || x.iter().zip(dims).any(|(&c, &n)| c >= n) {
        return Err(Error::InvalidCoordinate(x.to_vec()));
    }
    Ok(())
}

pub struct ExplicitDVertexOracle<'g> {
    grid: &'g DOrientedGrid,
    cache: HashMap<Vec<usize>, DVertexAnswer>,
    counter: QueryCounter,
    log: Vec<Vec<usize>>,
}

impl<'g> ExplicitDVertexOracle<'g> {
    pub fn new(grid: &'g DOrientedGrid) -> Self {
        ExplicitDVertexOracle { grid, cache: HashMap::new(), counter: QueryCounter::default(), log: Vec::new() }
    }

    /// Distinct queried vertices in query order.
    pub fn queried(&self) -> &[Vec<usize>] {
        &self.log
    }

    pub fn shape(&self) -> &DGridShape {
        self.grid.shape()
    }
}

impl DVertexOracle for ExplicitDVertexOracle<'_> {
    fn dims(&self) -> Vec<usize> {
        self.grid.shape().dims().to_vec()
    }

    fn query(&mut self, x: &[usize]) -> Result<DVertexAnswer> {
        self.grid.shape().check(x)?;
        if let Some(a) = self.cache.get(x) {
            return Ok(a.clone());
        }
        let d = self.grid.shape().dimension();
        let answer = DVertexAnswer { vertex: x.to_vec(), outgoing: (0..d).map(|k| self.grid.out_along(x, k)).collect() };
        self.counter.vertex += 1;
        self.log.push(x.to_vec());
        self.cache.insert(x.to_vec(), answer.clone());
        Ok(answer)
    }

    fn counter(&self) -> QueryCounter {
        self.counter
    }
}

/// One block of a base oracle: the coordinates in `free` vary, all others
/// are pinned to `template`. Queries pass straight through to the base.
pub struct BlockView<'a> {
    base: &'a mut dyn DVertexOracle,
    template: Vec<usize>,
    free: Vec<usize>,
}

impl<'a> BlockView<'a> {
    pub fn new(base: &'a mut dyn DVertexOracle, template: Vec<usize>, free: Vec<usize>) -> Result<Self> {
        let dims = base.dims();
        check_coords(&dims, &template)?;
        if free.iter().any(|&k| k >= dims.len()) || free.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!("free dimensions {free:?} for {} dimensions", dims.len())));
        }
        Ok(BlockView { base, template, free })
    }

    /// Base coordinates of block-local coordinates `y`.
    pub fn to_base(&self, y: &[usize]) -> Vec<usize> {
        let mut x = self.template.clone();
        for (&k, &c) in self.free.iter().zip(y) {
            x[k] = c;
        }
        x
    }
}

impl DVertexOracle for BlockView<'_> {
    fn dims(&self) -> Vec<usize> {
        let dims = self.base.dims();
        self.free.iter().map(|&k| dims[k]).collect()
    }

    fn query(&mut self, y: &[usize]) -> Result<DVertexAnswer> {
        check_coords(&self.dims(), y)?;
        let a = self.base.query(&self.to_base(y))?;
        Ok(DVertexAnswer { vertex: y.to_vec(), outgoing: self.free.iter().map(|&k| a.outgoing[k].clone()).collect() })
    }

    fn counter(&self) -> QueryCounter {
        self.base.counter()
    }
}

/// Finds the sink of one block; its last query should be the sink itself.
pub type DBlockSolver<'s> = dyn FnMut(&mut dyn DVertexOracle) -> Result<Vec<usize>> + 's;

/// Vertex oracle over the inherited `(n_a, n_b)`-grid. A query solves the
/// block and reads the fixed-dimension edges off the block sink's answer,
/// which the base oracle has cached, so no queries beyond the block
/// solver's are charged.
pub struct InheritedVertexOracle<'a, 's> {
    base: &'a mut dyn DVertexOracle,
    fixed: (usize, usize),
    solver: &'s mut DBlockSolver<'s>,
    cache: HashMap<VertexRef, VertexAnswer>,
    block_sinks: HashMap<VertexRef, Vec<usize>>,
    queries: u64,
}

impl<'a, 's> InheritedVertexOracle<'a, 's> {
    pub fn new(base: &'a mut dyn DVertexOracle, fixed: (usize, usize), solver: &'s mut DBlockSolver<'s>) -> Result<Self> {
        let d = base.dims().len();
        if fixed.0 == fixed.1 || fixed.0 >= d || fixed.1 >= d {
            return Err(Error::InvalidPartition(format!("cannot fix dimensions {fixed:?} of {d}")));
        }
        Ok(InheritedVertexOracle {
            base,
            fixed,
            solver,
            cache: HashMap::new(),
            block_sinks: HashMap::new(),
            queries: 0,
        })
    }

    /// Base coordinates of the sink of block `x`, if `x` has been queried.
    pub fn block_sink(&self, x: VertexRef) -> Option<&[usize]> {
        self.block_sinks.get(&x).map(Vec::as_slice)
    }

    /// Queries charged on the underlying oracle.
    pub fn base_counter(&self) -> QueryCounter {
        self.base.counter()
    }
}

impl VertexOracle for InheritedVertexOracle<'_, '_> {
    fn shape(&self) -> GridShape {
        let dims = self.base.dims();
        GridShape { rows: dims[self.fixed.0], cols: dims[self.fixed.1] }
    }

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer> {
        let shape = self.shape();
        shape.check(v)?;
        if let Some(a) = self.cache.get(&v) {
            return Ok(a.clone());
        }
        let (a, b) = self.fixed;
        let d = self.base.dims().len();
        let mut template = vec![0; d];
        template[a] = v.row;
        template[b] = v.col;
        let free: Vec<usize> = (0..d).filter(|&k| k != a && k != b).collect();
        let sink = {
            let mut view = BlockView::new(&mut *self.base, template, free.clone())?;
            let local = (self.solver)(&mut view)?;
            check_coords(&view.dims(), &local)?;
            view.to_base(&local)
        };
        let answer = self.base.query(&sink)?;
        if free.iter().any(|&k| !answer.outgoing[k].is_empty()) {
            return Err(Error::Inconsistent(format!("block solver returned {sink:?}, which is not the sink of its block")));
        }
        let h = VertexAnswer::from_fn(shape, v, |w| {
            Ok(if w.row == v.row { answer.outgoing[b].contains(&w.col) } else { answer.outgoing[a].contains(&w.row) })
        })?;
        self.queries += 1;
        self.block_sinks.insert(v, sink);
        self.cache.insert(v, h.clone());
        Ok(h)
    }

    fn counter(&self) -> QueryCounter {
        QueryCounter { vertex: self.queries, edge: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::gen_separable_ddim;

    fn scan(o: &mut dyn DVertexOracle) -> Result<Vec<usize>> {
        if o.dims().is_empty() {
            o.query(&[])?;
            return Ok(Vec::new());
        }
        let shape = DGridShape::new(o.dims())?;
        let mut found = None;
        for x in shape.vertices() {
            if o.query(&x)?.is_sink() {
                found = Some(x);
            }
        }
        let s = found.ok_or(Error::Unresolved)?;
        o.query(&s)?;
        Ok(s)
    }

    #[test]
    fn explicit_answers_and_caching() {
        let g = gen_separable_ddim(&[2, 3, 2], 4).unwrap();
        let mut o = ExplicitDVertexOracle::new(&g);
        let sink = g.brute_force_sink().unwrap();
        assert!(o.query(&sink).unwrap().is_sink());
        o.query(&sink).unwrap();
        assert_eq!(o.counter().vertex, 1);
        assert!(o.query(&[2, 0, 0]).is_err());
    }

    #[test]
    fn two_fixed_dims_cost_one_query_each() {
        let g = gen_separable_ddim(&[3, 4], 1).unwrap();
        let mut base = ExplicitDVertexOracle::new(&g);
        let mut solver = scan;
        let mut h = InheritedVertexOracle::new(&mut base, (0, 1), &mut solver).unwrap();
        for v in h.shape().vertices().collect::<Vec<_>>() {
            let before = h.base_counter().vertex;
            let a = h.query(v).unwrap();
            assert_eq!(h.base_counter().vertex - before, 1);
            for w in &a.outgoing {
                assert!(g.points_to(&[v.row, v.col], &[w.row, w.col]));
            }
        }
    }

    #[test]
    fn three_dims_block_edges_follow_block_sinks() {
        for seed in 0..10 {
            let g = gen_separable_ddim(&[3, 2, 4], seed).unwrap();
            let mut base = ExplicitDVertexOracle::new(&g);
            let mut solver = scan;
            let mut h = InheritedVertexOracle::new(&mut base, (0, 1), &mut solver).unwrap();
            let mut sink_block = None;
            for v in h.shape().vertices().collect::<Vec<_>>() {
                let before = h.base_counter().vertex;
                let a = h.query(v).unwrap();
                assert!(h.base_counter().vertex - before <= 4);
                let s = h.block_sink(v).unwrap().to_vec();
                assert_eq!((s[0], s[1]), (v.row, v.col));
                for w in &a.outgoing {
                    let mut t = s.clone();
                    t[0] = w.row;
                    t[1] = w.col;
                    assert!(g.points_to(&s, &t));
                }
                if a.is_sink() {
                    sink_block = Some(s);
                }
            }
            assert_eq!(sink_block.unwrap(), g.brute_force_sink().unwrap());
        }
    }

    #[test]
    fn rejects_bad_fixed_dims() {
        let g = gen_separable_ddim(&[2, 2], 0).unwrap();
        let mut base = ExplicitDVertexOracle::new(&g);
        let mut solver = scan;
        assert!(InheritedVertexOracle::new(&mut base, (1, 1), &mut solver).is_err());
    }
}
