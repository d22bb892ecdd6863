//! `d`-dimensional grids `K_{n_1} x ... x K_{n_d}`.
//!
//! Vertices are coordinate tuples; two vertices are adjacent iff they differ
//! in exactly one coordinate. For `d > 2` a USO may contain directed cycles,
//! so the orientation is always stored explicitly.

use std::collections::HashMap;
use std::fmt;

use crate::digraph;
use crate::error::{Error, Result};
use crate::grid::{bits, Direction, Orientation, OrientedGrid, Verdict, VertexRef, Violation};

/// Default cap on the number of subgrids `prod (2^{n_i} - 1)` the
/// exhaustive validator will visit.
pub const DEFAULT_SUBGRID_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DGridShape {
    dims: Vec<usize>,
    // stride of each dimension in the row-major vertex index
    strides: Vec<usize>,
}

impl DGridShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("a grid needs at least one dimension".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidShape(format!("{dims:?}: every dimension must be positive")));
        }
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len() - 1).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Ok(DGridShape { dims, strides })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dimension(&self) -> usize {
        self.dims.len()
    }

    /// `N^ = n_1 + ... + n_d`.
    pub fn size_hat(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn subgrid_count(&self) -> u128 {
        self.dims.iter().map(|&n| (1u128 << n.min(127)) - 1).product()
    }

    pub fn contains(&self, x: &[usize]) -> bool {
        x.len() == self.dims.len() && x.iter().zip(&self.dims).all(|(c, n)| c < n)
    }

    pub fn check(&self, x: &[usize]) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidCoordinate(x.to_vec()))
        }
    }

    pub fn index(&self, x: &[usize]) -> usize {
        x.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut x = vec![0; self.dims.len()];
        for (k, s) in self.strides.iter().enumerate() {
            x[k] = idx / s;
            idx %= s;
        }
        x
    }

    /// Lexicographic vertex order.
    pub fn vertices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.vertex_count()).map(move |i| self.coords(i))
    }

    /// The dimension along which `u` and `v` differ, if they are adjacent.
    pub fn edge_dimension(&self, u: &[usize], v: &[usize]) -> Option<usize> {
        let mut diff = u.iter().zip(v).enumerate().filter(|(_, (a, b))| a != b).map(|(k, _)| k);
        match (diff.next(), diff.next()) {
            (Some(k), None) if u.len() == v.len() => Some(k),
            _ => None,
        }
    }

    /// Every edge once as `(u, v)` with `u < v` lexicographically.
    pub fn edges(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for (k, &n) in self.dims.iter().enumerate() {
                for b in u[k] + 1..n {
                    let mut v = u.clone();
                    v[k] = b;
                    out.push((u.clone(), v));
                }
            }
        }
        out
    }
}

impl fmt::Display for DGridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Explicit orientation of a `d`-dimensional grid.
#[derive(Clone, PartialEq, Eq)]
pub struct DOrientedGrid {
    shape: DGridShape,
    // out[k][index(x) * n_k + b]: x -> x with coordinate k set to b
    out: Vec<Vec<bool>>,
}

impl fmt::Debug for DOrientedGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DOrientedGrid").field("dims", &self.shape.dims).finish_non_exhaustive()
    }
}

impl DOrientedGrid {
    /// `forward(u, v)` is asked once per edge with `u < v` and returns
    /// whether the edge points `u -> v`.
    pub fn from_fn<F>(shape: DGridShape, mut forward: F) -> Self
    where
        F: FnMut(&[usize], &[usize]) -> bool,
    {
        let count = shape.vertex_count();
        let mut out: Vec<Vec<bool>> = shape.dims.iter().map(|&n| vec![false; count * n]).collect();
        for (u, v) in shape.edges() {
            let k = shape.edge_dimension(&u, &v).expect("edge");
            let n = shape.dims[k];
            let f = forward(&u, &v);
            out[k][shape.index(&u) * n + v[k]] = f;
            out[k][shape.index(&v) * n + u[k]] = !f;
        }
        DOrientedGrid { shape, out }
    }

    pub fn from_edges<I>(shape: DGridShape, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vec<usize>, Direction)>,
    {
        let mut seen: HashMap<(Vec<usize>, Vec<usize>), bool> = HashMap::new();
        for (a, b, dir) in edges {
            shape.check(&a)?;
            shape.check(&b)?;
            if shape.edge_dimension(&a, &b).is_none() {
                return Err(Error::InvalidCoordinate(b));
            }
            let (key, forward) = if a < b {
                ((a, b), dir == Direction::TowardSecond)
            } else {
                ((b, a), dir == Direction::TowardFirst)
            };
            if seen.insert(key, forward).is_some() {
                return Err(Error::Incomplete("edge listed twice".into()));
            }
        }
        let total = shape.edges().len();
        if seen.len() != total {
            return Err(Error::Incomplete(format!("{} of {total} edges oriented", seen.len())));
        }
        Ok(Self::from_fn(shape, |u, v| seen[&(u.to_vec(), v.to_vec())]))
    }

    /// The 2-dimensional grid viewed as a `d = 2` grid.
    pub fn from_2d(grid: &OrientedGrid) -> Self {
        let s = grid.shape();
        let shape = DGridShape::new(vec![s.rows, s.cols]).expect("valid shape");
        Self::from_fn(shape, |u, v| grid.points_to(VertexRef::new(u[0], u[1]), VertexRef::new(v[0], v[1])))
    }

    pub fn shape(&self) -> &DGridShape {
        &self.shape
    }

    /// Unchecked: `u` and `v` must be adjacent.
    pub fn points_to(&self, u: &[usize], v: &[usize]) -> bool {
        let k = self.shape.edge_dimension(u, v).expect("adjacent vertices");
        self.out[k][self.shape.index(u) * self.shape.dims[k] + v[k]]
    }

    /// Coordinate values along dimension `k` that `x` points to.
    pub fn out_along(&self, x: &[usize], k: usize) -> Vec<usize> {
        let n = self.shape.dims[k];
        let base = self.shape.index(x) * n;
        (0..n).filter(|&b| b != x[k] && self.out[k][base + b]).collect()
    }

    pub fn out_degree(&self, x: &[usize]) -> usize {
        (0..self.shape.dimension()).map(|k| self.out_along(x, k).len()).sum()
    }

    pub fn is_sink(&self, x: &[usize]) -> bool {
        self.out_degree(x) == 0
    }

    pub fn brute_force_sink(&self) -> Result<Vec<usize>> {
        let sinks: Vec<Vec<usize>> = self.shape.vertices().filter(|x| self.is_sink(x)).collect();
        match sinks.len() {
            1 => Ok(sinks.into_iter().next().expect("one sink")),
            k => Err(Error::NotUso(format!("whole grid has {k} sinks"))),
        }
    }

    /// Some directed cycle, if the orientation has one.
    pub fn find_cycle(&self) -> Option<Vec<Vec<usize>>> {
        let shape = &self.shape;
        digraph::postorder_or_cycle(shape.vertex_count(), |idx| {
            let x = shape.coords(idx);
            let mut succ = Vec::new();
            for k in 0..shape.dimension() {
                for b in self.out_along(&x, k) {
                    let mut y = x.clone();
                    y[k] = b;
                    succ.push(shape.index(&y));
                }
            }
            succ
        })
        .err()
        .map(|c| c.into_iter().map(|i| shape.coords(i)).collect())
    }

    pub fn validate_uso(&self) -> Result<Verdict> {
        self.validate_uso_capped(DEFAULT_SUBGRID_CAP)
    }

    /// Exhaustive check over every product of nonempty coordinate subsets.
    pub fn validate_uso_capped(&self, max_subgrids: u128) -> Result<Verdict> {
        let dims = &self.shape.dims;
        let subgrids = self.shape.subgrid_count();
        if subgrids > max_subgrids || dims.iter().any(|&n| n >= 64) {
            return Err(Error::CapExceeded {
                what: "subgrid count for exhaustive validation",
                actual: subgrids,
                cap: max_subgrids,
            });
        }
        let d = dims.len();
        let count = self.shape.vertex_count();
        let vertices: Vec<Vec<usize>> = self.shape.vertices().collect();
        let mut out_mask = vec![0u64; count * d];
        for (idx, x) in vertices.iter().enumerate() {
            for k in 0..d {
                for b in self.out_along(x, k) {
                    out_mask[idx * d + k] |= 1 << b;
                }
            }
        }
        let mut masks = vec![1u64; d];
        loop {
            let mut sinks = 0;
            for (idx, x) in vertices.iter().enumerate() {
                let inside = (0..d).all(|k| masks[k] >> x[k] & 1 == 1);
                if inside && (0..d).all(|k| out_mask[idx * d + k] & masks[k] == 0) {
                    sinks += 1;
                }
            }
            if sinks != 1 {
                return Ok(Verdict::Violation(Violation {
                    coords: masks.iter().map(|&m| bits(m).collect()).collect(),
                    sinks,
                }));
            }
            // odometer over nonempty masks, last dimension fastest
            let mut k = d;
            loop {
                if k == 0 {
                    return Ok(Verdict::Uso);
                }
                k -= 1;
                if masks[k] + 1 < (1 << dims[k]) {
                    masks[k] += 1;
                    break;
                }
                masks[k] = 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ValueMatrix;

    #[test]
    fn shape_indexing() {
        let s = DGridShape::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.vertex_count(), 24);
        assert_eq!(s.size_hat(), 9);
        for i in 0..24 {
            assert_eq!(s.index(&s.coords(i)), i);
        }
        assert_eq!(s.subgrid_count(), 3 * 7 * 15);
        assert!(DGridShape::new(vec![]).is_err());
        assert!(DGridShape::new(vec![2, 0]).is_err());
        // 3-cube: 12 edges
        assert_eq!(DGridShape::new(vec![2, 2, 2]).unwrap().edges().len(), 12);
    }

    #[test]
    fn single_edge_either_way_is_uso() {
        let s = DGridShape::new(vec![2]).unwrap();
        for dir in [true, false] {
            let g = DOrientedGrid::from_fn(s.clone(), |_, _| dir);
            assert!(g.validate_uso().unwrap().is_uso());
            let sink = g.brute_force_sink().unwrap();
            assert_eq!(sink, vec![usize::from(dir)]);
        }
    }

    #[test]
    fn two_dim_embedding_agrees() {
        let vm = ValueMatrix::from_rows(&[[6.0, 2.0, 7.0], [3.0, 1.0, 5.0]]).unwrap();
        let g = vm.orient();
        let d = DOrientedGrid::from_2d(&g);
        assert_eq!(d.validate_uso().unwrap(), g.validate_uso().unwrap());
        let s = g.brute_force_sink().unwrap();
        assert_eq!(d.brute_force_sink().unwrap(), vec![s.row, s.col]);
        assert!(d.find_cycle().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let s = DGridShape::new(vec![6, 6, 6]).unwrap();
        let g = DOrientedGrid::from_fn(s, |u, v| u > v);
        assert!(matches!(g.validate_uso(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn from_edges_requires_totality() {
        let s = DGridShape::new(vec![2, 2]).unwrap();
        let edges = vec![(vec![0, 0], vec![0, 1], Direction::TowardFirst)];
        assert!(matches!(DOrientedGrid::from_edges(s, edges), Err(Error::Incomplete(_))));
    }
}
