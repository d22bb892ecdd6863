//! Two-dimensional grids `K_m x K_n`, explicit orientations, value
//! matrices, and brute-force ground truth.
//!
//! Coordinates are 0-based everywhere in the library. The JSON layer and
//! `Display` impls add one so that users see the familiar `u_ij` indexing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph;
use crate::error::{Error, Result};

/// Largest `m + n` the exhaustive validator accepts by default.
pub const DEFAULT_VALIDATION_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridShape {
    pub rows: usize,
    pub cols: usize,
}

impl GridShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols}: both sides must be positive")));
        }
        Ok(GridShape { rows, cols })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    /// Number of coordinates, `N = m + n`.
    pub fn size(&self) -> usize {
        self.rows + self.cols
    }

    pub fn vertex_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn edge_count(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        m * (n * n.saturating_sub(1) / 2) + n * (m * m.saturating_sub(1) / 2)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> GridShape {
        GridShape { rows: self.cols, cols: self.rows }
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        v.row < self.rows && v.col < self.cols
    }

    pub fn check(&self, v: VertexRef) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::OutOfBounds { vertex: v, rows: self.rows, cols: self.cols })
        }
    }

    pub fn check_edge(&self, e: EdgeRef) -> Result<()> {
        self.check(e.first())?;
        self.check(e.second())
    }

    pub(crate) fn index(&self, v: VertexRef) -> usize {
        v.row * self.cols + v.col
    }

    pub(crate) fn vertex_at(&self, idx: usize) -> VertexRef {
        VertexRef::new(idx / self.cols, idx % self.cols)
    }

    /// Row-major vertex order.
    pub fn vertices(self) -> impl Iterator<Item = VertexRef> {
        (0..self.vertex_count()).map(move |i| self.vertex_at(i))
    }

    /// Row neighbours by column, then column neighbours by row.
    pub fn neighbors(self, v: VertexRef) -> impl Iterator<Item = VertexRef> {
        let row = (0..self.cols).filter(move |&c| c != v.col).map(move |c| VertexRef::new(v.row, c));
        let col = (0..self.rows).filter(move |&r| r != v.row).map(move |r| VertexRef::new(r, v.col));
        row.chain(col)
    }

    /// Every edge once, in canonical form: row edges first (row-major), then
    /// column edges (column-major).
    pub fn edges(self) -> impl Iterator<Item = EdgeRef> {
        let (m, n) = (self.rows, self.cols);
        let row_edges = (0..m).flat_map(move |i| {
            (0..n).flat_map(move |a| {
                (a + 1..n).map(move |b| EdgeRef::canonical(VertexRef::new(i, a), VertexRef::new(i, b)))
            })
        });
        let col_edges = (0..n).flat_map(move |j| {
            (0..m).flat_map(move |a| {
                (a + 1..m).map(move |b| EdgeRef::canonical(VertexRef::new(a, j), VertexRef::new(b, j)))
            })
        });
        row_edges.chain(col_edges)
    }
}

impl fmt::Display for GridShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// The vertex `u_ij`, stored 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexRef {
    pub row: usize,
    pub col: usize,
}

impl VertexRef {
    pub const fn new(row: usize, col: usize) -> Self {
        VertexRef { row, col }
    }

    pub fn transpose(self) -> Self {
        VertexRef { row: self.col, col: self.row }
    }

    pub fn adjacent(self, other: VertexRef) -> bool {
        (self.row == other.row) != (self.col == other.col)
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// An unordered vertex pair stored with the lexicographically smaller
/// endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    a: VertexRef,
    b: VertexRef,
}

impl EdgeRef {
    pub fn new(u: VertexRef, v: VertexRef) -> Result<Self> {
        if !u.adjacent(v) {
            return Err(Error::InvalidEdge(u, v));
        }
        Ok(Self::canonical(u, v))
    }

    pub(crate) fn canonical(u: VertexRef, v: VertexRef) -> Self {
        debug_assert!(u.adjacent(v));
        if u < v {
            EdgeRef { a: u, b: v }
        } else {
            EdgeRef { a: v, b: u }
        }
    }

    pub fn first(&self) -> VertexRef {
        self.a
    }

    pub fn second(&self) -> VertexRef {
        self.b
    }

    pub fn is_row_edge(&self) -> bool {
        self.a.row == self.b.row
    }

    pub fn transpose(&self) -> EdgeRef {
        EdgeRef::canonical(self.a.transpose(), self.b.transpose())
    }

    /// The endpoint that is not `v`; `None` if `v` is not an endpoint.
    pub fn other(&self, v: VertexRef) -> Option<VertexRef> {
        if v == self.a {
            Some(self.b)
        } else if v == self.b {
            Some(self.a)
        } else {
            None
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}--{}", self.a, self.b)
    }
}

/// Which endpoint of a canonical [`EdgeRef`] the edge points to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    TowardFirst,
    TowardSecond,
}

impl Direction {
    /// Direction of the edge `from -> to`.
    pub fn pointing(from: VertexRef, to: VertexRef) -> Direction {
        if to < from {
            Direction::TowardFirst
        } else {
            Direction::TowardSecond
        }
    }

    /// `TowardSecond` when the first endpoint points to the second.
    pub fn forward_if(first_to_second: bool) -> Direction {
        if first_to_second {
            Direction::TowardSecond
        } else {
            Direction::TowardFirst
        }
    }

    pub fn head(self, e: EdgeRef) -> VertexRef {
        match self {
            Direction::TowardFirst => e.first(),
            Direction::TowardSecond => e.second(),
        }
    }

    pub fn tail(self, e: EdgeRef) -> VertexRef {
        self.reverse().head(e)
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::TowardFirst => Direction::TowardSecond,
            Direction::TowardSecond => Direction::TowardFirst,
        }
    }
}

/// Read access to some orientation of a grid.
///
/// `points_to` is the unchecked fast path: callers guarantee that `from`
/// and `to` are adjacent vertices inside `shape()`.
pub trait Orientation {
    fn shape(&self) -> GridShape;

    fn points_to(&self, from: VertexRef, to: VertexRef) -> bool;

    fn direction(&self, e: EdgeRef) -> Direction {
        Direction::forward_if(self.points_to(e.first(), e.second()))
    }

    fn is_sink(&self, v: VertexRef) -> bool {
        let shape = self.shape();
        shape.neighbors(v).all(|w| !self.points_to(v, w))
    }
}

impl<T: Orientation + ?Sized> Orientation for &T {
    fn shape(&self) -> GridShape {
        (**self).shape()
    }

    fn points_to(&self, from: VertexRef, to: VertexRef) -> bool {
        (**self).points_to(from, to)
    }
}

/// Outcome of exhaustive subgrid validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Uso,
    Violation(Violation),
}

impl Verdict {
    pub fn is_uso(&self) -> bool {
        matches!(self, Verdict::Uso)
    }
}

/// First subgrid (in enumeration order) whose sink count is not one.
/// `coords[k]` lists the chosen coordinates along dimension `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub coords: Vec<Vec<usize>>,
    pub sinks: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .coords
            .iter()
            .map(|s| {
                let inner: Vec<String> = s.iter().map(|c| (c + 1).to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "subgrid {} has {} sinks", sets.join(" x "), self.sinks)
    }
}

/// Explicit orientation of an `(m, n)`-grid. Every edge carries exactly one
/// direction; the orientation need not be acyclic or a USO.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrientedGrid {
    shape: GridShape,
    // [i][a][b] for a < b: true iff (i,a) -> (i,b)
    row_edges: Vec<bool>,
    // [j][a][b] for a < b: true iff (a,j) -> (b,j)
    col_edges: Vec<bool>,
}

impl fmt::Debug for OrientedGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for e in self.shape.edges() {
            let d = self.direction(e);
            list.entry(&format_args!("{}->{}", d.tail(e), d.head(e)));
        }
        list.finish()
    }
}

impl OrientedGrid {
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    pub fn from_fn<F>(shape: GridShape, mut dir: F) -> Self
    where
        F: FnMut(EdgeRef) -> Direction,
    {
        let (m, n) = (shape.rows, shape.cols);
        let mut row_edges = vec![false; m * n * n];
        let mut col_edges = vec![false; n * m * m];
        for e in shape.edges() {
            let forward = dir(e) == Direction::TowardSecond;
            let (u, v) = (e.first(), e.second());
            if e.is_row_edge() {
                row_edges[(u.row * n + u.col) * n + v.col] = forward;
            } else {
                col_edges[(u.col * m + u.row) * m + v.row] = forward;
            }
        }
        OrientedGrid { shape, row_edges, col_edges }
    }

    /// Builds from an explicit edge list, which must name every edge of the
    /// shape exactly once.
    pub fn from_edges<I>(shape: GridShape, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EdgeRef, Direction)>,
    {
        let mut seen = std::collections::HashMap::new();
        for (e, d) in edges {
            shape.check_edge(e)?;
            if seen.insert(e, d).is_some() {
                return Err(Error::Incomplete(format!("edge {e} listed twice")));
            }
        }
        if seen.len() != shape.edge_count() {
            return Err(Error::Incomplete(format!(
                "{} of {} edges oriented",
                seen.len(),
                shape.edge_count()
            )));
        }
        Ok(Self::from_fn(shape, |e| seen[&e]))
    }

    /// Orientation by value: each edge points from the larger to the smaller
    /// entry.
    pub fn from_values(vm: &ValueMatrix) -> Self {
        Self::from_fn(vm.shape(), |e| vm.direction(e))
    }

    /// Copies any orientation source into explicit form.
    pub fn from_orientation<O: Orientation + ?Sized>(src: &O) -> Self {
        Self::from_fn(src.shape(), |e| src.direction(e))
    }

    pub fn direction_of(&self, e: EdgeRef) -> Result<Direction> {
        self.shape.check_edge(e)?;
        Ok(self.direction(e))
    }

    pub fn out_neighbors(&self, v: VertexRef) -> Result<Vec<VertexRef>> {
        self.shape.check(v)?;
        Ok(self.shape.neighbors(v).filter(|&w| self.points_to(v, w)).collect())
    }

    pub fn in_neighbors(&self, v: VertexRef) -> Result<Vec<VertexRef>> {
        self.shape.check(v)?;
        Ok(self.shape.neighbors(v).filter(|&w| self.points_to(w, v)).collect())
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeRef, Direction)> + '_ {
        self.shape.edges().map(move |e| (e, self.direction(e)))
    }

    pub fn transpose(&self) -> OrientedGrid {
        OrientedGrid::from_fn(self.shape.transpose(), |e| {
            let t = e.transpose();
            let d = self.direction(t);
            // transposition can swap which endpoint is canonical-first
            if d.head(t).transpose() == e.first() {
                Direction::TowardFirst
            } else {
                Direction::TowardSecond
            }
        })
    }

    /// Exhaustive USO check over all `(2^m - 1)(2^n - 1)` nonempty subgrids,
    /// refusing grids with `m + n` above [`DEFAULT_VALIDATION_CAP`].
    pub fn validate_uso(&self) -> Result<Verdict> {
        self.validate_uso_capped(DEFAULT_VALIDATION_CAP)
    }

    pub fn validate_uso_capped(&self, max_size: usize) -> Result<Verdict> {
        let (m, n) = (self.shape.rows, self.shape.cols);
        if m + n > max_size {
            return Err(Error::CapExceeded {
                what: "grid size m+n for exhaustive validation",
                actual: (m + n) as u128,
                cap: max_size as u128,
            });
        }
        if m >= 64 || n >= 64 {
            return Err(Error::CapExceeded {
                what: "side length for bitmask validation",
                actual: m.max(n) as u128,
                cap: 63,
            });
        }
        let mut row_out = vec![0u64; m * n];
        let mut col_out = vec![0u64; m * n];
        for v in self.shape.vertices() {
            let idx = self.shape.index(v);
            for w in self.shape.neighbors(v) {
                if self.points_to(v, w) {
                    if w.row == v.row {
                        row_out[idx] |= 1 << w.col;
                    } else {
                        col_out[idx] |= 1 << w.row;
                    }
                }
            }
        }
        for rmask in 1u64..(1 << m) {
            for cmask in 1u64..(1 << n) {
                let mut sinks = 0;
                for i in bits(rmask) {
                    for j in bits(cmask) {
                        let idx = i * n + j;
                        if row_out[idx] & cmask == 0 && col_out[idx] & rmask == 0 {
                            sinks += 1;
                        }
                    }
                }
                if sinks != 1 {
                    return Ok(Verdict::Violation(Violation {
                        coords: vec![bits(rmask).collect(), bits(cmask).collect()],
                        sinks,
                    }));
                }
            }
        }
        Ok(Verdict::Uso)
    }

    /// The unique zero-out-degree vertex, found by scanning every vertex.
    pub fn brute_force_sink(&self) -> Result<VertexRef> {
        let sinks: Vec<VertexRef> = self.shape.vertices().filter(|&v| self.is_sink(v)).collect();
        match sinks.as_slice() {
            [s] => Ok(*s),
            _ => Err(Error::NotUso(format!("whole grid has {} sinks", sinks.len()))),
        }
    }

    /// Realizes an acyclic orientation by distinct values; every edge points
    /// from the larger value to the smaller. A cyclic input yields
    /// [`Error::Cyclic`] carrying one directed cycle.
    pub fn topological_values(&self) -> Result<ValueMatrix> {
        let shape = self.shape;
        let ranks = digraph::postorder_or_cycle(shape.vertex_count(), |idx| {
            let v = shape.vertex_at(idx);
            shape.neighbors(v).filter(|&w| self.points_to(v, w)).map(|w| shape.index(w)).collect()
        })
        .map_err(|cycle| Error::Cyclic(cycle.into_iter().map(|i| shape.vertex_at(i)).collect()))?;
        ValueMatrix::new(shape, ranks.into_iter().map(|r| r as f64).collect())
    }

    /// The sub-orientation on `rows x cols`, re-indexed to a compact shape.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Result<(OrientedGrid, SubgridMap)> {
        let map = SubgridMap::new(self.shape, rows, cols)?;
        let sub = OrientedGrid::from_fn(map.shape(), |e| {
            let (u, v) = (map.to_parent(e.first()), map.to_parent(e.second()));
            Direction::forward_if(self.points_to(u, v))
        });
        Ok((sub, map))
    }
}

impl Orientation for OrientedGrid {
    fn shape(&self) -> GridShape {
        self.shape
    }

    fn points_to(&self, from: VertexRef, to: VertexRef) -> bool {
        let (m, n) = (self.shape.rows, self.shape.cols);
        if from.row == to.row {
            let (a, b) = (from.col.min(to.col), from.col.max(to.col));
            let forward = self.row_edges[(from.row * n + a) * n + b];
            forward == (from.col < to.col)
        } else {
            let (a, b) = (from.row.min(to.row), from.row.max(to.row));
            let forward = self.col_edges[(from.col * m + a) * m + b];
            forward == (from.row < to.row)
        }
    }
}

/// Coordinate translation between a subgrid and its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgridMap {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SubgridMap {
    pub fn new(parent: GridShape, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let norm = |set: &[usize], bound: usize, row: bool| -> Result<Vec<usize>> {
            let mut s = set.to_vec();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::EmptySelection);
            }
            if let Some(&bad) = s.iter().find(|&&c| c >= bound) {
                let v = if row { VertexRef::new(bad, 0) } else { VertexRef::new(0, bad) };
                return Err(Error::OutOfBounds { vertex: v, rows: parent.rows, cols: parent.cols });
            }
            Ok(s)
        };
        Ok(SubgridMap { rows: norm(rows, parent.rows, true)?, cols: norm(cols, parent.cols, false)? })
    }

    pub fn shape(&self) -> GridShape {
        GridShape { rows: self.rows.len(), cols: self.cols.len() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn to_parent(&self, v: VertexRef) -> VertexRef {
        VertexRef::new(self.rows[v.row], self.cols[v.col])
    }

    pub fn from_parent(&self, v: VertexRef) -> Option<VertexRef> {
        let r = self.rows.binary_search(&v.row).ok()?;
        let c = self.cols.binary_search(&v.col).ok()?;
        Some(VertexRef::new(r, c))
    }
}

/// An `m x n` matrix of pairwise-distinct finite numbers. Comparisons are
/// only meaningful within a row or a column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueMatrix {
    shape: GridShape,
    values: Vec<f64>,
}

impl ValueMatrix {
    pub fn shape(&self) -> GridShape {
        self.shape
    }

    /// `values` in row-major order.
    pub fn new(shape: GridShape, values: Vec<f64>) -> Result<Self> {
        if values.len() != shape.vertex_count() {
            return Err(Error::BadValues(format!(
                "expected {} entries for a {shape} grid, got {}",
                shape.vertex_count(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|x| !x.is_finite()) {
            return Err(Error::BadValues(format!("non-finite entry {bad}")));
        }
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadValues(format!("duplicate entry {}", w[0])));
        }
        Ok(ValueMatrix { shape, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let shape = GridShape::new(m, n)?;
        if rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(Error::InvalidShape("ragged value rows".into()));
        }
        Self::new(shape, rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect())
    }

    pub fn get(&self, v: VertexRef) -> f64 {
        self.values[self.shape.index(v)]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.shape.cols).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> ValueMatrix {
        let t = self.shape.transpose();
        let values = t.vertices().map(|v| self.get(v.transpose())).collect();
        ValueMatrix { shape: t, values }
    }

    pub fn orient(&self) -> OrientedGrid {
        OrientedGrid::from_values(self)
    }
}

impl Orientation for ValueMatrix {
    fn shape(&self) -> GridShape {
        self.shape
    }

    fn points_to(&self, from: VertexRef, to: VertexRef) -> bool {
        self.get(from) > self.get(to)
    }
}

pub(crate) fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&b| mask >> b & 1 == 1)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn vm(rows: &[[f64; 2]]) -> ValueMatrix {
        ValueMatrix::from_rows(rows).unwrap()
    }

    fn v(i: usize, j: usize) -> VertexRef {
        VertexRef::new(i - 1, j - 1)
    }

    /// 2x2 directed 4-cycle (1,1)->(1,2)->(2,2)->(2,1)->(1,1).
    pub(crate) fn four_cycle() -> OrientedGrid {
        let cyc = [(v(1, 1), v(1, 2)), (v(1, 2), v(2, 2)), (v(2, 2), v(2, 1)), (v(2, 1), v(1, 1))];
        let edges = cyc.iter().map(|&(a, b)| (EdgeRef::new(a, b).unwrap(), Direction::pointing(a, b)));
        OrientedGrid::from_edges(GridShape::square(2).unwrap(), edges).unwrap()
    }

    #[test]
    fn shape_rejects_zero() {
        assert!(GridShape::new(0, 3).is_err());
        assert!(GridShape::new(3, 0).is_err());
        assert_eq!(GridShape::new(3, 4).unwrap().size(), 7);
        assert_eq!(GridShape::new(3, 3).unwrap().edge_count(), 18);
    }

    #[test]
    fn direction_examples() {
        let g = vm(&[[1.0, 2.0], [3.0, 4.0]]).orient();
        let e = EdgeRef::new(v(1, 1), v(1, 2)).unwrap();
        assert_eq!(g.direction_of(e).unwrap(), Direction::TowardFirst);
        assert_eq!(Direction::TowardFirst.head(e), v(1, 1));
        let e = EdgeRef::new(v(1, 1), v(2, 1)).unwrap();
        assert_eq!(g.direction_of(e).unwrap().head(e), v(1, 1));
        assert!(matches!(EdgeRef::new(v(1, 1), v(2, 2)), Err(Error::InvalidEdge(..))));
        assert!(EdgeRef::new(v(1, 1), v(1, 1)).is_err());
        let far = EdgeRef::new(v(1, 1), v(1, 3)).unwrap();
        assert!(matches!(g.direction_of(far), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn out_neighbor_examples() {
        let g = vm(&[[1.0, 2.0], [3.0, 4.0]]).orient();
        assert!(g.out_neighbors(v(1, 1)).unwrap().is_empty());
        let mut out = g.out_neighbors(v(2, 2)).unwrap();
        out.sort();
        assert_eq!(out, vec![v(1, 2), v(2, 1)]);
        let single = ValueMatrix::from_rows(&[[7.0]]).unwrap().orient();
        assert!(single.out_neighbors(v(1, 1)).unwrap().is_empty());
        assert!(g.out_neighbors(v(3, 1)).is_err());
    }

    #[test]
    fn validate_examples() {
        let single = ValueMatrix::from_rows(&[[0.5]]).unwrap().orient();
        assert!(single.validate_uso().unwrap().is_uso());

        match four_cycle().validate_uso().unwrap() {
            Verdict::Violation(viol) => {
                assert_eq!(viol.coords, vec![vec![0, 1], vec![0, 1]]);
                assert_eq!(viol.sinks, 0);
            }
            Verdict::Uso => panic!("4-cycle accepted"),
        }

        let big = ValueMatrix::new(GridShape::new(7, 8).unwrap(), (0..56).map(f64::from).collect()).unwrap();
        assert!(matches!(big.orient().validate_uso(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn two_by_two_count_is_twelve() {
        let shape = GridShape::square(2).unwrap();
        let edges: Vec<EdgeRef> = shape.edges().collect();
        let mut usos = 0;
        for mask in 0u32..16 {
            let g = OrientedGrid::from_fn(shape, |e| {
                let t = edges.iter().position(|&x| x == e).unwrap();
                if mask >> t & 1 == 1 {
                    Direction::TowardSecond
                } else {
                    Direction::TowardFirst
                }
            });
            if g.validate_uso().unwrap().is_uso() {
                usos += 1;
            }
        }
        assert_eq!(usos, 12);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(vm(&[[1.0, 2.0], [3.0, 4.0]]).orient().brute_force_sink().unwrap(), v(1, 1));
        assert_eq!(vm(&[[2.0, 1.0], [3.0, 4.0]]).orient().brute_force_sink().unwrap(), v(1, 2));
        assert!(matches!(four_cycle().brute_force_sink(), Err(Error::NotUso(_))));
    }

    #[test]
    fn topological_examples() {
        let single = ValueMatrix::from_rows(&[[3.0]]).unwrap().orient();
        assert_eq!(single.topological_values().unwrap().values().len(), 1);

        let g = vm(&[[1.0, 2.0], [3.0, 4.0]]).orient();
        assert_eq!(g.topological_values().unwrap().orient(), g);

        match four_cycle().topological_values() {
            Err(Error::Cyclic(c)) => assert_eq!(c.len(), 4),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn restrict_examples() {
        let g = vm(&[[1.0, 2.0], [3.0, 4.0]]).orient();
        let (same, _) = g.restrict(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(same, g);

        let (row2, map) = g.restrict(&[1], &[0, 1]).unwrap();
        assert_eq!(row2.shape(), GridShape::new(1, 2).unwrap());
        assert_eq!(map.to_parent(row2.brute_force_sink().unwrap()), v(2, 1));

        assert!(matches!(g.restrict(&[], &[0]), Err(Error::EmptySelection)));
        assert!(g.restrict(&[0, 2], &[0]).is_err());
    }

    #[test]
    fn restrict_composes() {
        let vals: Vec<f64> = [5, 3, 9, 1, 7, 2, 8, 6, 4, 11, 0, 10].iter().map(|&x| f64::from(x)).collect();
        let g = ValueMatrix::new(GridShape::new(3, 4).unwrap(), vals).unwrap().orient();
        let (outer, m1) = g.restrict(&[0, 2], &[1, 2, 3]).unwrap();
        let (inner, m2) = outer.restrict(&[1], &[0, 2]).unwrap();
        let rows: Vec<usize> = m2.rows().iter().map(|&r| m1.rows()[r]).collect();
        let cols: Vec<usize> = m2.cols().iter().map(|&c| m1.cols()[c]).collect();
        let (direct, _) = g.restrict(&rows, &cols).unwrap();
        assert_eq!(inner, direct);
    }

    #[test]
    fn transpose_round_trip() {
        let vals: Vec<f64> = [5, 3, 9, 1, 7, 2].iter().map(|&x| f64::from(x)).collect();
        let m = ValueMatrix::new(GridShape::new(2, 3).unwrap(), vals).unwrap();
        assert_eq!(m.orient().transpose(), m.transpose().orient());
        assert_eq!(m.orient().transpose().transpose(), m.orient());
    }

    #[test]
    fn duplicate_values_rejected() {
        assert!(matches!(ValueMatrix::from_rows(&[[1.0, 1.0]]), Err(Error::BadValues(_))));
        assert!(ValueMatrix::from_rows(&[[1.0, f64::NAN]]).is_err());
    }
}
