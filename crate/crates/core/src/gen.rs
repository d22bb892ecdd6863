//! Instance generators.
//!
//! Random instances come from the one-line-and-points construction, which
//! always yields a USO. Exhaustive enumeration covers every USO of the
//! tiniest shapes, including the ones that construction cannot produce.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ddim::{DGridShape, DOrientedGrid};
use crate::error::{Error, Result};
use crate::grid::{Direction, GridShape, OrientedGrid, ValueMatrix, Verdict, VertexRef, DEFAULT_VALIDATION_CAP};

/// Largest edge count [`enumerate_usos`] accepts by default (3x3 has 18).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edges point from the larger value to the smaller. The result is always
/// acyclic but is a USO only if every subgrid has a unique minimum.
pub fn orient_from_values(vm: &ValueMatrix) -> OrientedGrid {
    vm.orient()
}

/// `m` points left of the line `x = 0` and `n` points right of it. Segment
/// `(i, j)` joins `left[i]` to `right[j]`; its crossing height is the value
/// of grid vertex `u_ij`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointInstance {
    pub left: Vec<[f64; 2]>,
    pub right: Vec<[f64; 2]>,
}

impl PointInstance {
    pub fn new(left: Vec<[f64; 2]>, right: Vec<[f64; 2]>) -> Result<Self> {
        if left.iter().any(|p| p[0].partial_cmp(&0.0) != Some(Ordering::Less))
            || right.iter().any(|p| p[0].partial_cmp(&0.0) != Some(Ordering::Greater))
        {
            return Err(Error::BadValues("left points need x < 0 and right points x > 0".into()));
        }
        let inst = PointInstance { left, right };
        inst.heights()?;
        Ok(inst)
    }

    pub fn shape(&self) -> Result<GridShape> {
        GridShape::new(self.left.len(), self.right.len())
    }

    fn crossing(l: [f64; 2], r: [f64; 2]) -> f64 {
        l[1] + (r[1] - l[1]) * (-l[0]) / (r[0] - l[0])
    }

    /// Crossing heights as a value matrix; fails if two coincide.
    pub fn heights(&self) -> Result<ValueMatrix> {
        let shape = self.shape()?;
        let values = self
            .left
            .iter()
            .flat_map(|&l| self.right.iter().map(move |&r| Self::crossing(l, r)))
            .collect();
        ValueMatrix::new(shape, values)
    }
}

/// Random point set with left points at `x = -1` and right points at
/// `x = +1`, so that entry `(i, j)` is `(y_i + y'_j) / 2`.
pub fn gen_one_line_points(m: usize, n: usize, seed: u64) -> Result<PointInstance> {
    GridShape::new(m, n)?;
    let mut rng = rng(seed);
    loop {
        let left = (0..m).map(|_| [-1.0, rng.gen::<f64>()]).collect();
        let right = (0..n).map(|_| [1.0, rng.gen::<f64>()]).collect();
        // coincident heights have measure zero; draw again
        if let Ok(inst) = PointInstance::new(left, right) {
            return Ok(inst);
        }
    }
}

pub fn gen_one_line(m: usize, n: usize, seed: u64) -> Result<ValueMatrix> {
    gen_one_line_points(m, n, seed)?.heights()
}

/// Every USO of `shape`, found by filtering all `2^E` orientations through
/// the validator. Deterministic order: orientation `mask` sets edge `t` (in
/// [`GridShape::edges`] order) toward its second endpoint iff bit `t` is set.
pub fn enumerate_usos(shape: GridShape) -> Result<impl Iterator<Item = OrientedGrid>> {
    enumerate_usos_capped(shape, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_usos_capped(shape: GridShape, max_edges: usize) -> Result<impl Iterator<Item = OrientedGrid>> {
    let edges: Vec<_> = shape.edges().collect();
    let e = edges.len();
    if e > max_edges || e >= 64 || shape.size() > DEFAULT_VALIDATION_CAP {
        return Err(Error::CapExceeded { what: "edge count for enumeration", actual: e as u128, cap: max_edges as u128 });
    }
    Ok((0u64..1 << e).filter_map(move |mask| {
        let mut t = 0;
        let g = OrientedGrid::from_fn(shape, |_| {
            let bit = mask >> t & 1 == 1;
            t += 1;
            Direction::forward_if(bit)
        });
        match g.validate_uso() {
            Ok(Verdict::Uso) => Some(g),
            _ => None,
        }
    }))
}

/// Every USO of a small `d`-dimensional grid, by the same mask order over
/// [`DGridShape::edges`].
pub fn enumerate_ddim_usos(shape: &DGridShape) -> Result<Vec<DOrientedGrid>> {
    let edges = shape.edges();
    let e = edges.len();
    if e > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            what: "edge count for enumeration",
            actual: e as u128,
            cap: DEFAULT_ENUMERATION_CAP as u128,
        });
    }
    let mut out = Vec::new();
    for mask in 0u64..1 << e {
        let mut t = 0;
        let g = DOrientedGrid::from_fn(shape.clone(), |_, _| {
            let bit = mask >> t & 1 == 1;
            t += 1;
            bit
        });
        if g.validate_uso()?.is_uso() {
            out.push(g);
        }
    }
    Ok(out)
}

/// Orientation rule for a grid padded out to a larger square. Returns
/// `None` when both endpoints are real, i.e. the base grid decides.
///
/// Synthetic vertices dominate real ones (edges point toward the real
/// vertex) and are ordered among themselves by `side * row + col`.
pub fn padding_points_to(real: GridShape, from: VertexRef, to: VertexRef) -> Option<bool> {
    match (real.contains(from), real.contains(to)) {
        (true, true) => None,
        (true, false) => Some(false),
        (false, true) => Some(true),
        (false, false) => Some(from > to),
    }
}

/// Appends dominated rows (or columns) until the matrix is square. The
/// original block keeps its values, so the sink and every original edge
/// are unchanged.
pub fn pad_values_to_square(vm: &ValueMatrix) -> Result<ValueMatrix> {
    require_uso(vm)?;
    let shape = vm.shape();
    if shape.is_square() {
        return Ok(vm.clone());
    }
    let side = shape.rows.max(shape.cols);
    let top = vm.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unit = 1.0f64.max(top.abs() * 2f64.powi(-40));
    let padded = GridShape::square(side)?;
    let values = padded
        .vertices()
        .map(|v| {
            if shape.contains(v) {
                vm.get(v)
            } else {
                top + unit * ((v.row * (side + 1) + v.col + 1) as f64)
            }
        })
        .collect();
    ValueMatrix::new(padded, values)
}

fn require_uso(vm: &ValueMatrix) -> Result<()> {
    let g = vm.orient();
    match g.validate_uso() {
        Ok(Verdict::Uso) => Ok(()),
        Ok(Verdict::Violation(v)) => Err(Error::NotUso(v.to_string())),
        // too large to enumerate subgrids: fall back to the global-sink check
        Err(Error::CapExceeded { .. }) => g.brute_force_sink().map(|_| ()),
        Err(e) => Err(e),
    }
}

/// Separable `d`-dimensional USO: `f(x) = sum_k g_k(x_k)` with a random
/// permutation `g_k` per dimension; edges point to the smaller `f`.
pub fn gen_separable_ddim(dims: &[usize], seed: u64) -> Result<DOrientedGrid> {
    let shape = DGridShape::new(dims.to_vec())?;
    let mut rng = rng(seed);
    let ranks: Vec<Vec<usize>> = dims
        .iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    Ok(DOrientedGrid::from_fn(shape.clone(), |u, v| {
        let k = shape.edge_dimension(u, v).expect("edge");
        ranks[k][u[k]] > ranks[k][v[k]]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Orientation;

    #[test]
    fn orient_examples() {
        let g = orient_from_values(&ValueMatrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap());
        assert!(g.validate_uso().unwrap().is_uso());
        assert_eq!(g.brute_force_sink().unwrap(), VertexRef::new(0, 0));

        let g = orient_from_values(&ValueMatrix::from_rows(&[[1.0, 3.0], [4.0, 2.0]]).unwrap());
        assert!(g.topological_values().is_ok());
        assert!(!g.validate_uso().unwrap().is_uso());
        assert!(g.is_sink(VertexRef::new(0, 0)) && g.is_sink(VertexRef::new(1, 1)));
    }

    #[test]
    fn monotone_matrices_sink_at_origin() {
        let mut rng = rng(7);
        for _ in 0..200 {
            let (m, n) = (rng.gen_range(1..6), rng.gen_range(1..6));
            let mut vals = vec![0.0f64; m * n];
            for i in 0..m {
                for j in 0..n {
                    let up = if i > 0 { vals[(i - 1) * n + j] } else { 0.0 };
                    let left = if j > 0 { vals[i * n + j - 1] } else { 0.0 };
                    vals[i * n + j] = up.max(left) + 0.01 + rng.gen::<f64>();
                }
            }
            let g = ValueMatrix::new(GridShape::new(m, n).unwrap(), vals).unwrap().orient();
            assert!(g.validate_uso().unwrap().is_uso());
            assert_eq!(g.brute_force_sink().unwrap(), VertexRef::new(0, 0));
        }
    }

    #[test]
    fn one_line_midpoints() {
        let inst = PointInstance::new(vec![[-1.0, 0.0], [-1.0, 1.0]], vec![[1.0, 0.0], [1.0, 2.0]]).unwrap();
        let h = inst.heights().unwrap();
        assert_eq!(h.rows(), vec![vec![0.0, 1.0], vec![0.5, 1.5]]);
        assert_eq!(h.orient().brute_force_sink().unwrap(), VertexRef::new(0, 0));

        let one = gen_one_line(1, 1, 3).unwrap();
        assert_eq!(one.orient().brute_force_sink().unwrap(), VertexRef::new(0, 0));

        assert!(PointInstance::new(vec![[0.0, 1.0]], vec![[1.0, 0.0]]).is_err());
        // two segments crossing x = 0 at the same height
        assert!(PointInstance::new(vec![[-1.0, 0.0], [-1.0, 1.0]], vec![[1.0, 0.0], [1.0, 1.0]]).is_err());
    }

    #[test]
    fn one_line_is_deterministic() {
        assert_eq!(gen_one_line(4, 5, 99).unwrap(), gen_one_line(4, 5, 99).unwrap());
        assert_ne!(gen_one_line(4, 5, 99).unwrap(), gen_one_line(4, 5, 100).unwrap());
    }

    #[test]
    fn one_line_sweep_6x6() {
        for seed in 0..1000 {
            let g = gen_one_line(6, 6, seed).unwrap().orient();
            assert!(g.validate_uso().unwrap().is_uso(), "seed {seed}");
        }
    }

    #[test]
    fn enumeration_counts() {
        let count = |m, n| enumerate_usos(GridShape::new(m, n).unwrap()).unwrap().count();
        assert_eq!(count(1, 1), 1);
        assert_eq!(count(1, 2), 2);
        assert_eq!(count(1, 3), 6);
        assert_eq!(count(2, 2), 12);
        assert_eq!(count(2, 3), 132);
        assert!(enumerate_usos(GridShape::new(5, 5).unwrap()).is_err());
    }

    #[test]
    fn padding_examples() {
        let vm = ValueMatrix::from_rows(&[[1.0, 2.0]]).unwrap();
        let p = pad_values_to_square(&vm).unwrap();
        assert_eq!(p.shape(), GridShape::square(2).unwrap());
        assert!(p.values()[2..].iter().all(|&x| x > 2.0));
        assert_eq!(p.orient().brute_force_sink().unwrap(), VertexRef::new(0, 0));

        let sq = ValueMatrix::from_rows(&[[2.0, 1.0], [3.0, 4.0]]).unwrap();
        assert_eq!(pad_values_to_square(&sq).unwrap(), sq);

        let bad = ValueMatrix::from_rows(&[[1.0, 3.0, 5.0], [4.0, 2.0, 6.0]]).unwrap();
        assert!(matches!(pad_values_to_square(&bad), Err(Error::NotUso(_))));
    }

    #[test]
    fn padding_matches_rule() {
        let vm = gen_one_line(3, 5, 11).unwrap();
        let p = pad_values_to_square(&vm).unwrap();
        let real = vm.shape();
        for e in p.shape().edges() {
            let (a, b) = (e.first(), e.second());
            if let Some(rule) = padding_points_to(real, a, b) {
                assert_eq!(rule, p.points_to(a, b), "{e}");
            }
        }
        let tall = pad_values_to_square(&vm.transpose()).unwrap();
        assert_eq!(tall.shape(), GridShape::square(5).unwrap());
        assert!(tall.orient().validate_uso().unwrap().is_uso());
    }

    #[test]
    fn separable_ddim() {
        let dims1 = gen_separable_ddim(&[2], 5).unwrap();
        assert!(dims1.validate_uso().unwrap().is_uso());
        for seed in 0..50 {
            assert!(gen_separable_ddim(&[2, 2], seed).unwrap().validate_uso().unwrap().is_uso());
            assert!(gen_separable_ddim(&[2, 2, 2], seed).unwrap().validate_uso().unwrap().is_uso());
            assert!(gen_separable_ddim(&[3, 2, 4], seed).unwrap().validate_uso().unwrap().is_uso());
        }
    }

    #[test]
    fn three_cube_has_cyclic_usos() {
        let cube = DGridShape::new(vec![2, 2, 2]).unwrap();
        let usos = enumerate_ddim_usos(&cube).unwrap();
        assert_eq!(usos.len(), 744);
        let cyclic = usos.iter().filter(|g| g.find_cycle().is_some()).count();
        assert_eq!(cyclic, 16);
    }
}
