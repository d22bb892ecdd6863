//! Run reports shared by the CLI and the benchmarks.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::ddim::DOrientedGrid;
use crate::error::{Error, Result};
use crate::grid::{GridShape, Orientation, OrientedGrid, ValueMatrix, VertexRef};
use crate::oracle::{ExplicitDVertexOracle, ExplicitEdgeOracle, ExplicitVertexOracle, QueryCounter, VertexOracle};
use crate::solve::{
    dc_bound, dc_edge_solve, ddim_bound, ddim_solve, diagonal_solve, random_edge_solve, rectangular_solve,
    walk_solve, KSchedule, Solution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Diagonal,
    Rect,
    DcEdge,
    Ddim,
    Walk,
    RandomEdge,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] =
        [Algorithm::Diagonal, Algorithm::Rect, Algorithm::DcEdge, Algorithm::Ddim, Algorithm::Walk, Algorithm::RandomEdge];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Diagonal => "diagonal",
            Algorithm::Rect => "rect",
            Algorithm::DcEdge => "dc-edge",
            Algorithm::Ddim => "ddim",
            Algorithm::Walk => "walk",
            Algorithm::RandomEdge => "random-edge",
        }
    }

    /// Guaranteed query budget on an `m x n` instance.
    pub fn bound(self, shape: GridShape) -> u64 {
        let (m, n) = (shape.rows as u64, shape.cols as u64);
        match self {
            Algorithm::Diagonal => 2 * n - 1,
            Algorithm::Rect => m + n - 1,
            Algorithm::DcEdge => dc_bound(shape, &KSchedule::default()).floor() as u64,
            Algorithm::Ddim => ddim_bound(&[shape.rows, shape.cols]),
            Algorithm::Walk | Algorithm::RandomEdge => m * n,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}; expected one of diagonal, rect, dc-edge, ddim, walk, random-edge"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verification {
    Ok,
    Unverified,
}

/// Outcome of one solver run. Coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub algorithm: String,
    pub shape: Vec<usize>,
    pub seed: Option<u64>,
    pub queries: QueryCounter,
    pub bound: u64,
    pub bound_ok: bool,
    pub sink: Vec<usize>,
    pub verified: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

pub const CSV_HEADER: &str = "alg,m,n,seed,queries_vertex,queries_edge,bound,bound_ok";

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// One CSV row matching [`CSV_HEADER`]; `d`-dimensional shapes put the
    /// first two sides in `m` and `n`.
    pub fn csv_row(&self) -> String {
        let side = |i: usize| self.shape.get(i).copied().unwrap_or(1);
        format!(
            "{},{},{},{},{},{},{},{}",
            self.algorithm,
            side(0),
            side(1),
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.queries.vertex,
            self.queries.edge,
            self.bound,
            self.bound_ok
        )
    }
}

/// An explicit 2-dimensional instance with a cheap ground-truth sink.
pub enum Instance {
    Values(ValueMatrix),
    Grid(OrientedGrid),
}

impl Instance {
    pub fn shape(&self) -> GridShape {
        match self {
            Instance::Values(v) => v.shape(),
            Instance::Grid(g) => g.shape(),
        }
    }

    pub fn brute_force_sink(&self) -> Result<VertexRef> {
        match self {
            Instance::Values(v) => Ok(v
                .shape()
                .vertices()
                .min_by(|a, b| v.get(*a).total_cmp(&v.get(*b)))
                .expect("nonempty grid")),
            Instance::Grid(g) => g.brute_force_sink(),
        }
    }
}

fn solve_2d<O: Orientation>(alg: Algorithm, source: &O, seed: Option<u64>) -> Result<Solution> {
    let vertex = |f: &dyn Fn(&mut dyn VertexOracle) -> Result<Solution>| {
        let mut o = ExplicitVertexOracle::new(source).without_transcript();
        f(&mut o)
    };
    match alg {
        Algorithm::Diagonal => vertex(&|o| diagonal_solve(o)),
        Algorithm::Rect => vertex(&|o| rectangular_solve(o)),
        Algorithm::Walk => vertex(&|o| walk_solve(o)),
        Algorithm::RandomEdge => vertex(&|o| random_edge_solve(o, seed.unwrap_or(0))),
        Algorithm::DcEdge => {
            let mut o = ExplicitEdgeOracle::new(source).without_transcript();
            dc_edge_solve(&mut o, &KSchedule::default())
        }
        Algorithm::Ddim => {
            let d = DOrientedGrid::from_2d(&OrientedGrid::from_orientation(source));
            let mut o = ExplicitDVertexOracle::new(&d);
            let s = ddim_solve(&mut o)?;
            Ok(Solution { sink: VertexRef::new(s.sink[0], s.sink[1]), queries: s.queries })
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Skip the brute-force comparison and mark the report unverified.
    pub skip_verify: bool,
    /// Record wall time in the report.
    pub timing: bool,
}

/// Runs `alg` on an explicit instance and checks the result against the
/// brute-force sink. A wrong sink is an error.
pub fn run_2d(alg: Algorithm, inst: &Instance, seed: Option<u64>, opts: RunOptions) -> Result<RunReport> {
    let started = Instant::now();
    let sol = match inst {
        Instance::Values(v) => solve_2d(alg, v, seed)?,
        Instance::Grid(g) => solve_2d(alg, g, seed)?,
    };
    let elapsed = started.elapsed();
    let verified = if opts.skip_verify { Verification::Unverified } else { Verification::Ok };
    let expected = if opts.skip_verify { sol.sink } else { inst.brute_force_sink()? };
    if sol.sink != expected {
        return Err(Error::SinkMismatch { got: sol.sink.to_string(), expected: expected.to_string() });
    }
    let shape = inst.shape();
    let bound = alg.bound(shape);
    Ok(RunReport {
        algorithm: alg.id().to_string(),
        shape: vec![shape.rows, shape.cols],
        seed,
        queries: sol.queries,
        bound,
        bound_ok: sol.queries.total() <= bound,
        sink: vec![sol.sink.row + 1, sol.sink.col + 1],
        verified,
        wall_time_ms: opts.timing.then_some(elapsed.as_secs_f64() * 1e3),
    })
}

/// `ddim` on an explicit `d`-dimensional grid, verified by brute force.
pub fn run_ddim(grid: &DOrientedGrid, seed: Option<u64>, opts: RunOptions) -> Result<RunReport> {
    let started = Instant::now();
    let mut o = ExplicitDVertexOracle::new(grid);
    let sol = ddim_solve(&mut o)?;
    let elapsed = started.elapsed();
    let verified = if opts.skip_verify { Verification::Unverified } else { Verification::Ok };
    let expected = if opts.skip_verify { sol.sink.clone() } else { grid.brute_force_sink()? };
    if sol.sink != expected {
        return Err(Error::SinkMismatch { got: format!("{:?}", sol.sink), expected: format!("{expected:?}") });
    }
    let dims = grid.shape().dims().to_vec();
    let bound = ddim_bound(&dims);
    Ok(RunReport {
        algorithm: Algorithm::Ddim.id().to_string(),
        shape: dims,
        seed,
        queries: sol.queries,
        bound,
        bound_ok: sol.queries.total() <= bound,
        sink: sol.sink.iter().map(|c| c + 1).collect(),
        verified,
        wall_time_ms: opts.timing.then_some(elapsed.as_secs_f64() * 1e3),
    })
}
