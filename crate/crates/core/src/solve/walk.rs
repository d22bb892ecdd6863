use std::collections::HashSet;

use rand::seq::SliceRandom;

use super::Solution;
use crate::error::{Error, Result};
use crate::gen::rng;
use crate::grid::VertexRef;
use crate::oracle::VertexOracle;

fn walk<F>(o: &mut dyn VertexOracle, start: VertexRef, mut next: F) -> Result<Solution>
where
    F: FnMut(&[VertexRef]) -> VertexRef,
{
    let begin = o.counter();
    let mut seen = HashSet::new();
    let mut at = start;
    loop {
        if !seen.insert(at) {
            return Err(Error::Inconsistent(format!("walk revisited {at}")));
        }
        let a = o.query(at)?;
        if a.is_sink() {
            return Ok(Solution { sink: at, queries: o.counter().since(begin) });
        }
        at = next(&a.outgoing);
    }
}

/// Follows the lowest-indexed outgoing edge from the top-left vertex.
pub fn walk_solve(o: &mut dyn VertexOracle) -> Result<Solution> {
    walk_solve_from(o, VertexRef::new(0, 0))
}

pub fn walk_solve_from(o: &mut dyn VertexOracle, start: VertexRef) -> Result<Solution> {
    o.shape().check(start)?;
    walk(o, start, |out| *out.iter().min().expect("non-sink"))
}

/// Follows a uniformly random outgoing edge, deterministic in `seed`.
pub fn random_edge_solve(o: &mut dyn VertexOracle, seed: u64) -> Result<Solution> {
    let mut r = rng(seed);
    walk(o, VertexRef::new(0, 0), |out| *out.choose(&mut r).expect("non-sink"))
}
