use super::diagonal::rectangular_solve;
use super::DSolution;
use crate::error::{Error, Result};
use crate::oracle::{DVertexOracle, InheritedVertexOracle};

/// Sink of a `d`-dimensional grid USO. One dimension is walked; two or more
/// are paired off: the first two dimensions form the inherited grid, solved
/// with the rectangular solver, and each of its vertex queries recurses on
/// the remaining dimensions.
pub fn ddim_solve(o: &mut dyn DVertexOracle) -> Result<DSolution> {
    let start = o.counter();
    let sink = solve(o)?;
    Ok(DSolution { sink, queries: o.counter().since(start) })
}

fn solve(o: &mut dyn DVertexOracle) -> Result<Vec<usize>> {
    let dims = o.dims();
    match dims.len() {
        0 => {
            o.query(&[])?;
            Ok(Vec::new())
        }
        1 => {
            let mut at = 0;
            for _ in 0..dims[0] {
                let a = o.query(&[at])?;
                match a.outgoing[0].iter().min() {
                    None => return Ok(vec![at]),
                    Some(&next) => at = next,
                }
            }
            Err(Error::Inconsistent("walk along one dimension did not terminate".into()))
        }
        _ => {
            let mut recurse = |view: &mut dyn DVertexOracle| solve(view);
            let mut h = InheritedVertexOracle::new(o, (0, 1), &mut recurse)?;
            let top = rectangular_solve(&mut h)?;
            h.block_sink(top.sink)
                .map(<[usize]>::to_vec)
                .ok_or_else(|| Error::Inconsistent("inherited sink was never queried".into()))
        }
    }
}

/// Unrolled bound `T(d) = (n_1 + n_2 - 1) * T(d - 2)` with `T(1) = n_1`
/// and `T(0) = 1`.
pub fn ddim_bound(dims: &[usize]) -> u64 {
    match dims {
        [] => 1,
        [n] => *n as u64,
        [a, b, rest @ ..] => (a + b - 1) as u64 * ddim_bound(rest),
    }
}
