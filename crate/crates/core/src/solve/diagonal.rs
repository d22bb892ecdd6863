use super::elimination::EliminationState;
use super::Solution;
use crate::error::{Error, Result};
use crate::grid::VertexRef;
use crate::oracle::{TransposedVertexOracle, VertexOracle};

fn query(o: &mut dyn VertexOracle, st: &mut EliminationState, v: VertexRef) -> Result<()> {
    let a = o.query(v)?;
    st.note_query(&a)
}

/// Runs the square phase: every active line holds exactly one queried
/// vertex. Each round drops a fully eliminated row and column and, if they
/// held different queried vertices, queries the crossing vertex that
/// restores one query per line.
fn square_phase(o: &mut dyn VertexOracle, st: &mut EliminationState) -> Result<VertexRef> {
    loop {
        if let Some(s) = st.sink() {
            return Ok(s);
        }
        let (r, c) = st.eliminated_lines().ok_or_else(|| {
            Error::Inconsistent("no fully eliminated row and column although no queried vertex is a sink".into())
        })?;
        let qr = st.queried_in_row(r);
        let qc = st.queried_in_col(c);
        st.deactivate_row(r);
        st.deactivate_col(c);
        match (qr, qc) {
            (Some(col_of_qr), Some(row_of_qc)) if !(row_of_qc == r && col_of_qr == c) => {
                query(o, st, VertexRef::new(row_of_qc, col_of_qr))?;
            }
            (Some(_), Some(_)) => {}
            _ => return Err(Error::Inconsistent("active line without a queried vertex".into())),
        }
        if st.active_rows().next().is_none() && st.sink().is_none() {
            return Err(Error::Inconsistent("every vertex eliminated without finding a sink".into()));
        }
    }
}

/// Vertex-query solver for square grids: at most `2n - 1` queries, and the
/// sink is always among the queried vertices.
pub fn diagonal_solve(o: &mut dyn VertexOracle) -> Result<Solution> {
    let shape = o.shape();
    if !shape.is_square() {
        return Err(Error::InvalidShape(format!("diagonal solver needs a square grid, got {shape}")));
    }
    let start = o.counter();
    let mut st = EliminationState::new(shape);
    for i in 0..shape.rows {
        query(o, &mut st, VertexRef::new(i, i))?;
        if st.sink().is_some() {
            break;
        }
    }
    let sink = square_phase(o, &mut st)?;
    Ok(Solution { sink, queries: o.counter().since(start) })
}

/// Vertex-query solver for `m x n` grids using at most `m + n - 1` queries.
pub fn rectangular_solve(o: &mut dyn VertexOracle) -> Result<Solution> {
    let shape = o.shape();
    if shape.rows > shape.cols {
        let mut t = TransposedVertexOracle::new(o);
        let s = rectangular_solve(&mut t)?;
        return Ok(Solution { sink: s.sink.transpose(), queries: s.queries });
    }
    let start = o.counter();
    let (m, n) = (shape.rows, shape.cols);
    let mut st = EliminationState::new(shape);
    for i in 0..m {
        query(o, &mut st, VertexRef::new(i, i))?;
        if st.sink().is_some() {
            return Ok(Solution { sink: VertexRef::new(i, i), queries: o.counter().since(start) });
        }
    }
    for f in m..n {
        let c = (0..f)
            .filter(|&c| st.queried_in_col(c).is_some())
            .find(|&c| st.fully_eliminated_col(c))
            .ok_or_else(|| Error::Inconsistent("no queried column is fully eliminated".into()))?;
        let r = st.queried_in_col(c).expect("covered column");
        st.deactivate_col(c);
        query(o, &mut st, VertexRef::new(r, f))?;
        if let Some(s) = st.sink() {
            return Ok(Solution { sink: s, queries: o.counter().since(start) });
        }
    }
    let sink = square_phase(o, &mut st)?;
    Ok(Solution { sink, queries: o.counter().since(start) })
}
