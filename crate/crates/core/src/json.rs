//! Grid JSON documents. Coordinates are 1-based on the wire.
//!
//! ```json
//! {"shape":[2,2],"values":[[1,2],[3,4]]}
//! {"shape":[1,2],"edges":[{"a":[1,1],"b":[1,2],"dir":"ba"}]}
//! {"dims":[2,2,2],"edges":[{"a":[1,1,1],"b":[1,1,2],"dir":"ab"}, ...]}
//! ```
//! `"dir":"ab"` means the edge points from `a` to `b`.

use serde::{Deserialize, Serialize};

use crate::ddim::{DGridShape, DOrientedGrid};
use crate::error::{Error, Result};
use crate::grid::{Direction, EdgeRef, GridShape, OrientedGrid, ValueMatrix, VertexRef};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    values: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<EdgeDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    a: Vec<usize>,
    b: Vec<usize>,
    dir: Arrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Arrow {
    #[serde(rename = "ab")]
    AToB,
    #[serde(rename = "ba")]
    BToA,
}

/// A parsed grid document.
#[derive(Clone, Debug)]
pub enum GridFile {
    Values(ValueMatrix),
    Edges(OrientedGrid),
    DDim(DOrientedGrid),
}

impl GridFile {
    pub fn parse(text: &str) -> Result<GridFile> {
        let doc: GridDoc = serde_json::from_str(text)?;
        match (doc.shape, doc.dims, doc.values, doc.edges) {
            (Some([m, n]), None, Some(values), None) => {
                let shape = GridShape::new(m, n)?;
                if values.len() != m || values.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidShape(format!("values do not match shape {shape}")));
                }
                Ok(GridFile::Values(ValueMatrix::new(shape, values.concat())?))
            }
            (Some([m, n]), None, None, Some(edges)) => {
                let shape = GridShape::new(m, n)?;
                let mut list = Vec::with_capacity(edges.len());
                for e in edges {
                    let (a, b) = (vertex_2d(&e.a)?, vertex_2d(&e.b)?);
                    let edge = EdgeRef::new(a, b)?;
                    let (from, to) = match e.dir {
                        Arrow::AToB => (a, b),
                        Arrow::BToA => (b, a),
                    };
                    list.push((edge, Direction::pointing(from, to)));
                }
                Ok(GridFile::Edges(OrientedGrid::from_edges(shape, list)?))
            }
            (None, Some(dims), None, Some(edges)) => {
                let shape = DGridShape::new(dims)?;
                let mut list = Vec::with_capacity(edges.len());
                for e in edges {
                    let (a, b) = (zero_based(&e.a)?, zero_based(&e.b)?);
                    let dir = match e.dir {
                        Arrow::AToB => Direction::TowardSecond,
                        Arrow::BToA => Direction::TowardFirst,
                    };
                    list.push((a, b, dir));
                }
                Ok(GridFile::DDim(DOrientedGrid::from_edges(shape, list)?))
            }
            _ => Err(Error::InvalidShape(
                "expected exactly one of {shape, values}, {shape, edges} or {dims, edges}".into(),
            )),
        }
    }

    /// The 2-dimensional orientation, if this is a 2-dimensional document.
    pub fn oriented(&self) -> Option<OrientedGrid> {
        match self {
            GridFile::Values(vm) => Some(vm.orient()),
            GridFile::Edges(g) => Some(g.clone()),
            GridFile::DDim(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        let doc = match self {
            GridFile::Values(vm) => GridDoc {
                shape: Some([vm.shape().rows, vm.shape().cols]),
                dims: None,
                values: Some(vm.rows()),
                edges: None,
            },
            GridFile::Edges(g) => GridDoc {
                shape: Some([g.shape().rows, g.shape().cols]),
                dims: None,
                values: None,
                edges: Some(
                    g.edges()
                        .map(|(e, d)| EdgeDoc {
                            a: one_based_2d(e.first()),
                            b: one_based_2d(e.second()),
                            dir: arrow(d),
                        })
                        .collect(),
                ),
            },
            GridFile::DDim(g) => GridDoc {
                shape: None,
                dims: Some(g.shape().dims().to_vec()),
                values: None,
                edges: Some(
                    g.shape()
                        .edges()
                        .into_iter()
                        .map(|(u, v)| {
                            let dir = if g.points_to(&u, &v) { Arrow::AToB } else { Arrow::BToA };
                            EdgeDoc { a: one_based(&u), b: one_based(&v), dir }
                        })
                        .collect(),
                ),
            },
        };
        serde_json::to_string(&doc).expect("grid documents always serialize")
    }
}

fn arrow(d: Direction) -> Arrow {
    match d {
        Direction::TowardSecond => Arrow::AToB,
        Direction::TowardFirst => Arrow::BToA,
    }
}

pub(crate) fn one_based_2d(v: VertexRef) -> Vec<usize> {
    vec![v.row + 1, v.col + 1]
}

pub(crate) fn one_based(x: &[usize]) -> Vec<usize> {
    x.iter().map(|c| c + 1).collect()
}

fn zero_based(x: &[usize]) -> Result<Vec<usize>> {
    x.iter().map(|&c| c.checked_sub(1).ok_or_else(|| Error::InvalidCoordinate(x.to_vec()))).collect()
}

fn vertex_2d(x: &[usize]) -> Result<VertexRef> {
    match zero_based(x)?.as_slice() {
        &[i, j] => Ok(VertexRef::new(i, j)),
        _ => Err(Error::InvalidCoordinate(x.to_vec())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn values_document() {
        let f = GridFile::parse(r#"{"shape":[2,2],"values":[[1,2],[3,4]]}"#).unwrap();
        let g = f.oriented().unwrap();
        assert_eq!(g.brute_force_sink().unwrap(), VertexRef::new(0, 0));
        assert_eq!(f.to_json(), r#"{"shape":[2,2],"values":[[1.0,2.0],[3.0,4.0]]}"#);
    }

    #[test]
    fn edges_document() {
        let f = GridFile::parse(r#"{"shape":[1,2],"edges":[{"a":[1,1],"b":[1,2],"dir":"ba"}]}"#).unwrap();
        let g = f.oriented().unwrap();
        assert_eq!(g.brute_force_sink().unwrap(), VertexRef::new(0, 0));
        let again = GridFile::parse(&GridFile::Edges(g.clone()).to_json()).unwrap();
        assert_eq!(again.oriented().unwrap(), g);
    }

    #[test]
    fn ddim_document_round_trip() {
        let g = gen::gen_separable_ddim(&[2, 3, 2], 4).unwrap();
        let text = GridFile::DDim(g.clone()).to_json();
        match GridFile::parse(&text).unwrap() {
            GridFile::DDim(back) => assert_eq!(back, g),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed() {
        // both values and edges
        assert!(GridFile::parse(r#"{"shape":[1,1],"values":[[1]],"edges":[]}"#).is_err());
        // missing edge
        assert!(GridFile::parse(r#"{"shape":[1,2],"edges":[]}"#).is_err());
        // 0 is not a 1-based coordinate
        assert!(GridFile::parse(r#"{"shape":[1,2],"edges":[{"a":[0,1],"b":[1,2],"dir":"ab"}]}"#).is_err());
        assert!(GridFile::parse(r#"{"shape":[0,2],"values":[]}"#).is_err());
        assert!(GridFile::parse(r#"{"shape":[1,2],"values":[[1,1]]}"#).is_err());
        assert!(GridFile::parse(r#"{"shape":[1,2],"values":[[1,2]],"extra":1}"#).is_err());
    }
}
