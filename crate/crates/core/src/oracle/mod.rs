//! Countable query interfaces.
//!
//! Every backend caches answers: a repeated query returns the cached answer
//! and is not counted again, and only counted queries enter the transcript.

mod adversary;
mod explicit;
mod induced;
mod inherited;
mod pad;
mod view;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Direction, EdgeRef, GridShape, VertexRef};
use crate::json::{one_based_2d, Arrow};

pub use adversary::AdversaryVertexOracle;
pub use explicit::{ExplicitEdgeOracle, ExplicitVertexOracle};
pub use induced::{induced_grid, induced_relation_is_tournament, InducedVertexOracle, PartitionPair};
pub use inherited::{BlockView, DVertexAnswer, DVertexOracle, ExplicitDVertexOracle, InheritedVertexOracle};
pub use pad::PaddedEdgeOracle;
pub use view::{SubgridEdgeOracle, TransposedVertexOracle};

/// Queries charged so far, by kind.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryCounter {
    pub vertex: u64,
    pub edge: u64,
}

impl QueryCounter {
    pub fn total(&self) -> u64 {
        self.vertex + self.edge
    }

    /// Queries charged since `earlier`.
    pub fn since(&self, earlier: QueryCounter) -> QueryCounter {
        QueryCounter { vertex: self.vertex - earlier.vertex, edge: self.edge - earlier.edge }
    }
}

impl fmt::Display for QueryCounter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertex / {} edge queries", self.vertex, self.edge)
    }
}

/// Orientation of every edge at one vertex. Both lists follow
/// [`GridShape::neighbors`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexAnswer {
    pub vertex: VertexRef,
    pub incoming: Vec<VertexRef>,
    pub outgoing: Vec<VertexRef>,
}

impl VertexAnswer {
    pub fn is_sink(&self) -> bool {
        self.outgoing.is_empty()
    }

    /// Splits the neighbours of `v` by the predicate "v points to w".
    pub fn from_fn<F>(shape: GridShape, v: VertexRef, mut points_to: F) -> Result<Self>
    where
        F: FnMut(VertexRef) -> Result<bool>,
    {
        let mut incoming = Vec::new();
        let mut outgoing = Vec::new();
        for w in shape.neighbors(v) {
            if points_to(w)? {
                outgoing.push(w);
            } else {
                incoming.push(w);
            }
        }
        Ok(VertexAnswer { vertex: v, incoming, outgoing })
    }
}

/// Vertex-query model: one query reveals every edge at a vertex.
pub trait VertexOracle {
    fn shape(&self) -> GridShape;

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer>;

    fn counter(&self) -> QueryCounter;
}

/// Edge-query model: one query reveals one edge.
pub trait EdgeOracle {
    fn shape(&self) -> GridShape;

    fn query_edge(&mut self, e: EdgeRef) -> Result<Direction>;

    fn counter(&self) -> QueryCounter;

    /// Whether the edge `from -> to` exists, via one edge query.
    fn points_to(&mut self, from: VertexRef, to: VertexRef) -> Result<bool> {
        let e = EdgeRef::new(from, to)?;
        Ok(self.query_edge(e)?.head(e) == to)
    }
}

impl<T: VertexOracle + ?Sized> VertexOracle for &mut T {
    fn shape(&self) -> GridShape {
        (**self).shape()
    }

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer> {
        (**self).query(v)
    }

    fn counter(&self) -> QueryCounter {
        (**self).counter()
    }
}

impl<T: EdgeOracle + ?Sized> EdgeOracle for &mut T {
    fn shape(&self) -> GridShape {
        (**self).shape()
    }

    fn query_edge(&mut self, e: EdgeRef) -> Result<Direction> {
        (**self).query_edge(e)
    }

    fn counter(&self) -> QueryCounter {
        (**self).counter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TranscriptEntry {
    Vertex(VertexAnswer),
    Edge(EdgeRef, Direction),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum QueryDoc {
    Vertex { v: Vec<usize> },
    Edge { a: Vec<usize>, b: Vec<usize> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AnswerDoc {
    Vertex {
        #[serde(rename = "in")]
        incoming: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    },
    Edge {
        dir: Arrow,
    },
}

#[derive(Serialize, Deserialize)]
struct LineDoc {
    q: QueryDoc,
    a: AnswerDoc,
}

fn vertex_from(x: &[usize]) -> Result<VertexRef> {
    match x {
        &[i, j] if i > 0 && j > 0 => Ok(VertexRef::new(i - 1, j - 1)),
        _ => Err(Error::InvalidCoordinate(x.to_vec())),
    }
}

impl TranscriptEntry {
    pub fn to_json(&self) -> String {
        let line = match self {
            TranscriptEntry::Vertex(a) => LineDoc {
                q: QueryDoc::Vertex { v: one_based_2d(a.vertex) },
                a: AnswerDoc::Vertex {
                    incoming: a.incoming.iter().map(|&w| one_based_2d(w)).collect(),
                    out: a.outgoing.iter().map(|&w| one_based_2d(w)).collect(),
                },
            },
            TranscriptEntry::Edge(e, d) => LineDoc {
                q: QueryDoc::Edge { a: one_based_2d(e.first()), b: one_based_2d(e.second()) },
                a: AnswerDoc::Edge {
                    dir: match d {
                        Direction::TowardSecond => Arrow::AToB,
                        Direction::TowardFirst => Arrow::BToA,
                    },
                },
            },
        };
        serde_json::to_string(&line).expect("transcript lines always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let line: LineDoc = serde_json::from_str(text)?;
        match (line.q, line.a) {
            (QueryDoc::Vertex { v }, AnswerDoc::Vertex { incoming, out }) => {
                Ok(TranscriptEntry::Vertex(VertexAnswer {
                    vertex: vertex_from(&v)?,
                    incoming: incoming.iter().map(|w| vertex_from(w)).collect::<Result<_>>()?,
                    outgoing: out.iter().map(|w| vertex_from(w)).collect::<Result<_>>()?,
                }))
            }
            (QueryDoc::Edge { a, b }, AnswerDoc::Edge { dir }) => {
                let (a, b) = (vertex_from(&a)?, vertex_from(&b)?);
                let e = EdgeRef::new(a, b)?;
                let (from, to) = match dir {
                    Arrow::AToB => (a, b),
                    Arrow::BToA => (b, a),
                };
                Ok(TranscriptEntry::Edge(e, Direction::pointing(from, to)))
            }
            _ => Err(Error::Inconsistent("transcript line mixes query and answer kinds".into())),
        }
    }
}

/// Ordered record of the counted queries of one interaction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn push(&mut self, entry: TranscriptEntry) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn queried_vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        self.entries.iter().filter_map(|e| match e {
            TranscriptEntry::Vertex(a) => Some(a.vertex),
            TranscriptEntry::Edge(..) => None,
        })
    }

    /// One JSON object per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.to_json());
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let entries = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(TranscriptEntry::from_json)
            .collect::<Result<_>>()?;
        Ok(Transcript { entries })
    }

    /// Re-asks every vertex query and compares serialized answers. Returns
    /// the index of the first mismatching entry, if any.
    pub fn replay_vertices(&self, oracle: &mut dyn VertexOracle) -> Result<Option<usize>> {
        for (i, entry) in self.entries.iter().enumerate() {
            if let TranscriptEntry::Vertex(a) = entry {
                let again = TranscriptEntry::Vertex(oracle.query(a.vertex)?);
                if again.to_json() != entry.to_json() {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    pub fn replay_edges(&self, oracle: &mut dyn EdgeOracle) -> Result<Option<usize>> {
        for (i, entry) in self.entries.iter().enumerate() {
            if let TranscriptEntry::Edge(e, d) = entry {
                if oracle.query_edge(*e)? != *d {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }
}
