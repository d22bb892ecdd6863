use std::collections::HashMap;

use super::{EdgeOracle, QueryCounter, Transcript, TranscriptEntry, VertexAnswer, VertexOracle};
use crate::error::Result;
use crate::grid::{Direction, EdgeRef, GridShape, Orientation, VertexRef};

/// Vertex queries answered from a known orientation (an explicit grid, a
/// value matrix, or anything else implementing [`Orientation`]).
pub struct ExplicitVertexOracle<O> {
    source: O,
    cache: HashMap<VertexRef, VertexAnswer>,
    counter: QueryCounter,
    transcript: Option<Transcript>,
}

impl<O: Orientation> ExplicitVertexOracle<O> {
    pub fn new(source: O) -> Self {
        ExplicitVertexOracle {
            source,
            cache: HashMap::new(),
            counter: QueryCounter::default(),
            transcript: Some(Transcript::default()),
        }
    }

    /// Skip transcript recording (long benchmark runs).
    pub fn without_transcript(mut self) -> Self {
        self.transcript = None;
        self
    }

    pub fn transcript(&self) -> Option<&Transcript> {
        self.transcript.as_ref()
    }

    pub fn source(&self) -> &O {
        &self.source
    }
}

impl<O: Orientation> VertexOracle for ExplicitVertexOracle<O> {
    fn shape(&self) -> GridShape {
        self.source.shape()
    }

    fn query(&mut self, v: VertexRef) -> Result<VertexAnswer> {
        self.source.shape().check(v)?;
        if let Some(a) = self.cache.get(&v) {
            return Ok(a.clone());
        }
        let src = &self.source;
        let answer = VertexAnswer::from_fn(src.shape(), v, |w| Ok(src.points_to(v, w)))?;
        self.counter.vertex += 1;
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry::Vertex(answer.clone()));
        }
        self.cache.insert(v, answer.clone());
        Ok(answer)
    }

    fn counter(&self) -> QueryCounter {
        self.counter
    }
}

/// Edge queries answered from a known orientation.
pub struct ExplicitEdgeOracle<O> {
    source: O,
    cache: HashMap<EdgeRef, Direction>,
    counter: QueryCounter,
    transcript: Option<Transcript>,
}

impl<O: Orientation> ExplicitEdgeOracle<O> {
    pub fn new(source: O) -> Self {
        ExplicitEdgeOracle {
            source,
            cache: HashMap::new(),
            counter: QueryCounter::default(),
            transcript: Some(Transcript::default()),
        }
    }

    pub fn without_transcript(mut self) -> Self {
        self.transcript = None;
        self
    }

    pub fn transcript(&self) -> Option<&Transcript> {
        self.transcript.as_ref()
    }

    pub fn source(&self) -> &O {
        &self.source
    }
}

impl<O: Orientation> EdgeOracle for ExplicitEdgeOracle<O> {
    fn shape(&self) -> GridShape {
        self.source.shape()
    }

    fn query_edge(&mut self, e: EdgeRef) -> Result<Direction> {
        self.source.shape().check_edge(e)?;
        if let Some(&d) = self.cache.get(&e) {
            return Ok(d);
        }
        let d = self.source.direction(e);
        self.counter.edge += 1;
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry::Edge(e, d));
        }
        self.cache.insert(e, d);
        Ok(d)
    }

    fn counter(&self) -> QueryCounter {
        self.counter
    }
}
