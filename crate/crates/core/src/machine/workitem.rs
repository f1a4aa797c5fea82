// SPDX-License-Identifier: Apache-2.0
use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{AgmError, Result};
use crate::graph::VertexId;

/// Kind of a workitem attribute or state value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Int,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Int(i64),
    Real(f64),
}

impl Scalar {
    pub fn kind(self) -> ScalarKind {
        match self {
            Scalar::Int(_) => ScalarKind::Int,
            Scalar::Real(_) => ScalarKind::Real,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Scalar::Int(i) => i as f64,
            Scalar::Real(x) => x,
        }
    }

    /// Total order used for tie-breaking; not the machine's ordering relation.
    pub fn total_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => a.cmp(b),
            _ => self.as_f64().total_cmp(&other.as_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Real(x) => write!(f, "{x}"),
        }
    }
}

/// A unit of work: the indexed vertex plus a fixed-arity attribute tuple.
///
/// Positional access follows the bracket convention: `w.at(0)` is the vertex,
/// `w.at(k)` for `k >= 1` is the `k`-th attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkItem {
    pub vertex: VertexId,
    attrs: SmallVec<[Scalar; 2]>,
}

impl WorkItem {
    pub fn new(vertex: VertexId, attrs: impl IntoIterator<Item = Scalar>) -> Self {
        WorkItem { vertex, attrs: attrs.into_iter().collect() }
    }

    pub fn real(vertex: VertexId, value: f64) -> Self {
        WorkItem { vertex, attrs: smallvec::smallvec![Scalar::Real(value)] }
    }

    pub fn int(vertex: VertexId, value: i64) -> Self {
        WorkItem { vertex, attrs: smallvec::smallvec![Scalar::Int(value)] }
    }

    pub fn attrs(&self) -> &[Scalar] {
        &self.attrs
    }

    pub fn at(&self, k: usize) -> Scalar {
        if k == 0 {
            Scalar::Int(i64::from(self.vertex.0))
        } else {
            self.attrs[k - 1]
        }
    }

    /// `w[k]` as a real, `k >= 1`.
    #[inline]
    pub fn value(&self, k: usize) -> f64 {
        self.attrs[k - 1].as_f64()
    }

    /// Lexicographic total order on (attributes, vertex).
    pub fn total_cmp(&self, other: &WorkItem) -> Ordering {
        self.attrs
            .iter()
            .zip(other.attrs.iter())
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or_else(|| self.attrs.len().cmp(&other.attrs.len()))
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl fmt::Display for WorkItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.vertex)?;
        for a in &self.attrs {
            write!(f, ", {a}")?;
        }
        write!(f, ">")
    }
}

/// Names and kinds of a workitem's attributes (positions 1..).
#[derive(Debug, Clone, PartialEq)]
pub struct WorkItemSchema {
    names: Vec<String>,
    kinds: Vec<ScalarKind>,
}

impl WorkItemSchema {
    pub fn new<S: Into<String>>(fields: impl IntoIterator<Item = (S, ScalarKind)>) -> Self {
        let (names, kinds) = fields.into_iter().map(|(n, k)| (n.into(), k)).unzip();
        WorkItemSchema { names, kinds }
    }

    pub fn arity(&self) -> usize {
        self.kinds.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kinds(&self) -> &[ScalarKind] {
        &self.kinds
    }

    pub fn check(&self, w: &WorkItem, n: usize) -> Result<()> {
        if w.vertex.index() >= n {
            return Err(AgmError::Contract(format!("workitem {w} indexes vertex outside [0, {n})")));
        }
        if w.attrs.len() != self.kinds.len() {
            return Err(AgmError::Contract(format!(
                "workitem {w} has arity {}, schema expects {}",
                w.attrs.len(),
                self.kinds.len()
            )));
        }
        for (i, (a, k)) in w.attrs.iter().zip(&self.kinds).enumerate() {
            if a.kind() != *k {
                return Err(AgmError::Contract(format!("workitem {w}: attribute '{}' should be {k:?}", self.names[i])));
            }
            if let Scalar::Real(x) = a {
                if x.is_nan() {
                    return Err(AgmError::Contract(format!("workitem {w} carries NaN")));
                }
            }
        }
        Ok(())
    }
}
