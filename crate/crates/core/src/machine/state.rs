// SPDX-License-Identifier: Apache-2.0
//! Vertex-indexed state mappings.
//!
//! Cells are atomic: concurrent ranks read any partition and write only their
//! own. Writes go through [`VertexState`], pinned to the vertex indexed by the
//! workitem being processed.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{AgmError, Result};
use crate::graph::VertexId;
use crate::machine::workitem::ScalarKind;

/// Handle to one state map of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateId(pub(crate) usize);

/// Declaration of a state map: name, value kind and fill value.
#[derive(Debug, Clone, PartialEq)]
pub struct StateDecl {
    pub name: String,
    pub kind: ScalarKind,
    pub init: f64,
}

impl StateDecl {
    pub fn new(name: impl Into<String>, kind: ScalarKind, init: f64) -> Self {
        StateDecl { name: name.into(), kind, init }
    }
}

#[derive(Debug)]
struct StateMap {
    decl: StateDecl,
    cells: Vec<AtomicU64>,
}

/// Live state maps for one run.
#[derive(Debug)]
pub struct StateStore {
    maps: Vec<StateMap>,
    n: usize,
}

impl StateStore {
    pub fn new(decls: &[StateDecl], n: usize) -> Self {
        let maps = decls
            .iter()
            .map(|d| StateMap { decl: d.clone(), cells: (0..n).map(|_| AtomicU64::new(d.init.to_bits())).collect() })
            .collect();
        StateStore { maps, n }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn id(&self, name: &str) -> Option<StateId> {
        self.maps.iter().position(|m| m.decl.name == name).map(StateId)
    }

    #[inline]
    pub fn get(&self, id: StateId, v: VertexId) -> f64 {
        f64::from_bits(self.maps[id.0].cells[v.index()].load(Ordering::Relaxed))
    }

    #[inline]
    fn set(&self, id: StateId, v: VertexId, value: f64) {
        self.maps[id.0].cells[v.index()].store(value.to_bits(), Ordering::Relaxed);
    }

    pub fn values(&self, id: StateId) -> Vec<f64> {
        self.maps[id.0].cells.iter().map(|c| f64::from_bits(c.load(Ordering::Relaxed))).collect()
    }

    pub fn max(&self, id: StateId) -> f64 {
        self.values(id).into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn into_final(self) -> FinalStates {
        FinalStates {
            maps: self
                .maps
                .into_iter()
                .map(|m| FinalMap {
                    values: m.cells.into_iter().map(|c| f64::from_bits(c.into_inner())).collect(),
                    decl: m.decl,
                })
                .collect(),
        }
    }
}

/// Write access to the state of one vertex, handed to a statement's update.
#[derive(Debug, Clone, Copy)]
pub struct VertexState<'a> {
    store: &'a StateStore,
    vertex: VertexId,
}

impl<'a> VertexState<'a> {
    pub(crate) fn new(store: &'a StateStore, vertex: VertexId) -> Self {
        VertexState { store, vertex }
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    #[inline]
    pub fn get(&self, id: StateId) -> f64 {
        self.store.get(id, self.vertex)
    }

    #[inline]
    pub fn set(&self, id: StateId, value: f64) {
        self.store.set(id, self.vertex, value)
    }
}

/// A state map after a run completed.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalMap {
    pub decl: StateDecl,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinalStates {
    maps: Vec<FinalMap>,
}

impl FinalStates {
    pub fn get(&self, name: &str) -> Option<&[f64]> {
        self.map(name).map(|m| m.values.as_slice())
    }

    pub fn map(&self, name: &str) -> Option<&FinalMap> {
        self.maps.iter().find(|m| m.decl.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&[f64]> {
        self.get(name).ok_or_else(|| AgmError::Contract(format!("no state map named '{name}'")))
    }

    pub fn iter(&self) -> impl Iterator<Item = &FinalMap> {
        self.maps.iter()
    }
}
