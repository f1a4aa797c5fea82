// SPDX-License-Identifier: Apache-2.0
//! Machine vocabulary: workitems, orderings, processing functions, states and
//! the instance record tying them to a graph.

pub mod ordering;
pub mod pf;
pub mod state;
pub mod workitem;

pub use ordering::{
    check_swo_axioms, check_swo_axioms_with, make_ordering, ClassKey, ClassRank, Direction, OrderingDescriptor,
    OrderingKind, Relation, SwoReport,
};
pub use pf::{evaluate_pf, Evaluation, Locals, PfContext, ProcessingFunction, Statement};
pub use state::{FinalMap, FinalStates, StateDecl, StateId, StateStore, VertexState};
pub use workitem::{Scalar, ScalarKind, WorkItem, WorkItemSchema};

use crate::error::{AgmError, Result};
use crate::graph::Graph;

/// An executable machine: graph, workitem schema, states, processing
/// function, ordering and initial workitems.
#[derive(Debug)]
pub struct AgmInstance<'g> {
    pub graph: &'g Graph,
    pub schema: WorkItemSchema,
    pub states: Vec<StateDecl>,
    pub pf: ProcessingFunction,
    pub ordering: OrderingDescriptor,
    pub initial: Vec<WorkItem>,
    pub needs_transpose: bool,
}

impl AgmInstance<'_> {
    pub fn validate(&self) -> Result<()> {
        let n = self.graph.vertex_count();
        for w in &self.initial {
            self.schema.check(w, n)?;
        }
        for (i, d) in self.states.iter().enumerate() {
            if self.states[..i].iter().any(|e| e.name == d.name) {
                return Err(AgmError::Contract(format!("duplicate state map '{}'", d.name)));
            }
        }
        Ok(())
    }

    pub fn with_ordering(mut self, ordering: OrderingDescriptor) -> Self {
        self.ordering = ordering;
        self
    }
}
