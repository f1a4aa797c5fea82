// SPDX-License-Identifier: Apache-2.0
//! Processing functions as ordered lists of guarded statements.

use std::fmt;

use smallvec::SmallVec;

use crate::error::Result;
use crate::graph::Graph;
use crate::machine::state::{StateStore, VertexState};
use crate::machine::workitem::{WorkItem, WorkItemSchema};

/// Values a statement computes once per evaluation and shares between its
/// condition, update and constructor (e.g. a freshly computed rank).
pub type Locals = SmallVec<[f64; 4]>;

/// Read-only view handed to conditions and constructors.
#[derive(Clone, Copy)]
pub struct PfContext<'a> {
    pub graph: &'a Graph,
    pub states: &'a StateStore,
}

type PreludeFn = dyn Fn(&WorkItem, &PfContext<'_>) -> Locals + Send + Sync;
type ConditionFn = dyn Fn(&WorkItem, &PfContext<'_>, &Locals) -> bool + Send + Sync;
type UpdateFn = dyn Fn(&WorkItem, &VertexState<'_>, &Locals) + Send + Sync;
type ConstructorFn = dyn Fn(&WorkItem, &PfContext<'_>, &Locals, &mut Vec<WorkItem>) + Send + Sync;

/// `<constructor, state_update, condition>`.
///
/// A statement without a constructor only updates state; its output is empty.
pub struct Statement {
    prelude: Option<Box<PreludeFn>>,
    condition: Box<ConditionFn>,
    update: Option<Box<UpdateFn>>,
    constructor: Option<Box<ConstructorFn>>,
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Statement")
            .field("prelude", &self.prelude.is_some())
            .field("update", &self.update.is_some())
            .field("constructor", &self.constructor.is_some())
            .finish()
    }
}

impl Statement {
    pub fn when(condition: impl Fn(&WorkItem, &PfContext<'_>, &Locals) -> bool + Send + Sync + 'static) -> Self {
        Statement { prelude: None, condition: Box::new(condition), update: None, constructor: None }
    }

    /// Computes locals before the condition is evaluated.
    pub fn with_locals(
        mut self,
        prelude: impl Fn(&WorkItem, &PfContext<'_>) -> Locals + Send + Sync + 'static,
    ) -> Self {
        self.prelude = Some(Box::new(prelude));
        self
    }

    pub fn update(mut self, update: impl Fn(&WorkItem, &VertexState<'_>, &Locals) + Send + Sync + 'static) -> Self {
        self.update = Some(Box::new(update));
        self
    }

    pub fn emit(
        mut self,
        constructor: impl Fn(&WorkItem, &PfContext<'_>, &Locals, &mut Vec<WorkItem>) + Send + Sync + 'static,
    ) -> Self {
        self.constructor = Some(Box::new(constructor));
        self
    }
}

/// Statements are tried in order; the first whose condition holds fires.
#[derive(Debug, Default)]
pub struct ProcessingFunction {
    statements: Vec<Statement>,
}

impl ProcessingFunction {
    pub fn new(statements: Vec<Statement>) -> Self {
        ProcessingFunction { statements }
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    /// Runs the first matching statement, appending its outputs to `out`.
    /// Returns whether a statement fired. Does not check schemas.
    pub(crate) fn apply(&self, w: &WorkItem, ctx: &PfContext<'_>, out: &mut Vec<WorkItem>) -> bool {
        for st in &self.statements {
            let locals = st.prelude.as_ref().map(|p| p(w, ctx)).unwrap_or_default();
            if !(st.condition)(w, ctx, &locals) {
                continue;
            }
            if let Some(update) = &st.update {
                update(w, &VertexState::new(ctx.states, w.vertex), &locals);
            }
            if let Some(cons) = &st.constructor {
                cons(w, ctx, &locals, out);
            }
            return true;
        }
        false
    }
}

/// Result of one processing-function evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub applied: bool,
    pub outputs: Vec<WorkItem>,
}

/// Evaluates `pf` on `w`, checking the input and every output against `schema`.
pub fn evaluate_pf(
    pf: &ProcessingFunction,
    schema: &WorkItemSchema,
    w: &WorkItem,
    states: &StateStore,
    graph: &Graph,
) -> Result<Evaluation> {
    let n = graph.vertex_count();
    schema.check(w, n)?;
    let mut outputs = Vec::new();
    let applied = pf.apply(w, &PfContext { graph, states }, &mut outputs);
    for o in &outputs {
        schema.check(o, n)?;
    }
    Ok(Evaluation { applied, outputs })
}
