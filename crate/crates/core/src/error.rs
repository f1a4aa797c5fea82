// SPDX-License-Identifier: Apache-2.0
use thiserror::Error;

/// Errors from graph construction and loading.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid graph: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors raised while building or executing a machine instance.
#[derive(Debug, Error)]
pub enum AgmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// Invalid algorithm or ordering parameter.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// A workitem or state access broke the instance's schema.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Strict mode saw an output ordered before the class being drained.
    #[error("ordering violation in phase {phase}: item for vertex {vertex} precedes the current class")]
    OrderingViolation { phase: usize, vertex: u32 },
}

pub type Result<T, E = AgmError> = std::result::Result<T, E>;
