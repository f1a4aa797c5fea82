// SPDX-License-Identifier: Apache-2.0
//! Abstract Graph Machine runtime.
//!
//! A machine is a graph, a workitem schema, vertex-indexed state maps, a
//! processing function, a strict weak ordering over workitems and an initial
//! workitem set. The [`engine`] groups pending workitems into equivalence
//! classes and drains them in class order across simulated ranks.
//!
//! [`algorithms`] packages SSSP (Dijkstra, delta-stepping, chaotic), BFS
//! (level-synchronous, k-level asynchronous), PageRank (residual-ordered and
//! iterative) and connected components as machine instances; [`oracles`]
//! holds independent sequential references for them.
//!
//! ```
//! use agm::algorithms::{sssp_instance, SsspOrdering, SsspParams};
//! use agm::graph::generate_random;
//! use agm::{run, Distribution, EngineConfig, Policy, VertexId};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let g = generate_random(200, 0.05, 7, (1.0, 10.0), false)?;
//! let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: SsspOrdering::Delta(4) })?;
//! let cfg = EngineConfig { distribution: Distribution::new(4, Policy::Cyclic)?, ..EngineConfig::default() };
//! let result = run(&inst, &cfg, None)?;
//! assert_eq!(result.states.get("distance").unwrap()[0], 0.0);
//! assert_eq!(result.stats.monotonicity_violations, 0);
//! # Ok(())
//! # }
//! ```

pub mod algorithms;
pub mod cli;
pub mod engine;
pub mod error;
pub mod graph;
pub mod machine;
pub mod oracles;

pub use engine::{run, Control, EngineConfig, EngineStats, MonotonicityMode, PhaseObserver, PhaseRecord, RunResult};
pub use error::{AgmError, GraphError, Result};
pub use graph::{Distribution, Graph, Policy, VertexId};
pub use machine::{AgmInstance, OrderingDescriptor, OrderingKind, WorkItem};
