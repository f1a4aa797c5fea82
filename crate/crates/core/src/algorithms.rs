// SPDX-License-Identifier: Apache-2.0
//! Machine instances for SSSP, BFS, PageRank and connected components.

use crate::engine::{Control, EngineStats, PhaseObserver};
use crate::error::{AgmError, Result};
use crate::graph::{Graph, VertexId};
use crate::machine::{
    make_ordering, AgmInstance, Locals, OrderingKind, PfContext, ProcessingFunction, ScalarKind, StateDecl, StateId,
    StateStore, Statement, WorkItem, WorkItemSchema,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsspOrdering {
    Dijkstra,
    Delta(u64),
    Chaotic,
}

impl SsspOrdering {
    pub fn kind(self) -> OrderingKind {
        match self {
            SsspOrdering::Dijkstra => OrderingKind::Dijkstra,
            SsspOrdering::Delta(d) => OrderingKind::Delta(d),
            SsspOrdering::Chaotic => OrderingKind::Chaotic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SsspParams {
    pub source: VertexId,
    pub ordering: SsspOrdering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BfsOrdering {
    Level,
    Kla(u64),
}

impl BfsOrdering {
    pub fn kind(self) -> OrderingKind {
        match self {
            BfsOrdering::Level => OrderingKind::Level,
            BfsOrdering::Kla(k) => OrderingKind::Kla(k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BfsParams {
    pub source: VertexId,
    pub ordering: BfsOrdering,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PagerankParams {
    /// Teleportation parameter, in (0, 1).
    pub alpha: f64,
    /// Minimum rank increase that is applied and pushed.
    pub epsilon: f64,
}

impl PagerankParams {
    fn check(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(AgmError::Parameter(format!("alpha {} not in (0, 1)", self.alpha)));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(AgmError::Parameter(format!("epsilon {} must be positive", self.epsilon)));
        }
        Ok(())
    }
}

fn check_source(g: &Graph, source: VertexId) -> Result<()> {
    if source.index() >= g.vertex_count() {
        return Err(AgmError::Parameter(format!("source {source} out of range for {} vertices", g.vertex_count())));
    }
    Ok(())
}

/// Label-correcting SSSP. Relaxes `w[1] + weight(w[0], u)` into every out-neighbor
/// whenever `w[1]` improves `distance(w[0])`.
pub fn sssp_instance<'g>(g: &'g Graph, p: &SsspParams) -> Result<AgmInstance<'g>> {
    check_source(g, p.source)?;
    if let Some(w) = g.weights().and_then(|ws| ws.iter().find(|w| w.is_nan() || **w < 0.0)) {
        return Err(AgmError::Parameter(format!("negative edge weight {w}")));
    }
    let distance = StateId(0);
    let relax = Statement::when(move |w, ctx, _| w.value(1) < ctx.states.get(distance, w.vertex))
        .update(move |w, s, _| s.set(distance, w.value(1)))
        .emit(|w, ctx, _, out| {
            let d = w.value(1);
            out.extend(ctx.graph.out_edges(w.vertex).map(|(u, wt)| WorkItem::real(u, d + wt)));
        });
    Ok(AgmInstance {
        graph: g,
        schema: WorkItemSchema::new([("distance", ScalarKind::Real)]),
        states: vec![StateDecl::new("distance", ScalarKind::Real, f64::INFINITY)],
        pf: ProcessingFunction::new(vec![relax]),
        ordering: make_ordering(p.ordering.kind())?,
        initial: vec![WorkItem::real(p.source, 0.0)],
        needs_transpose: false,
    })
}

/// Level-synchronous or k-level-asynchronous BFS. A vertex takes the level of
/// the first item that reaches it while its level is still unset.
pub fn bfs_instance<'g>(g: &'g Graph, p: &BfsParams) -> Result<AgmInstance<'g>> {
    check_source(g, p.source)?;
    let level = StateId(0);
    let visit = Statement::when(move |w, ctx, _| ctx.states.get(level, w.vertex).is_infinite())
        .update(move |w, s, _| s.set(level, w.value(1)))
        .emit(|w, ctx, _, out| {
            let next = w.value(1) as i64 + 1;
            out.extend(ctx.graph.out_neighbors(w.vertex).iter().map(|&u| WorkItem::int(VertexId(u), next)));
        });
    Ok(AgmInstance {
        graph: g,
        schema: WorkItemSchema::new([("level", ScalarKind::Int)]),
        states: vec![StateDecl::new("vertex_level", ScalarKind::Int, f64::INFINITY)],
        pf: ProcessingFunction::new(vec![visit]),
        ordering: make_ordering(p.ordering.kind())?,
        initial: vec![WorkItem::int(p.source, 0)],
        needs_transpose: false,
    })
}

/// `(1 - alpha) + alpha * sum(read(u) / outdeg(u))` over the in-neighbors `u` of `v`.
#[inline]
fn rank_formula(ctx: &PfContext<'_>, v: VertexId, alpha: f64, read: StateId) -> f64 {
    let g = ctx.graph;
    let mut sum = 0.0;
    for &u in g.in_neighbors(v) {
        let u = VertexId(u);
        sum += ctx.states.get(read, u) / g.out_degree(u) as f64;
    }
    (1.0 - alpha) + alpha * sum
}

/// Data-driven PageRank. Each activation recomputes the vertex's rank from its
/// in-neighbors; an increase above `epsilon` is applied and pushed as the
/// residual of one item per out-neighbor. Work is ordered largest residual first.
pub fn pagerank_instance<'g>(g: &'g Graph, p: &PagerankParams) -> Result<AgmInstance<'g>> {
    p.check()?;
    let (alpha, epsilon) = (p.alpha, p.epsilon);
    let rank = StateId(0);
    let recompute = Statement::when(move |_, _, l: &Locals| l[1] > epsilon)
        .with_locals(move |w, ctx| {
            let pr_new = rank_formula(ctx, w.vertex, alpha, rank);
            smallvec::smallvec![pr_new, pr_new - ctx.states.get(rank, w.vertex)]
        })
        .update(move |_, s, l| s.set(rank, l[0]))
        .emit(|w, ctx, l, out| {
            let delta = l[1];
            out.extend(ctx.graph.out_neighbors(w.vertex).iter().map(|&u| WorkItem::real(VertexId(u), delta)));
        });
    Ok(AgmInstance {
        graph: g,
        schema: WorkItemSchema::new([("residual", ScalarKind::Real)]),
        states: vec![StateDecl::new("rank", ScalarKind::Real, 0.0)],
        pf: ProcessingFunction::new(vec![recompute]),
        ordering: make_ordering(OrderingKind::Residual)?,
        initial: (0..g.vertex_count() as u32).map(|v| WorkItem::real(VertexId(v), 0.0)).collect(),
        needs_transpose: true,
    })
}

/// Search-based connected components: the smallest vertex id floods each component.
pub fn cc_instance(g: &Graph) -> Result<AgmInstance<'_>> {
    if g.is_directed() {
        return Err(AgmError::Parameter("connected components need an undirected graph".into()));
    }
    let component = StateId(0);
    let label = Statement::when(move |w, ctx, _| w.value(1) < ctx.states.get(component, w.vertex))
        .update(move |w, s, _| s.set(component, w.value(1)))
        .emit(|w, ctx, _, out| {
            let c = w.value(1) as i64;
            out.extend(ctx.graph.out_neighbors(w.vertex).iter().map(|&u| WorkItem::int(VertexId(u), c)));
        });
    Ok(AgmInstance {
        graph: g,
        schema: WorkItemSchema::new([("component", ScalarKind::Int)]),
        states: vec![StateDecl::new("component", ScalarKind::Int, f64::INFINITY)],
        pf: ProcessingFunction::new(vec![label]),
        ordering: make_ordering(OrderingKind::Component)?,
        initial: (0..g.vertex_count() as u32).map(|v| WorkItem::int(VertexId(v), i64::from(v))).collect(),
        needs_transpose: false,
    })
}

/// Halts an iterative run once the largest per-vertex change of the last
/// iteration drops below `epsilon`.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceObserver {
    delta: StateId,
    epsilon: f64,
}

impl ConvergenceObserver {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl PhaseObserver for ConvergenceObserver {
    fn after_phase(&mut self, states: &StateStore, _stats: &EngineStats) -> Control {
        if states.max(self.delta) < self.epsilon {
            Control::Halt
        } else {
            Control::Continue
        }
    }
}

/// Iterative (Jacobi) PageRank: every vertex is one item per iteration and each
/// iteration is one class.
///
/// Iteration `t` reads ranks from the buffer of parity `t` and writes parity
/// `t + 1`, so items of one class never observe each other's writes. `rank`
/// always holds the latest value of each vertex.
pub fn iterative_pagerank_instance<'g>(
    g: &'g Graph,
    p: &PagerankParams,
) -> Result<(AgmInstance<'g>, ConvergenceObserver)> {
    p.check()?;
    let alpha = p.alpha;
    let (rank, delta) = (StateId(0), StateId(1));
    let buffers = [StateId(2), StateId(3)];
    let parity = |w: &WorkItem| (w.value(1) as u64 % 2) as usize;
    let sweep = Statement::when(|_, _, _| true)
        .with_locals(move |w, ctx| {
            let read = buffers[parity(w)];
            let pr_new = rank_formula(ctx, w.vertex, alpha, read);
            smallvec::smallvec![pr_new, (pr_new - ctx.states.get(read, w.vertex)).abs()]
        })
        .update(move |w, s, l| {
            s.set(buffers[1 - parity(w)], l[0]);
            s.set(rank, l[0]);
            s.set(delta, l[1]);
        })
        .emit(|w, _, _, out| out.push(WorkItem::int(w.vertex, w.value(1) as i64 + 1)));
    let instance = AgmInstance {
        graph: g,
        schema: WorkItemSchema::new([("iteration", ScalarKind::Int)]),
        states: vec![
            StateDecl::new("rank", ScalarKind::Real, 0.0),
            StateDecl::new("delta_max", ScalarKind::Real, 0.0),
            StateDecl::new("rank_even", ScalarKind::Real, 0.0),
            StateDecl::new("rank_odd", ScalarKind::Real, 0.0),
        ],
        pf: ProcessingFunction::new(vec![sweep]),
        ordering: make_ordering(OrderingKind::Level)?,
        initial: (0..g.vertex_count() as u32).map(|v| WorkItem::int(VertexId(v), 0)).collect(),
        needs_transpose: true,
    };
    Ok((instance, ConvergenceObserver { delta, epsilon: p.epsilon }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, EngineConfig};
    use crate::graph::load_edge_list;
    use crate::machine::{evaluate_pf, StateStore, VertexState};

    fn graph(text: &str, directed: bool, weighted: bool) -> Graph {
        load_edge_list(text.as_bytes(), directed, weighted).unwrap()
    }

    const PR: PagerankParams = PagerankParams { alpha: 0.85, epsilon: 1e-10 };

    #[test]
    fn sssp_pf_examples() {
        let g = graph("0 1 2\n0 2 3", true, true);
        let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: SsspOrdering::Dijkstra }).unwrap();
        let states = StateStore::new(&inst.states, 3);
        let e = evaluate_pf(&inst.pf, &inst.schema, &WorkItem::real(VertexId(0), 5.0), &states, &g).unwrap();
        assert!(e.applied);
        assert_eq!(states.get(StateId(0), VertexId(0)), 5.0);
        assert_eq!(e.outputs, vec![WorkItem::real(VertexId(1), 7.0), WorkItem::real(VertexId(2), 8.0)]);

        VertexState::new(&states, VertexId(0)).set(StateId(0), 3.0);
        let e = evaluate_pf(&inst.pf, &inst.schema, &WorkItem::real(VertexId(0), 5.0), &states, &g).unwrap();
        assert!(!e.applied && e.outputs.is_empty());
        assert_eq!(states.get(StateId(0), VertexId(0)), 3.0);
    }

    #[test]
    fn cc_pf_state_only_update() {
        let iso = Graph::from_edges(3, &[(0, 1, 1.0)], false, false).unwrap();
        let inst = cc_instance(&iso).unwrap();
        let states = StateStore::new(&inst.states, 3);
        let e = evaluate_pf(&inst.pf, &inst.schema, &WorkItem::int(VertexId(2), 1), &states, &iso).unwrap();
        assert!(e.applied && e.outputs.is_empty());
        assert_eq!(states.get(StateId(0), VertexId(2)), 1.0);
    }

    #[test]
    fn sssp_path_all_orderings() {
        let g = graph("0 1 1\n1 2 2", false, true);
        for ordering in [SsspOrdering::Dijkstra, SsspOrdering::Delta(1), SsspOrdering::Delta(3), SsspOrdering::Chaotic]
        {
            let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering }).unwrap();
            let res = run(&inst, &EngineConfig::default(), None).unwrap();
            assert_eq!(res.states.get("distance").unwrap(), &[0.0, 1.0, 3.0], "{ordering:?}");
        }
    }

    #[test]
    fn sssp_unreachable_stays_infinite() {
        let g = graph("0 1 1\n2 3 1", true, true);
        let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: SsspOrdering::Dijkstra }).unwrap();
        let d = run(&inst, &EngineConfig::default(), None).unwrap().states.get("distance").unwrap().to_vec();
        assert_eq!(d[..2], [0.0, 1.0]);
        assert!(d[2].is_infinite() && d[3].is_infinite());
    }

    #[test]
    fn sssp_parameter_errors() {
        let g = graph("0 1 1", true, true);
        assert!(sssp_instance(&g, &SsspParams { source: VertexId(5), ordering: SsspOrdering::Dijkstra }).is_err());
        assert!(sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: SsspOrdering::Delta(0) }).is_err());
    }

    #[test]
    fn bfs_star_and_wide_kla() {
        let g = graph("0 1\n0 2\n0 3\n0 4", false, false);
        let levels = |ordering| {
            let inst = bfs_instance(&g, &BfsParams { source: VertexId(0), ordering }).unwrap();
            run(&inst, &EngineConfig::default(), None).unwrap()
        };
        assert_eq!(levels(BfsOrdering::Level).states.get("vertex_level").unwrap(), &[0.0, 1.0, 1.0, 1.0, 1.0]);
        // eccentricity of vertex 1 is 2, so k = 3 puts every reached level in class 0
        let path = graph("0 1\n1 2\n2 3", false, false);
        let inst = bfs_instance(&path, &BfsParams { source: VertexId(1), ordering: BfsOrdering::Kla(3) }).unwrap();
        let res = run(&inst, &EngineConfig::default(), None).unwrap();
        assert_eq!(res.stats.productive_phase_count(), 1);
        assert_eq!(res.states.get("vertex_level").unwrap(), &[1.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn pagerank_isolated_vertex() {
        let g = Graph::from_edges(1, &[], true, false).unwrap();
        let inst = pagerank_instance(&g, &PR).unwrap();
        let res = run(&inst, &EngineConfig::default(), None).unwrap();
        assert!((res.states.get("rank").unwrap()[0] - 0.15).abs() < 1e-15);
        assert_eq!(res.stats.totals().updates_applied, 1);
    }

    #[test]
    fn pagerank_two_cycle() {
        let g = graph("0 1\n1 0", true, false);
        let inst = pagerank_instance(&g, &PR).unwrap();
        let res = run(&inst, &EngineConfig::default(), None).unwrap();
        for r in res.states.get("rank").unwrap() {
            assert!((r - 1.0).abs() < 1e-8, "{r}");
        }
    }

    #[test]
    fn pagerank_parameter_errors() {
        let g = graph("0 1", true, false);
        assert!(pagerank_instance(&g, &PagerankParams { alpha: 1.0, epsilon: 1e-9 }).is_err());
        assert!(pagerank_instance(&g, &PagerankParams { alpha: 0.85, epsilon: 0.0 }).is_err());
        assert!(iterative_pagerank_instance(&g, &PagerankParams { alpha: 0.0, epsilon: 1e-9 }).is_err());
    }

    #[test]
    fn cc_examples() {
        let g = graph("0 1\n2 3", false, false);
        let res = run(&cc_instance(&g).unwrap(), &EngineConfig::default(), None).unwrap();
        assert_eq!(res.states.get("component").unwrap(), &[0.0, 0.0, 2.0, 2.0]);

        let iso = Graph::from_edges(3, &[(1, 2, 1.0)], false, false).unwrap();
        let res = run(&cc_instance(&iso).unwrap(), &EngineConfig::default(), None).unwrap();
        assert_eq!(res.states.get("component").unwrap(), &[0.0, 1.0, 1.0]);

        assert!(cc_instance(&graph("0 1", true, false)).is_err());
    }

    #[test]
    fn iterative_pagerank_two_cycle() {
        let g = graph("0 1\n1 0", true, false);
        let (inst, mut obs) = iterative_pagerank_instance(&g, &PR).unwrap();
        let res = run(&inst, &EngineConfig::default(), Some(&mut obs)).unwrap();
        assert!(res.halted_by_observer);
        // the last change is below epsilon; the distance to the fixed point is
        // bounded by epsilon * alpha / (1 - alpha)
        let bound = PR.epsilon * PR.alpha / (1.0 - PR.alpha);
        for r in res.states.get("rank").unwrap() {
            assert!((r - 1.0).abs() <= bound, "{r}");
        }
    }

    #[test]
    fn iterative_pagerank_single_sweep() {
        let g = graph("0 1\n1 2\n2 0\n0 2", true, false);
        let (inst, mut obs) = iterative_pagerank_instance(&g, &PR).unwrap();
        let cfg = EngineConfig { max_phases: Some(1), ..Default::default() };
        let res = run(&inst, &cfg, Some(&mut obs)).unwrap();
        assert!(res.truncated && !res.halted_by_observer);
        // one Jacobi sweep from zero gives 1 - alpha everywhere
        for r in res.states.get("rank").unwrap() {
            assert!((r - 0.15).abs() < 1e-15);
        }
    }
}
