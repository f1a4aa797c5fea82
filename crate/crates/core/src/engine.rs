// SPDX-License-Identifier: Apache-2.0
//! Phase-by-phase execution of an [`AgmInstance`] over simulated ranks.
//!
//! Each phase drains the minimal equivalence class of the pending pool. A phase
//! is a sequence of sub-steps; in a sub-step every rank processes its slice of
//! the class frontier, and outputs are exchanged only at the sub-step barrier.
//! Outputs equivalent to the class join the next sub-step, later classes go to
//! the pool, and earlier classes are either an error (strict mode) or counted
//! as monotonicity violations and pooled (relaxed mode).

use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{AgmError, Result};
use crate::graph::Distribution;
use crate::machine::{
    AgmInstance, ClassRank, FinalStates, OrderingDescriptor, PfContext, Relation, StateStore, WorkItem,
};

/// What to do with outputs that precede the class being drained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonotonicityMode {
    /// Abort the run.
    Strict,
    /// Pool them and count a violation.
    #[default]
    Relaxed,
}

impl FromStr for MonotonicityMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strict" => Ok(MonotonicityMode::Strict),
            "relaxed" => Ok(MonotonicityMode::Relaxed),
            _ => Err(format!("unknown monotonicity mode '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub distribution: Distribution,
    /// Seeds the intra-class processing order.
    pub shuffle_seed: u64,
    pub mode: MonotonicityMode,
    pub max_phases: Option<usize>,
    /// Run the ranks of a sub-step on the rayon pool.
    pub parallel_ranks: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            distribution: Distribution::default(),
            shuffle_seed: 0,
            mode: MonotonicityMode::Relaxed,
            max_phases: None,
            parallel_ranks: false,
        }
    }
}

/// Counters for one drained class.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PhaseRecord {
    /// Class key of the drained class, when the ordering has one.
    pub class_key: Option<f64>,
    pub items_processed: u64,
    pub updates_applied: u64,
    pub updates_rejected: u64,
    pub items_produced: u64,
    pub remote_messages: u64,
    pub substeps: u64,
    pub violations: u64,
}

impl PhaseRecord {
    fn absorb(&mut self, o: &SubstepOutcome) {
        self.items_processed += o.processed;
        self.updates_applied += o.applied;
        self.updates_rejected += o.rejected;
        self.items_produced += o.produced;
        self.remote_messages += o.remote;
        self.violations += o.violations;
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EngineStats {
    pub phases: Vec<PhaseRecord>,
    pub monotonicity_violations: u64,
    pub initial_items: u64,
}

impl EngineStats {
    pub fn phase_count(&self) -> usize {
        self.phases.len()
    }

    /// Phases that applied at least one update. A class made up only of
    /// rejected items (stale relaxations after the frontier settles) is
    /// executed and recorded but not counted here.
    pub fn productive_phase_count(&self) -> usize {
        self.phases.iter().filter(|p| p.updates_applied > 0).count()
    }

    /// Sums of every per-phase counter; `class_key` is left empty.
    pub fn totals(&self) -> PhaseRecord {
        self.phases.iter().fold(PhaseRecord::default(), |mut acc, p| {
            acc.items_processed += p.items_processed;
            acc.updates_applied += p.updates_applied;
            acc.updates_rejected += p.updates_rejected;
            acc.items_produced += p.items_produced;
            acc.remote_messages += p.remote_messages;
            acc.substeps += p.substeps;
            acc.violations += p.violations;
            acc
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub states: FinalStates,
    pub stats: EngineStats,
    pub halted_by_observer: bool,
    /// `max_phases` stopped the run with work still pending.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Halt,
}

/// Consulted after every drained class. Receives the live states read-only.
pub trait PhaseObserver {
    fn after_phase(&mut self, states: &StateStore, stats: &EngineStats) -> Control;
}

impl<F> PhaseObserver for F
where
    F: FnMut(&StateStore, &EngineStats) -> Control,
{
    fn after_phase(&mut self, states: &StateStore, stats: &EngineStats) -> Control {
        self(states, stats)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Route {
    pub target: usize,
    pub remote: bool,
}

/// Sends a workitem to the owner of its indexed vertex.
#[inline]
pub fn route(w: &WorkItem, d: &Distribution, n: usize, producing_rank: usize) -> Route {
    let target = d.owner(w.vertex, n);
    Route { target, remote: target != producing_rank }
}

/// The minimal class of a pool: a representative and member indices.
#[derive(Debug, Clone, PartialEq)]
pub struct MinClass {
    pub representative: WorkItem,
    pub key: Option<f64>,
    pub members: Vec<usize>,
}

fn minimal_index<'a>(o: &OrderingDescriptor, items: impl Iterator<Item = (usize, &'a WorkItem)>) -> Option<usize> {
    let mut best: Option<(usize, &WorkItem)> = None;
    for (i, w) in items {
        match best {
            Some((_, b)) if o.compare(w, b) != Relation::Less => {}
            _ => best = Some((i, w)),
        }
    }
    best.map(|(i, _)| i)
}

/// Returns every pool item that no other pool item precedes.
pub fn select_min_class(pool: &[WorkItem], o: &OrderingDescriptor) -> Option<MinClass> {
    let m = minimal_index(o, pool.iter().enumerate())?;
    let rep = pool[m].clone();
    let members = match o.class_key() {
        Some(k) => {
            let r = k.rank(&rep);
            (0..pool.len()).filter(|&i| k.rank(&pool[i]) == r).collect()
        }
        None => (0..pool.len()).filter(|&i| o.compare(&pool[i], &rep) == Relation::Equivalent).collect(),
    };
    Some(MinClass { key: o.class_key().map(|k| k.key(&rep)), representative: rep, members })
}

/// Everything a rank needs to process one sub-step.
pub struct SubstepEnv<'a, 'g> {
    pub instance: &'a AgmInstance<'g>,
    pub states: &'a StateStore,
    pub distribution: Distribution,
    pub representative: &'a WorkItem,
    pub mode: MonotonicityMode,
    pub seed: u64,
    pub phase: usize,
    pub substep: u64,
}

/// Items a rank produced in one sub-step, already routed, plus its counters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SubstepOutcome {
    /// `(target rank, item)` joining the current class.
    pub current: Vec<(usize, WorkItem)>,
    /// `(target rank, item)` returned to the pool.
    pub deferred: Vec<(usize, WorkItem)>,
    pub processed: u64,
    pub applied: u64,
    pub rejected: u64,
    pub produced: u64,
    pub remote: u64,
    pub violations: u64,
}

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Processes `frontier` on `rank` and classifies every output against the class
/// representative.
///
/// The slice is visited in a seeded permutation of its vertices; items sharing a
/// vertex are visited consecutively in attribute order.
pub fn drain_substep(env: &SubstepEnv<'_, '_>, rank: usize, mut frontier: Vec<WorkItem>) -> Result<SubstepOutcome> {
    let inst = env.instance;
    let graph = inst.graph;
    let n = graph.vertex_count();
    let salt = splitmix64(
        splitmix64(splitmix64(env.seed) ^ env.phase as u64)
            ^ env.substep.rotate_left(32)
            ^ (rank as u64).rotate_left(48),
    );
    frontier.sort_by(|a, b| {
        splitmix64(salt ^ u64::from(a.vertex.0))
            .cmp(&splitmix64(salt ^ u64::from(b.vertex.0)))
            .then_with(|| a.total_cmp(b))
    });

    let ctx = PfContext { graph, states: env.states };
    let ordering = &inst.ordering;
    let rep_rank: Option<ClassRank> = ordering.rank(env.representative);
    let mut out = SubstepOutcome::default();
    let mut buf = Vec::new();
    for w in &frontier {
        inst.schema.check(w, n)?;
        if env.distribution.owner(w.vertex, n) != rank {
            return Err(AgmError::Contract(format!("rank {rank} does not own {w}")));
        }
        buf.clear();
        let applied = inst.pf.apply(w, &ctx, &mut buf);
        out.processed += 1;
        if applied {
            out.applied += 1;
        } else {
            out.rejected += 1;
        }
        for item in buf.drain(..) {
            inst.schema.check(&item, n)?;
            out.produced += 1;
            let relation = match (rep_rank, ordering.rank(&item)) {
                (Some(r), Some(k)) => match k.cmp(&r) {
                    std::cmp::Ordering::Less => Relation::Less,
                    std::cmp::Ordering::Equal => Relation::Equivalent,
                    std::cmp::Ordering::Greater => Relation::Greater,
                },
                _ => ordering.compare(&item, env.representative),
            };
            let dest = route(&item, &env.distribution, n, rank);
            if dest.remote {
                out.remote += 1;
            }
            match relation {
                Relation::Equivalent => out.current.push((dest.target, item)),
                Relation::Greater => out.deferred.push((dest.target, item)),
                Relation::Less => match env.mode {
                    MonotonicityMode::Strict => {
                        return Err(AgmError::OrderingViolation { phase: env.phase, vertex: item.vertex.0 })
                    }
                    MonotonicityMode::Relaxed => {
                        out.violations += 1;
                        out.deferred.push((dest.target, item));
                    }
                },
            }
        }
    }
    Ok(out)
}

/// Pending workitems, one pool per rank.
enum Pool {
    Keyed { ranks: Vec<BTreeMap<ClassRank, Vec<WorkItem>>>, len: usize },
    Unkeyed(Vec<Vec<WorkItem>>),
}

struct TakenClass {
    representative: WorkItem,
    key: Option<f64>,
    frontier: Vec<Vec<WorkItem>>,
}

impl Pool {
    fn new(o: &OrderingDescriptor, ranks: usize) -> Self {
        if o.class_key().is_some() {
            Pool::Keyed { ranks: vec![BTreeMap::new(); ranks], len: 0 }
        } else {
            Pool::Unkeyed(vec![Vec::new(); ranks])
        }
    }

    fn push(&mut self, o: &OrderingDescriptor, rank: usize, w: WorkItem) {
        match self {
            Pool::Keyed { ranks, len } => {
                let k = o.rank(&w).expect("keyed pool requires a class key");
                ranks[rank].entry(k).or_default().push(w);
                *len += 1;
            }
            Pool::Unkeyed(ranks) => ranks[rank].push(w),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            Pool::Keyed { len, .. } => *len == 0,
            Pool::Unkeyed(ranks) => ranks.iter().all(Vec::is_empty),
        }
    }

    fn take_min_class(&mut self, o: &OrderingDescriptor) -> Option<TakenClass> {
        match self {
            Pool::Keyed { ranks, len } => {
                let min = ranks.iter().filter_map(|m| m.keys().next().copied()).min()?;
                let frontier: Vec<Vec<WorkItem>> =
                    ranks.iter_mut().map(|m| m.remove(&min).unwrap_or_default()).collect();
                *len -= frontier.iter().map(Vec::len).sum::<usize>();
                let representative = frontier.iter().flatten().next()?.clone();
                let key = o.class_key().map(|k| k.key(&representative));
                Some(TakenClass { representative, key, frontier })
            }
            Pool::Unkeyed(ranks) => {
                let all = ranks.iter().flat_map(|r| r.iter());
                let m = minimal_index(o, all.enumerate())?;
                let representative = ranks.iter().flatten().nth(m)?.clone();
                let frontier = ranks
                    .iter_mut()
                    .map(|items| {
                        let (class, rest): (Vec<_>, Vec<_>) = std::mem::take(items)
                            .into_iter()
                            .partition(|w| o.compare(w, &representative) == Relation::Equivalent);
                        *items = rest;
                        class
                    })
                    .collect();
                Some(TakenClass { representative, key: None, frontier })
            }
        }
    }
}

/// Executes `instance` until the pool is empty, the observer halts, or
/// `max_phases` phases have run.
pub fn run(
    instance: &AgmInstance<'_>,
    config: &EngineConfig,
    mut observer: Option<&mut dyn PhaseObserver>,
) -> Result<RunResult> {
    instance.validate()?;
    if config.max_phases == Some(0) {
        return Err(AgmError::Parameter("max_phases must be at least 1".into()));
    }
    let graph = instance.graph;
    if instance.needs_transpose {
        graph.ensure_transpose();
    }
    let n = graph.vertex_count();
    let dist = config.distribution;
    let ranks = dist.ranks();
    let states = StateStore::new(&instance.states, n);
    let ordering = &instance.ordering;

    let mut pool = Pool::new(ordering, ranks);
    for w in &instance.initial {
        pool.push(ordering, dist.owner(w.vertex, n), w.clone());
    }
    let mut stats = EngineStats { initial_items: instance.initial.len() as u64, ..Default::default() };
    let mut halted_by_observer = false;
    let mut truncated = false;

    while !pool.is_empty() {
        if config.max_phases.is_some_and(|max| stats.phases.len() >= max) {
            truncated = true;
            break;
        }
        let phase = stats.phases.len();
        let Some(TakenClass { representative, key, mut frontier }) = pool.take_min_class(ordering) else {
            break;
        };
        let mut record = PhaseRecord { class_key: key, ..Default::default() };
        let mut substep = 0u64;
        while frontier.iter().any(|f| !f.is_empty()) {
            let env = SubstepEnv {
                instance,
                states: &states,
                distribution: dist,
                representative: &representative,
                mode: config.mode,
                seed: config.shuffle_seed,
                phase,
                substep,
            };
            let outcomes: Vec<Result<SubstepOutcome>> = if config.parallel_ranks && ranks > 1 {
                frontier.into_par_iter().enumerate().map(|(rank, slice)| drain_substep(&env, rank, slice)).collect()
            } else {
                frontier.into_iter().enumerate().map(|(rank, slice)| drain_substep(&env, rank, slice)).collect()
            };
            let mut next = vec![Vec::new(); ranks];
            for outcome in outcomes {
                let outcome = outcome?;
                record.absorb(&outcome);
                for (target, w) in outcome.current {
                    next[target].push(w);
                }
                for (target, w) in outcome.deferred {
                    pool.push(ordering, target, w);
                }
            }
            frontier = next;
            substep += 1;
        }
        record.substeps = substep;
        stats.monotonicity_violations += record.violations;
        stats.phases.push(record);
        if let Some(obs) = observer.as_deref_mut() {
            if obs.after_phase(&states, &stats) == Control::Halt {
                halted_by_observer = true;
                break;
            }
        }
    }

    Ok(RunResult { states: states.into_final(), stats, halted_by_observer, truncated })
}
