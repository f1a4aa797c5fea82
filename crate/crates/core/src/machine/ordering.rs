// SPDX-License-Identifier: Apache-2.0
//! Strict weak orderings over workitems.
//!
//! An [`OrderingDescriptor`] wraps a three-way comparator. Built-in orderings
//! also carry a class key: a scalar per workitem such that `a < b` exactly when
//! `a`'s key precedes `b`'s in the key's direction. The engine groups items by
//! key when one is present and falls back to pairwise comparison otherwise.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use ordered_float::OrderedFloat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AgmError, Result};
use crate::machine::workitem::WorkItem;

/// Outcome of comparing two workitems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equivalent,
    Greater,
}

impl Relation {
    pub fn reverse(self) -> Self {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            Relation::Equivalent => Relation::Equivalent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Position of a class in processing order: smaller ranks are processed first.
pub type ClassRank = OrderedFloat<f64>;

type KeyFn = dyn Fn(&WorkItem) -> f64 + Send + Sync;
type CompareFn = dyn Fn(&WorkItem, &WorkItem) -> Relation + Send + Sync;

#[derive(Clone)]
pub struct ClassKey {
    key: Arc<KeyFn>,
    direction: Direction,
}

impl ClassKey {
    pub fn new(direction: Direction, key: impl Fn(&WorkItem) -> f64 + Send + Sync + 'static) -> Self {
        ClassKey { key: Arc::new(key), direction }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn key(&self, w: &WorkItem) -> f64 {
        (self.key)(w)
    }

    /// Normalised rank; `+ 0.0` folds `-0.0` into `0.0`.
    #[inline]
    pub fn rank(&self, w: &WorkItem) -> ClassRank {
        let k = (self.key)(w);
        OrderedFloat(match self.direction {
            Direction::Ascending => k + 0.0,
            Direction::Descending => -k + 0.0,
        })
    }
}

/// The built-in ordering families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingKind {
    Dijkstra,
    Delta(u64),
    Level,
    Kla(u64),
    Residual,
    Component,
    Chaotic,
}

impl OrderingKind {
    pub const ALL_DEFAULT: [OrderingKind; 7] = [
        OrderingKind::Dijkstra,
        OrderingKind::Delta(3),
        OrderingKind::Level,
        OrderingKind::Kla(2),
        OrderingKind::Residual,
        OrderingKind::Component,
        OrderingKind::Chaotic,
    ];

    /// Whether every output of the matching algorithm lands in the same or a later class.
    pub fn is_monotone(self) -> bool {
        !matches!(self, OrderingKind::Residual | OrderingKind::Chaotic)
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingKind::Dijkstra => write!(f, "dijkstra"),
            OrderingKind::Delta(d) => write!(f, "delta({d})"),
            OrderingKind::Level => write!(f, "level"),
            OrderingKind::Kla(k) => write!(f, "kla({k})"),
            OrderingKind::Residual => write!(f, "residual"),
            OrderingKind::Component => write!(f, "component"),
            OrderingKind::Chaotic => write!(f, "chaotic"),
        }
    }
}

impl FromStr for OrderingKind {
    type Err = String;

    /// Accepts `dijkstra`, `delta:<n>`, `level`, `kla:<k>`, `residual`, `component`, `chaotic`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (name, arg) = match s.split_once([':', '=']) {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let param = |what: &str| -> std::result::Result<u64, String> {
            arg.ok_or_else(|| format!("ordering '{name}' needs a {what}"))?
                .parse()
                .map_err(|_| format!("invalid {what} in '{s}'"))
        };
        match (name, arg) {
            ("dijkstra", None) => Ok(OrderingKind::Dijkstra),
            ("delta", _) => Ok(OrderingKind::Delta(param("delta")?)),
            ("level", None) => Ok(OrderingKind::Level),
            ("kla", _) => Ok(OrderingKind::Kla(param("k")?)),
            ("residual", None) => Ok(OrderingKind::Residual),
            ("component", None) => Ok(OrderingKind::Component),
            ("chaotic", None) => Ok(OrderingKind::Chaotic),
            _ => Err(format!("unknown ordering '{s}'")),
        }
    }
}

/// A strict weak ordering on workitems, optionally backed by a class key.
#[derive(Clone)]
pub struct OrderingDescriptor {
    name: String,
    compare: Arc<CompareFn>,
    key: Option<ClassKey>,
}

impl fmt::Debug for OrderingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderingDescriptor").field("name", &self.name).field("keyed", &self.key.is_some()).finish()
    }
}

impl OrderingDescriptor {
    /// Ordering induced by a class key; the comparator is derived from it.
    pub fn from_key(name: impl Into<String>, key: ClassKey) -> Self {
        let k = key.clone();
        let compare = Arc::new(move |a: &WorkItem, b: &WorkItem| match k.rank(a).cmp(&k.rank(b)) {
            std::cmp::Ordering::Less => Relation::Less,
            std::cmp::Ordering::Greater => Relation::Greater,
            std::cmp::Ordering::Equal => Relation::Equivalent,
        });
        OrderingDescriptor { name: name.into(), compare, key: Some(key) }
    }

    /// Comparator-only ordering. The caller is responsible for the axioms;
    /// [`check_swo_axioms`] can test them on a sample.
    pub fn from_comparator(
        name: impl Into<String>,
        compare: impl Fn(&WorkItem, &WorkItem) -> Relation + Send + Sync + 'static,
    ) -> Self {
        OrderingDescriptor { name: name.into(), compare: Arc::new(compare), key: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn compare(&self, a: &WorkItem, b: &WorkItem) -> Relation {
        (self.compare)(a, b)
    }

    pub fn class_key(&self) -> Option<&ClassKey> {
        self.key.as_ref()
    }

    #[inline]
    pub fn rank(&self, w: &WorkItem) -> Option<ClassRank> {
        self.key.as_ref().map(|k| k.rank(w))
    }
}

/// Builds one of the built-in orderings. All of them key on attribute `w[1]`.
pub fn make_ordering(kind: OrderingKind) -> Result<OrderingDescriptor> {
    use Direction::*;
    let name = kind.to_string();
    let key = match kind {
        OrderingKind::Dijkstra | OrderingKind::Level | OrderingKind::Component => {
            ClassKey::new(Ascending, |w| w.value(1))
        }
        OrderingKind::Delta(width) | OrderingKind::Kla(width) => {
            if width < 1 {
                return Err(AgmError::Parameter(format!("{name}: bucket width must be >= 1")));
            }
            let width = width as f64;
            ClassKey::new(Ascending, move |w| (w.value(1) / width).floor())
        }
        OrderingKind::Residual => ClassKey::new(Descending, |w| w.value(1)),
        OrderingKind::Chaotic => ClassKey::new(Ascending, |_| 0.0),
    };
    Ok(OrderingDescriptor::from_key(name, key))
}

/// Violation counts for the four strict-weak-ordering axioms.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SwoReport {
    pub irreflexivity: u64,
    pub asymmetry: u64,
    pub less_transitivity: u64,
    pub equivalence_transitivity: u64,
    pub pairs_checked: u64,
    pub triples_checked: u64,
}

impl SwoReport {
    pub fn total(&self) -> u64 {
        self.irreflexivity + self.asymmetry + self.less_transitivity + self.equivalence_transitivity
    }
}

/// Pair/triple budget and seed for [`check_swo_axioms_with`].
pub const DEFAULT_SWO_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SWO_SEED: u64 = 0x005e_ed0f_5730;

pub fn check_swo_axioms(o: &OrderingDescriptor, sample: &[WorkItem]) -> SwoReport {
    check_swo_axioms_with(o, sample, DEFAULT_SWO_BUDGET, DEFAULT_SWO_SEED)
}

/// Counts axiom violations over all pairs and triples of `sample`, or over
/// `budget` seeded random pairs/triples when exhaustive enumeration exceeds it.
///
/// `a` and `b` are incomparable when neither `a < b` nor `b < a`. Both
/// directions of the comparator are queried.
pub fn check_swo_axioms_with(o: &OrderingDescriptor, sample: &[WorkItem], budget: u64, seed: u64) -> SwoReport {
    let mut report = SwoReport::default();
    let n = sample.len();
    if n == 0 {
        return report;
    }
    let less = |a: usize, b: usize| o.compare(&sample[a], &sample[b]) == Relation::Less;
    let incomparable = |a: usize, b: usize| !less(a, b) && !less(b, a);

    report.irreflexivity = (0..n).filter(|&i| less(i, i)).count() as u64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check_pair = |a: usize, b: usize, r: &mut SwoReport| {
        r.pairs_checked += 1;
        if less(a, b) && less(b, a) {
            r.asymmetry += 1;
        }
    };
    let n64 = n as u64;
    if n64.saturating_mul(n64) <= budget {
        for a in 0..n {
            for b in 0..n {
                check_pair(a, b, &mut report);
            }
        }
    } else {
        for _ in 0..budget {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            check_pair(a, b, &mut report);
        }
    }

    let check_triple = |a: usize, b: usize, c: usize, r: &mut SwoReport| {
        r.triples_checked += 1;
        if less(a, b) && less(b, c) && !less(a, c) {
            r.less_transitivity += 1;
        }
        if incomparable(a, b) && incomparable(b, c) && !incomparable(a, c) {
            r.equivalence_transitivity += 1;
        }
    };
    if n64.saturating_mul(n64).saturating_mul(n64) <= budget {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check_triple(a, b, c, &mut report);
                }
            }
        }
    } else {
        for _ in 0..budget {
            let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            check_triple(a, b, c, &mut report);
        }
    }
    report
}
