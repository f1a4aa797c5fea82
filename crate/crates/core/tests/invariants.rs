// SPDX-License-Identifier: Apache-2.0
//! Property tests over small random graphs and workitem samples.

use agm::algorithms::{
    bfs_instance, cc_instance, pagerank_instance, sssp_instance, BfsOrdering, BfsParams, PagerankParams, SsspOrdering,
    SsspParams,
};
use agm::graph::{load_edge_list, transpose};
use agm::machine::{check_swo_axioms, make_ordering, Relation, WorkItem};
use agm::oracles::{oracle_bfs, oracle_components, oracle_dijkstra, oracle_pagerank_power};
use agm::{run, Distribution, EngineConfig, EngineStats, Graph, MonotonicityMode, OrderingKind, Policy, VertexId};
use proptest::prelude::*;

fn graph_strategy(directed: bool) -> impl Strategy<Value = Graph> {
    (1usize..24).prop_flat_map(move |n| {
        let edge = (0..n as u32, 0..n as u32, 0u32..12);
        prop::collection::vec(edge, 0..4 * n).prop_map(move |es| {
            // integer and half-integer weights, zero included
            let edges: Vec<(u32, u32, f64)> = es.into_iter().map(|(s, t, w)| (s, t, w as f64 / 2.0)).collect();
            Graph::from_edges(n, &edges, directed, true).unwrap()
        })
    })
}

fn config_strategy() -> impl Strategy<Value = EngineConfig> {
    (1usize..5, any::<bool>(), any::<u64>(), any::<bool>()).prop_map(|(ranks, cyclic, seed, parallel)| EngineConfig {
        distribution: Distribution::new(ranks, if cyclic { Policy::Cyclic } else { Policy::Block }).unwrap(),
        shuffle_seed: seed,
        parallel_ranks: parallel,
        ..EngineConfig::default()
    })
}

fn sssp_ordering() -> impl Strategy<Value = SsspOrdering> {
    prop_oneof![Just(SsspOrdering::Dijkstra), (1u64..6).prop_map(SsspOrdering::Delta), Just(SsspOrdering::Chaotic)]
}

fn bfs_ordering() -> impl Strategy<Value = BfsOrdering> {
    prop_oneof![Just(BfsOrdering::Level), (1u64..5).prop_map(BfsOrdering::Kla)]
}

fn assert_accounting(stats: &EngineStats) -> Result<(), TestCaseError> {
    for p in &stats.phases {
        prop_assert_eq!(p.updates_applied + p.updates_rejected, p.items_processed);
    }
    let t = stats.totals();
    prop_assert_eq!(t.items_processed, stats.initial_items + t.items_produced);
    prop_assert_eq!(t.violations, stats.monotonicity_violations);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sssp_matches_oracle(g in graph_strategy(true), o in sssp_ordering(), c in config_strategy()) {
        let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: o }).unwrap();
        let r = run(&inst, &c, None).unwrap();
        let oracle = oracle_dijkstra(&g, VertexId(0)).unwrap();
        prop_assert_eq!(r.states.get("distance").unwrap(), oracle.as_slice());
        assert_accounting(&r.stats)?;
        if o.kind().is_monotone() {
            prop_assert_eq!(r.stats.monotonicity_violations, 0);
        }
    }

    #[test]
    fn bfs_matches_oracle_and_phase_law(g in graph_strategy(false), o in bfs_ordering(), c in config_strategy()) {
        let inst = bfs_instance(&g, &BfsParams { source: VertexId(0), ordering: o }).unwrap();
        let r = run(&inst, &c, None).unwrap();
        let oracle = oracle_bfs(&g, VertexId(0)).unwrap();
        prop_assert_eq!(r.states.get("vertex_level").unwrap(), oracle.as_slice());
        let max_level = oracle.iter().filter(|x| x.is_finite()).fold(0.0f64, |a, &b| a.max(b)) as u64;
        let k = match o { BfsOrdering::Level => 1, BfsOrdering::Kla(k) => k };
        prop_assert_eq!(r.stats.productive_phase_count() as u64, (max_level + 1).div_ceil(k));
        assert_accounting(&r.stats)?;
    }

    #[test]
    fn cc_labels_are_component_minima(g in graph_strategy(false), c in config_strategy()) {
        let r = run(&cc_instance(&g).unwrap(), &c, None).unwrap();
        let oracle: Vec<f64> = oracle_components(&g).unwrap().into_iter().map(f64::from).collect();
        prop_assert_eq!(r.states.get("component").unwrap(), oracle.as_slice());
        prop_assert_eq!(r.stats.monotonicity_violations, 0);
    }

    #[test]
    fn strict_mode_accepts_monotone_orderings(g in graph_strategy(true), o in sssp_ordering()) {
        prop_assume!(o.kind().is_monotone());
        let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: o }).unwrap();
        let strict = EngineConfig { mode: MonotonicityMode::Strict, ..EngineConfig::default() };
        prop_assert!(run(&inst, &strict, None).is_ok());
    }

    #[test]
    fn phases_and_applied_independent_of_ranks_and_seed(
        g in graph_strategy(false),
        o in sssp_ordering(),
        a in config_strategy(),
        b in config_strategy(),
    ) {
        let inst = sssp_instance(&g, &SsspParams { source: VertexId(0), ordering: o }).unwrap();
        let (ra, rb) = (run(&inst, &a, None).unwrap(), run(&inst, &b, None).unwrap());
        prop_assert_eq!(ra.states.get("distance"), rb.states.get("distance"));
        prop_assert_eq!(ra.stats.phase_count(), rb.stats.phase_count());
        prop_assert_eq!(ra.stats.totals().updates_applied, rb.stats.totals().updates_applied);
        prop_assert_eq!(ra.stats.totals().items_processed, rb.stats.totals().items_processed);
    }

    #[test]
    fn pagerank_close_to_power_iteration(g in graph_strategy(true), c in config_strategy()) {
        let p = PagerankParams { alpha: 0.85, epsilon: 1e-10 };
        let r = run(&pagerank_instance(&g, &p).unwrap(), &c, None).unwrap();
        let oracle = oracle_pagerank_power(&g, p.alpha, 1e-13).unwrap();
        let ranks = r.states.get("rank").unwrap();
        for (a, b) in ranks.iter().zip(&oracle.ranks) {
            prop_assert!((a - b).abs() <= 1e-6, "{} vs {}", a, b);
        }
        assert_accounting(&r.stats)?;
    }

    #[test]
    fn swo_axioms_hold_on_random_samples(
        xs in prop::collection::vec((0u32..50, 0i64..40, 0.0f64..40.0), 1..60),
        k in 1u64..5,
    ) {
        let ints: Vec<WorkItem> = xs.iter().map(|&(v, i, _)| WorkItem::int(VertexId(v), i)).collect();
        let reals: Vec<WorkItem> = xs.iter().map(|&(v, _, x)| WorkItem::real(VertexId(v), x.floor())).collect();
        for kind in OrderingKind::ALL_DEFAULT.into_iter().chain([OrderingKind::Delta(k), OrderingKind::Kla(k)]) {
            let o = make_ordering(kind).unwrap();
            prop_assert_eq!(check_swo_axioms(&o, &ints).total(), 0);
            prop_assert_eq!(check_swo_axioms(&o, &reals).total(), 0);
        }
    }

    #[test]
    fn comparator_agrees_with_class_rank(a in 0.0f64..100.0, b in 0.0f64..100.0, d in 1u64..8) {
        for kind in [OrderingKind::Dijkstra, OrderingKind::Delta(d), OrderingKind::Residual, OrderingKind::Chaotic] {
            let o = make_ordering(kind).unwrap();
            let (x, y) = (WorkItem::real(VertexId(0), a), WorkItem::real(VertexId(1), b));
            let (rx, ry) = (o.rank(&x).unwrap(), o.rank(&y).unwrap());
            let expected = match rx.cmp(&ry) {
                std::cmp::Ordering::Less => Relation::Less,
                std::cmp::Ordering::Equal => Relation::Equivalent,
                std::cmp::Ordering::Greater => Relation::Greater,
            };
            prop_assert_eq!(o.compare(&x, &y), expected);
        }
    }

    #[test]
    fn edge_list_roundtrip(g in graph_strategy(true)) {
        let text: String = g.edges().map(|(s, t, w)| format!("{s} {t} {w}\n")).collect();
        let back = load_edge_list(text.as_bytes(), true, true).unwrap();
        prop_assert_eq!(back.edge_count(), g.edge_count());
        let a: Vec<_> = back.edges().collect();
        let b: Vec<_> = g.edges().collect();
        // isolated trailing vertices are not recoverable from an edge list
        prop_assert!(back.vertex_count() <= g.vertex_count());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transpose_is_involutive(g in graph_strategy(true)) {
        let tt = transpose(&transpose(&g));
        let mut a: Vec<_> = tt.edges().collect();
        let mut b: Vec<_> = g.edges().collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        prop_assert_eq!(a, b);
        for v in 0..g.vertex_count() as u32 {
            prop_assert_eq!(g.in_degree(VertexId(v)), transpose(&g).out_degree(VertexId(v)));
        }
    }

    #[test]
    fn undirected_graphs_are_symmetric(g in graph_strategy(false)) {
        for (s, t, _) in g.edges() {
            prop_assert!(g.out_neighbors(VertexId(t)).contains(&s));
        }
    }

    #[test]
    fn distribution_partitions_vertices(n in 1usize..200, ranks in 1usize..9, cyclic in any::<bool>()) {
        let d = Distribution::new(ranks, if cyclic { Policy::Cyclic } else { Policy::Block }).unwrap();
        let mut counts = vec![0usize; ranks];
        for v in 0..n as u32 {
            let r = d.owner(VertexId(v), n);
            prop_assert!(r < ranks);
            counts[r] += 1;
        }
        prop_assert_eq!(counts.iter().sum::<usize>(), n);
        prop_assert!(counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1);
        if !cyclic {
            for r in 0..ranks {
                for v in d.block_range(r, n) {
                    prop_assert_eq!(d.owner(VertexId(v as u32), n), r);
                }
            }
        }
    }
}
