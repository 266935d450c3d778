mod common;

use common::*;
use tgx_core::algorithms::{
    betweenness_from, connected_components, earliest_arrival, fastest_path, k_core, latest_departure, pagerank,
    shortest_duration, temporal_bfs, PathResult,
};
use tgx_core::oracle::{self, PathMetric};
use tgx_core::{AccessMode, OrderingPredicate, QueryWindow, TemporalGraph, VertexId};

const METRICS: [PathMetric; 5] = [
    PathMetric::EarliestArrival,
    PathMetric::LatestDeparture,
    PathMetric::Fastest,
    PathMetric::ShortestDuration,
    PathMetric::Hops,
];

fn run(g: &TemporalGraph, metric: PathMetric, s: VertexId, w: QueryWindow) -> PathResult {
    match metric {
        PathMetric::EarliestArrival => earliest_arrival(g, s, w),
        PathMetric::LatestDeparture => latest_departure(g, s, w),
        PathMetric::Fastest => fastest_path(g, s, w),
        PathMetric::ShortestDuration => shortest_duration(g, s, w),
        PathMetric::Hops => temporal_bfs(g, s, w),
    }
    .unwrap()
}

fn expected(inst: &Instance, s: VertexId, w: QueryWindow, ord: OrderingPredicate, metric: PathMetric) -> PathResult {
    // Under overlap chaining a walk may revisit a vertex with a better
    // continuation, so the walk oracle is the reference there.
    if ord == OrderingPredicate::Overlaps {
        oracle::walk_paths(&inst.edges, inst.n, inst.directed, s, w, ord, metric).unwrap()
    } else {
        oracle::enumerate_paths(&inst.edges, inst.n, inst.directed, s, w, ord, metric).unwrap()
    }
}

#[test]
fn path_algorithms_match_oracle() {
    let mut r = rng(11);
    for case in 0..200 {
        let inst = random_instance(&mut r, 10, 30, 30, 0, 6);
        let windows: Vec<_> = (0..5).map(|_| random_window(&mut r, 30)).collect();
        for ord in ORDERINGS {
            // Small cutoff so hubs get an index too.
            let g = build(&inst, ord, config(3, AccessMode::Auto));
            for &w in &windows {
                for s in 0..inst.n as VertexId {
                    for metric in METRICS {
                        assert_eq!(
                            run(&g, metric, s, w),
                            expected(&inst, s, w, ord, metric),
                            "case {case} {ord:?} {metric:?} source {s} window {w:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn walk_oracle_agrees_with_path_oracle_under_succession() {
    let mut r = rng(12);
    for _ in 0..100 {
        let inst = random_instance(&mut r, 8, 20, 20, 0, 4);
        let w = random_window(&mut r, 20);
        for ord in [OrderingPredicate::Succeeds, OrderingPredicate::StrictlySucceeds] {
            for metric in METRICS {
                let s = 0;
                let a = oracle::walk_paths(&inst.edges, inst.n, inst.directed, s, w, ord, metric).unwrap();
                let b = oracle::enumerate_paths(&inst.edges, inst.n, inst.directed, s, w, ord, metric).unwrap();
                assert_eq!(a, b, "{ord:?} {metric:?}");
            }
        }
    }
}

#[test]
fn oracle_guards_size() {
    let inst = Instance {
        n: 13,
        directed: true,
        edges: Vec::new(),
    };
    let w = QueryWindow::universal();
    let ord = OrderingPredicate::Succeeds;
    assert!(oracle::enumerate_paths(&inst.edges, inst.n, true, 0, w, ord, PathMetric::Hops).is_err());
    assert!(oracle::betweenness(&inst.edges, inst.n, true, w, ord, &[0]).is_err());
}

fn assert_close(a: &[f64], b: &[f64], tol: f64, what: &str) {
    assert_eq!(a.len(), b.len());
    for (v, (x, y)) in a.iter().zip(b).enumerate() {
        assert!((x - y).abs() <= tol, "{what}: vertex {v}: {x} vs {y}");
    }
}

#[test]
fn betweenness_matches_enumeration() {
    let mut r = rng(13);
    for case in 0..150 {
        // Zero-duration cycles make some shortest walks non-simple; with
        // positive durations every shortest walk is a simple path.
        let ord = if case % 2 == 0 {
            OrderingPredicate::StrictlySucceeds
        } else {
            OrderingPredicate::Succeeds
        };
        let inst = random_instance(&mut r, 8, 24, 20, 1, 5);
        let w = random_window(&mut r, 20);
        let g = build(&inst, ord, config(3, AccessMode::Auto));
        let sources: Vec<VertexId> = (0..inst.n as VertexId).collect();
        let got = betweenness_from(&g, w, &sources).unwrap();
        let want = oracle::betweenness(&inst.edges, inst.n, inst.directed, w, ord, &sources).unwrap();
        assert_close(&got, &want, 1e-9, &format!("case {case}"));
    }
}

#[test]
fn components_match_union_find() {
    let mut r = rng(14);
    for _ in 0..200 {
        let inst = random_instance(&mut r, 40, 80, 50, 0, 10);
        let w = random_window(&mut r, 50);
        let g = build(&inst, OrderingPredicate::StrictlySucceeds, config(4, AccessMode::Auto));
        assert_eq!(connected_components(&g, w), oracle::connected_components(&inst.edges, inst.n, w));
    }
}

#[test]
fn kcore_matches_peeling() {
    let mut r = rng(15);
    for _ in 0..200 {
        let inst = random_instance(&mut r, 30, 120, 50, 0, 10);
        let w = random_window(&mut r, 50);
        let k = r.random_range(0..6);
        let g = build(&inst, OrderingPredicate::StrictlySucceeds, config(4, AccessMode::Auto));
        assert_eq!(k_core(&g, w, k).to_flags(), oracle::k_core(&inst.edges, inst.n, w, k));
    }
}

#[test]
fn pagerank_matches_dense_power_iteration() {
    let mut r = rng(16);
    for _ in 0..50 {
        let inst = random_instance(&mut r, 50, 300, 50, 0, 10);
        let w = random_window(&mut r, 50);
        let g = build(&inst, OrderingPredicate::StrictlySucceeds, config(4, AccessMode::Auto));
        let got = pagerank(&g, w, 100, 0.85).unwrap();
        let want = oracle::pagerank(&inst.edges, inst.n, inst.directed, w, 100, 0.85);
        assert_close(&got.scores, &want, 1e-8, "pagerank");
        assert!((got.scores.iter().sum::<f64>() - 1.0).abs() <= 1e-6);
    }
}

use rand::Rng;
