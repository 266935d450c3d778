mod common;

use common::*;
use rand::Rng;
use tgx_core::algorithms::{
    betweenness, connected_components, earliest_arrival, fastest_path, k_core, latest_departure, pagerank,
    shortest_duration, temporal_bfs,
};
use tgx_core::{AccessMode, QueryWindow, TemporalGraph, VertexId};

/// Every algorithm's output, rendered for comparison (floats by bits).
fn fingerprint(g: &TemporalGraph, w: QueryWindow) -> String {
    let mut out = String::new();
    for s in [0, (g.num_vertices() / 2) as VertexId] {
        for f in [earliest_arrival, latest_departure, fastest_path, shortest_duration, temporal_bfs] {
            out += &format!("{:?}\n", f(g, s, w).unwrap());
        }
    }
    out += &format!("{:?}\n", connected_components(g, w));
    out += &format!("{:?}\n", k_core(g, w, 3).to_ids());
    let bits = |xs: &[f64]| xs.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
    out += &format!("{:?}\n", bits(&pagerank(g, w, 20, 0.85).unwrap().scores));
    out += &format!("{:?}\n", bits(&betweenness(g, w).unwrap()));
    out
}

#[test]
fn results_identical_across_access_modes() {
    let mut r = rng(21);
    for _ in 0..12 {
        let inst = random_instance(&mut r, 60, 1500, 500, 0, 40);
        let w = random_window(&mut r, 500);
        for ord in ORDERINGS {
            let prints: Vec<String> = [AccessMode::Auto, AccessMode::ForceTger, AccessMode::ForceScan]
                .into_iter()
                .map(|mode| fingerprint(&build(&inst, ord, config(8, mode)), w))
                .collect();
            assert_eq!(prints[0], prints[1], "{ord:?} auto vs tger");
            assert_eq!(prints[0], prints[2], "{ord:?} auto vs scan");
        }
    }
}

#[test]
fn results_identical_across_thread_counts() {
    let max = std::thread::available_parallelism().map_or(4, |n| n.get()).max(4);
    let mut r = rng(22);
    for _ in 0..6 {
        let inst = random_instance(&mut r, 80, 3000, 500, 0, 40);
        let w = random_window(&mut r, 500);
        for ord in ORDERINGS {
            let g = build(&inst, ord, config(16, AccessMode::Auto));
            let prints: Vec<String> = [1, 2, max]
                .into_iter()
                .map(|t| {
                    let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
                    pool.install(|| fingerprint(&g, w))
                })
                .collect();
            assert_eq!(prints[0], prints[1]);
            assert_eq!(prints[0], prints[2]);
        }
    }
}

#[test]
fn widening_the_window_never_delays_arrival() {
    let mut r = rng(23);
    for _ in 0..100 {
        let inst = random_instance(&mut r, 30, 200, 100, 0, 15);
        let inner = random_window(&mut r, 100);
        let outer = QueryWindow::new(inner.t_a.saturating_sub(r.random_range(0..20)), inner.t_b + r.random_range(0..20)).unwrap();
        for ord in ORDERINGS {
            let g = build(&inst, ord, config(4, AccessMode::Auto));
            let s = r.random_range(0..inst.n) as VertexId;
            let a = earliest_arrival(&g, s, inner).unwrap();
            let b = earliest_arrival(&g, s, outer).unwrap();
            for v in 0..inst.n {
                if v == s as usize {
                    continue;
                }
                if let Some(x) = a[v] {
                    assert!(b[v].is_some_and(|y| y <= x), "{ord:?} vertex {v}: {:?} -> {:?}", a[v], b[v]);
                }
            }
        }
    }
}

#[test]
fn pagerank_deltas_shrink_after_third_iteration() {
    let mut r = rng(24);
    for _ in 0..30 {
        let inst = random_instance(&mut r, 200, 2000, 100, 0, 10);
        let w = random_window(&mut r, 100);
        let g = build(&inst, tgx_core::OrderingPredicate::StrictlySucceeds, config(16, AccessMode::Auto));
        let res = pagerank(&g, w, 60, 0.85).unwrap();
        // Rounding noise only once the iterate has converged to machine
        // precision.
        for i in 3..res.deltas.len() - 1 {
            assert!(res.deltas[i + 1] <= res.deltas[i] + 1e-15, "iteration {i}: {:?}", &res.deltas[i..i + 2]);
        }
        assert!((res.scores.iter().sum::<f64>() - 1.0).abs() <= 1e-6);
    }
}
