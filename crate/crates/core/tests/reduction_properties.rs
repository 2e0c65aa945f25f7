use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topocon_core::construct::unit_disc_graph;
use topocon_core::mobility::{place_uniform, Region};
use topocon_core::oracle::{brute_force_opt, naive_interference, RadiusCandidateLattice};
use topocon_core::reduction::{reduce_radii, run_protocol, run_protocol_detailed};
use topocon_core::{CommGraph, NodeId, PointSet, RadiusMap};

/// Uniform points in the default region with a radius drawn around the
/// connectivity threshold, so both outcomes occur.
fn g_max(seed: u64) -> CommGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..70);
    let r = rng.gen_range(80.0..600.0);
    let pts = place_uniform(n, &Region::default(), seed).unwrap();
    unit_disc_graph(&pts, r).unwrap()
}

fn connected_instances(count: usize) -> impl Iterator<Item = CommGraph> {
    (0u64..).map(g_max).filter(|g| g.is_connected()).take(count)
}

fn disconnected_instances(count: usize) -> impl Iterator<Item = CommGraph> {
    (0u64..).map(g_max).filter(|g| !g.is_connected()).take(count)
}

#[test]
fn reduced_radius_never_exceeds_maximum() {
    for g in connected_instances(300) {
        let out = run_protocol_detailed(&g).unwrap();
        for (u, r) in out.reduced.as_slice().iter().enumerate() {
            assert!(r.value() <= g.radii().value(u));
            assert!(out.graph.radii().value(u) <= r.value());
        }
    }
}

#[test]
fn output_edges_are_max_power_edges() {
    for g in connected_instances(300).chain(disconnected_instances(100)) {
        let g_min = run_protocol(&g).unwrap();
        for e in g_min.edges() {
            assert!(g.has_edge(e), "{e} not in G_max");
        }
    }
}

#[test]
fn connectivity_is_preserved() {
    let mut count = 0;
    for g in connected_instances(1000) {
        assert!(run_protocol(&g).unwrap().is_connected());
        count += 1;
    }
    assert_eq!(count, 1000);
}

#[test]
fn components_are_preserved() {
    let mut count = 0;
    for g in disconnected_instances(500) {
        let g_min = run_protocol(&g).unwrap();
        assert_eq!(g_min.connected_components(), g.connected_components());
        count += 1;
    }
    assert_eq!(count, 500);
}

#[test]
fn output_is_in_class_t() {
    for g in connected_instances(500).chain(disconnected_instances(200)) {
        let g_min = run_protocol(&g).unwrap();
        assert!(g_min.in_class_t(), "{:?} bridged", g_min.offending_edge());
    }
}

#[test]
fn reduction_ignores_visiting_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for g in connected_instances(200) {
        let base = reduce_radii(&g, g.points().ids()).unwrap();
        let mut order: Vec<NodeId> = g.points().ids().collect();
        for _ in 0..3 {
            order.shuffle(&mut rng);
            let shuffled = reduce_radii(&g, order.iter().copied()).unwrap();
            assert_eq!(base, shuffled);
        }
    }
}

#[test]
fn every_final_radius_is_used() {
    for g in connected_instances(300).chain(disconnected_instances(100)) {
        let out = run_protocol_detailed(&g).unwrap();
        let g_min = &out.graph;
        for u in 0..g.len() {
            if g.adj(u).is_empty() {
                continue;
            }
            let r = g_min.radii().value(u);
            if r > 0.0 {
                let used = g_min.adj(u).iter().any(|&v| g.points().dist(u, v) == r);
                assert!(used, "node {u} radius {r} reaches no neighbour exactly");
            }
        }
    }
}

#[test]
fn output_never_beats_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(2..=5);
        let xy: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
        let pts = PointSet::planar(&xy).unwrap();
        let g = unit_disc_graph(&pts, rng.gen_range(3.0..15.0)).unwrap();
        let g_min = run_protocol(&g).unwrap();
        if !g_min.is_connected() {
            continue;
        }
        assert!(g_min.max_interference() >= brute_force_opt(&pts).unwrap());
        checked += 1;
    }
}

#[test]
fn lattice_rounding_keeps_edges_and_coverage() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let xy: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
        let pts = PointSet::planar(&xy).unwrap();
        let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..15.0)).collect();
        let rounded = RadiusCandidateLattice::new(&pts).round_down(&radii);
        let a = CommGraph::new(pts.clone(), RadiusMap::from_values(radii.clone())).unwrap();
        let b = CommGraph::new(pts.clone(), RadiusMap::from_values(rounded.clone())).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        for p in 0..n {
            for q in 0..n {
                let d = pts.dist(p, q);
                assert_eq!(d <= radii[p], d <= rounded[p]);
            }
            assert_eq!(naive_interference(&pts, &radii, p), naive_interference(&pts, &rounded, p));
        }
    }
}
