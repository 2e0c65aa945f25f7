use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topocon_core::graph::{closure, CommGraph, RadiusMap};
use topocon_core::oracle::{exhaustive_bridged, naive_edges, naive_interference};
use topocon_core::{Edge, EmbeddedGraph, NodeId, PointSet};

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> (PointSet, Vec<f64>) {
    let n = rng.gen_range(1..=max_n);
    let dim = rng.gen_range(1..=3);
    let coords = (0..n * dim).map(|_| rng.gen_range(0.0..100.0)).collect();
    let radii = (0..n).map(|_| rng.gen_range(0.0..70.0)).collect();
    (PointSet::from_flat(dim, coords).unwrap(), radii)
}

#[test]
fn edge_relation_matches_all_pairs_predicate() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let (pts, radii) = random_instance(&mut rng, 32);
        let g = CommGraph::new(pts.clone(), RadiusMap::from_values(radii.clone())).unwrap();
        let got: Vec<(usize, usize)> = g.edges().map(|e| (e.lo().0, e.hi().0)).collect();
        assert_eq!(got, naive_edges(&pts, &radii));
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                assert_eq!(g.linked(a, b), g.linked(b, a));
            }
        }
    }
}

#[test]
fn interference_matches_naive_recount() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let (pts, radii) = random_instance(&mut rng, 32);
        let g = CommGraph::new(pts.clone(), RadiusMap::from_values(radii.clone())).unwrap();
        for p in 0..pts.len() {
            assert_eq!(g.interference_at(NodeId(p)).unwrap(), naive_interference(&pts, &radii, p));
        }
    }
}

#[test]
fn bridging_matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bridged = 0;
    for _ in 0..500 {
        let (pts, radii) = random_instance(&mut rng, 10);
        let g = CommGraph::new(pts.clone(), RadiusMap::from_values(radii.clone())).unwrap();
        for e in g.edges() {
            let expected = exhaustive_bridged(&pts, &radii, e.lo().0, e.hi().0);
            assert_eq!(g.is_bridged(e).unwrap(), expected, "edge {e}");
            bridged += expected as usize;
        }
    }
    assert!(bridged > 50, "too few bridged edges exercised: {bridged}");
}

#[test]
fn shortest_edge_never_bridged() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let (pts, radii) = random_instance(&mut rng, 20);
        let g = CommGraph::new(pts, RadiusMap::from_values(radii)).unwrap();
        if let Some(e) = g.edges().min_by(|a, b| g.edge_length(*a).total_cmp(&g.edge_length(*b))) {
            assert!(!g.is_bridged(e).unwrap());
        }
    }
}

fn arb_embedded() -> impl Strategy<Value = EmbeddedGraph> {
    (2usize..14, 1usize..=3)
        .prop_flat_map(|(n, dim)| {
            (
                Just(n),
                Just(dim),
                prop::collection::vec(-50.0f64..50.0, n * dim),
                prop::collection::vec((0..n, 0..n), 0..2 * n),
            )
        })
        .prop_map(|(n, dim, coords, extra)| {
            let pts = PointSet::from_flat(dim, coords).unwrap();
            // A path guarantees no isolated node; extras add arbitrary chords.
            let mut edges: Vec<Edge> = (1..n).map(|i| Edge::of(i - 1, i)).collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b).map(|(a, b)| Edge::of(a, b)));
            EmbeddedGraph::new(pts, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_a_supergraph(h in arb_embedded()) {
        let g = closure(&h).unwrap();
        for e in h.edges() {
            prop_assert!(g.has_edge(*e));
        }
    }

    #[test]
    fn closure_is_idempotent(h in arb_embedded()) {
        let once = closure(&h).unwrap();
        let twice = closure(&once.to_embedded()).unwrap();
        prop_assert_eq!(once.edges().collect::<Vec<_>>(), twice.edges().collect::<Vec<_>>());
        prop_assert_eq!(once.radii().values().collect::<Vec<_>>(), twice.radii().values().collect::<Vec<_>>());
    }

    #[test]
    fn scaling_preserves_structure(h in arb_embedded(), alpha in 0.01f64..100.0) {
        let g = closure(&h).unwrap();
        let s = g.scaled(alpha).unwrap();
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), s.edges().collect::<Vec<_>>());
        prop_assert_eq!(g.interference(), s.interference());
        prop_assert_eq!(g.in_class_t(), s.in_class_t());
        let (lo, hi) = g.edge_length_extremes().unwrap();
        let (slo, shi) = s.edge_length_extremes().unwrap();
        prop_assert!((slo - alpha * lo).abs() <= 1e-9 * slo.max(1.0));
        prop_assert!((shi - alpha * hi).abs() <= 1e-9 * shi.max(1.0));
    }
}

#[test]
fn power_of_two_scaling_is_exact() {
    let g = CommGraph::new(
        PointSet::on_line(&[1.0, 2.0, 4.0, 8.0]).unwrap(),
        RadiusMap::from_values([1.0, 2.0, 4.0, 4.0]),
    )
    .unwrap();
    let s = g.scaled(8.0).unwrap();
    assert_eq!(s.edge_length_extremes().unwrap(), (8.0, 32.0));
    assert_eq!(s.interference(), g.interference());
}
