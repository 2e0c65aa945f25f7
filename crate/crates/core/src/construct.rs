//! Candidate topologies: Euclidean MST, unit-disc graph, Gabriel ∩ UDG.

use crate::error::{Error, Result};
use crate::geometry::{Edge, EdgeKey, PointSet};
use crate::graph::{CommGraph, EmbeddedGraph, RadiusMap};

/// An edge together with its Euclidean length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedEdge {
    pub edge: Edge,
    pub length: f64,
}

impl WeightedEdge {
    pub fn between(points: &PointSet, a: usize, b: usize) -> Self {
        WeightedEdge {
            edge: Edge::of(a, b),
            length: points.dist(a, b),
        }
    }

    pub fn key(&self) -> EdgeKey {
        EdgeKey {
            length: self.length,
            edge: self.edge,
        }
    }
}

/// Minimum spanning tree of the complete Euclidean graph.
///
/// Dense Prim, `O(n^2)`. Edges are compared by [`EdgeKey`], a strict total
/// order, so the tree is unique and does not depend on the algorithm.
pub fn euclidean_mst(points: &PointSet) -> Result<EmbeddedGraph> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<Option<EdgeKey>> = vec![None; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let mut next: Option<(usize, EdgeKey)> = None;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let candidate = points.key(current, v);
            if best[v].is_none_or(|b| candidate < b) {
                best[v] = Some(candidate);
            }
            let key = best[v].expect("just set");
            if next.is_none_or(|(_, k)| key < k) {
                next = Some((v, key));
            }
        }
        let (v, key) = next.expect("a node outside the tree remains");
        in_tree[v] = true;
        edges.push(key.edge);
        current = v;
    }
    EmbeddedGraph::new(points.clone(), edges)
}

/// Every node transmits at radius `r`.
pub fn unit_disc_graph(points: &PointSet, r: f64) -> Result<CommGraph> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("unit-disc radius {r}")));
    }
    CommGraph::new(points.clone(), RadiusMap::uniform(points.len(), r))
}

/// Gabriel graph restricted to pairs within distance `r`.
///
/// `{u, v}` survives iff no third point lies strictly inside the circle with
/// diameter `uv`; points on the circle do not block.
pub fn gabriel_udg(points: &PointSet, r: f64) -> Result<EmbeddedGraph> {
    Ok(gabriel_filter(&unit_disc_graph(points, r)?))
}

/// Gabriel test applied to the edges of an existing communication graph.
pub fn gabriel_filter(g: &CommGraph) -> EmbeddedGraph {
    let points = g.points();
    let n = points.len();
    let first = g.radii().value(0);
    let uniform = g.radii().values().all(|r| r == first);
    let everyone: Vec<usize> = (0..n).collect();
    let edges = g.edges().filter(|e| {
        let (u, v) = (e.lo().0, e.hi().0);
        // A blocking point is strictly closer to u than v is, so under uniform
        // radii it is one of u's neighbours.
        let candidates = if uniform { g.adj(u) } else { &everyone[..] };
        !candidates
            .iter()
            .any(|&w| w != u && w != v && strictly_inside_diametral_disc(points, u, v, w))
    });
    EmbeddedGraph::new(points.clone(), edges).expect("edges come from the same point set")
}

/// `w` is strictly inside the circle with diameter `uv` iff the angle `uwv` is obtuse.
fn strictly_inside_diametral_disc(points: &PointSet, u: usize, v: usize, w: usize) -> bool {
    let (pu, pv, pw) = (points.coords(u), points.coords(v), points.coords(w));
    let dot: f64 = pu
        .iter()
        .zip(pv)
        .zip(pw)
        .map(|((a, b), c)| (a - c) * (b - c))
        .sum();
    dot < 0.0
}
