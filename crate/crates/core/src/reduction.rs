//! The 2-local radius-reduction protocol.
//!
//! Every node starts at its maximum radius. The protocol runs in three phases:
//!
//! 1. **Acquisition.** Each node learns position and maximum radius of every
//!    node within two hops of it in `G_max` ([`two_hop_view`]).
//! 2. **Reduction.** While the furthest neighbour still in range is bridged in
//!    `G_max`, the node shrinks its radius to the next-furthest neighbour
//!    ([`reduce_radius`]).
//! 3. **Asymmetric-edge removal.** Nodes exchange their phase-2 radii once and
//!    each shrinks to its furthest neighbour that it still reaches in both
//!    directions ([`remove_asymmetric`]).
//!
//! The result is a spanning subgraph of `G_max` with the same components, in
//! which no primitive edge is bridged.

use crate::error::{Error, Result};
use crate::geometry::{euclid, EdgeKey, NodeId};
use crate::graph::{CommGraph, Radius, RadiusMap};

const ABSENT: u32 = u32::MAX;

/// What a node knows after the acquisition phase: every node within two hops
/// of it in `G_max`, with position and maximum radius.
///
/// Neighbour lists are held for the center and its direct neighbours (the
/// complete lists, all of which stay inside the view). Adjacency between any
/// two members follows from their positions and maximum radii; see
/// [`LocalView::adjacent`].
#[derive(Debug, Clone)]
pub struct LocalView {
    center: NodeId,
    dim: usize,
    /// Slot 0 is the center, then 1-hop neighbours, then 2-hop nodes.
    ids: Vec<NodeId>,
    hops: Vec<u8>,
    coords: Vec<f64>,
    max_radii: Vec<f64>,
    /// Neighbour slots of slot `s` (center or 1-hop) are
    /// `adj_slots[adj_start[s]..adj_start[s + 1]]`.
    adj_start: Vec<usize>,
    adj_slots: Vec<u32>,
    by_id: Vec<(NodeId, u32)>,
}

impl LocalView {
    pub fn center(&self) -> NodeId {
        self.center
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Members in ascending id order.
    pub fn members(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.by_id.iter().map(|&(id, _)| id)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.slot(id).is_some()
    }

    /// Hop distance from the center (0, 1 or 2).
    pub fn hops(&self, id: NodeId) -> Option<u8> {
        self.slot(id).map(|s| self.hops[s])
    }

    pub fn position(&self, id: NodeId) -> Option<&[f64]> {
        self.slot(id).map(|s| self.coords(s))
    }

    pub fn max_radius(&self, id: NodeId) -> Option<f64> {
        self.slot(id).map(|s| self.max_radii[s])
    }

    /// The center's neighbours in `G_max`, ascending.
    pub fn center_neighbours(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.nbrs(0).iter().map(|&s| self.ids[s as usize]).collect();
        out.sort_unstable();
        out
    }

    /// Whether `a` and `b` are linked in `G_max`, judged from view data alone.
    pub fn adjacent(&self, a: NodeId, b: NodeId) -> Result<bool> {
        let sa = self.require(a)?;
        let sb = self.require(b)?;
        Ok(self.linked(sa, sb))
    }

    fn slot(&self, id: NodeId) -> Option<usize> {
        self.by_id
            .binary_search_by_key(&id, |&(i, _)| i)
            .ok()
            .map(|k| self.by_id[k].1 as usize)
    }

    fn require(&self, id: NodeId) -> Result<usize> {
        self.slot(id).ok_or(Error::NotInView {
            center: self.center,
            node: id,
        })
    }

    #[inline]
    fn coords(&self, s: usize) -> &[f64] {
        &self.coords[s * self.dim..(s + 1) * self.dim]
    }

    #[inline]
    fn dist(&self, a: usize, b: usize) -> f64 {
        euclid(self.coords(a), self.coords(b))
    }

    #[inline]
    fn linked(&self, a: usize, b: usize) -> bool {
        a != b && self.dist(a, b) <= self.max_radii[a].min(self.max_radii[b])
    }

    #[inline]
    fn nbrs(&self, s: usize) -> &[u32] {
        &self.adj_slots[self.adj_start[s]..self.adj_start[s + 1]]
    }

    /// The two checks of the bridging subroutine, over view data.
    ///
    /// `a` must be the center. True iff some `<a, v, b>` or `<a, v, w, b>` path
    /// in `G_max` has every hop strictly shorter than `dist(a, b)`. All
    /// two-hop paths are tried before any three-hop one.
    fn bridged(&self, a: usize, b: usize) -> bool {
        debug_assert_eq!(a, 0);
        let len = self.dist(a, b);
        let short = |x: usize, y: usize| self.dist(x, y) < len && self.linked(x, y);
        let mut firsts = Vec::with_capacity(self.nbrs(a).len());
        for &v in self.nbrs(a) {
            let v = v as usize;
            if self.dist(a, v) < len {
                if short(v, b) {
                    return true;
                }
                firsts.push(v);
            }
        }
        firsts.iter().any(|&v| {
            self.nbrs(v).iter().any(|&w| {
                let w = w as usize;
                w != b && self.dist(v, w) < len && short(w, b)
            })
        })
    }
}

/// Scratch space for building many views over one graph.
struct ViewBuilder {
    slot_of: Vec<u32>,
}

impl ViewBuilder {
    fn new(n: usize) -> Self {
        ViewBuilder {
            slot_of: vec![ABSENT; n],
        }
    }

    fn build(&mut self, g: &CommGraph, u: usize) -> LocalView {
        let points = g.points();
        let mut ids = vec![NodeId(u)];
        let mut hops = vec![0u8];
        self.slot_of[u] = 0;
        for &v in g.adj(u) {
            self.slot_of[v] = ids.len() as u32;
            ids.push(NodeId(v));
            hops.push(1);
        }
        for &v in g.adj(u) {
            for &w in g.adj(v) {
                if self.slot_of[w] == ABSENT {
                    self.slot_of[w] = ids.len() as u32;
                    ids.push(NodeId(w));
                    hops.push(2);
                }
            }
        }
        let one_hop = 1 + g.adj(u).len();
        let mut adj_start = Vec::with_capacity(one_hop + 1);
        let mut adj_slots = Vec::new();
        adj_start.push(0);
        for id in ids.iter().take(one_hop) {
            adj_slots.extend(g.adj(id.0).iter().map(|&w| self.slot_of[w]));
            adj_start.push(adj_slots.len());
        }
        let dim = points.dim();
        let mut coords = Vec::with_capacity(ids.len() * dim);
        let mut max_radii = Vec::with_capacity(ids.len());
        for id in &ids {
            coords.extend_from_slice(points.coords(id.0));
            max_radii.push(g.radii().value(id.0));
        }
        let mut by_id: Vec<(NodeId, u32)> = ids
            .iter()
            .enumerate()
            .map(|(s, &id)| (id, s as u32))
            .collect();
        by_id.sort_unstable();
        for id in &ids {
            self.slot_of[id.0] = ABSENT;
        }
        LocalView {
            center: NodeId(u),
            dim,
            ids,
            hops,
            coords,
            max_radii,
            adj_start,
            adj_slots,
            by_id,
        }
    }
}

/// Acquisition phase for node `u`.
pub fn two_hop_view(g_max: &CommGraph, u: NodeId) -> Result<LocalView> {
    if !g_max.points().contains(u) {
        return Err(Error::UnknownNode(u));
    }
    Ok(ViewBuilder::new(g_max.len()).build(g_max, u.0))
}

/// Bridging test run by the view's center `a` against `b`.
pub fn bridged_local(view: &LocalView, a: NodeId, b: NodeId) -> Result<bool> {
    if a != view.center {
        return Err(Error::InvalidParameter(format!(
            "bridging is evaluated at the view center {}, not {a}",
            view.center
        )));
    }
    let sb = view.require(b)?;
    Ok(view.bridged(0, sb))
}

/// Reduction phase at the view's center. Returns the phase-2 radius.
///
/// Neighbours are visited from furthest to nearest (by [`EdgeKey`]). The
/// radius stays at its maximum if the furthest neighbour is not bridged;
/// otherwise it drops to each next neighbour in turn until one is found that
/// is not bridged.
pub fn reduce_radius(view: &LocalView) -> Radius {
    let mut order: Vec<(EdgeKey, usize)> = view
        .nbrs(0)
        .iter()
        .map(|&s| {
            let s = s as usize;
            (EdgeKey::new(view.dist(0, s), view.center.0, view.ids[s].0), s)
        })
        .collect();
    order.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    let mut radius = Radius::fixed(view.max_radii[0]);
    for (k, &(_, f)) in order.iter().enumerate() {
        if !view.bridged(0, f) {
            return radius;
        }
        radius = match order.get(k + 1) {
            Some(&(key, next)) => Radius::reaching_value(key.length, view.ids[next]),
            None => Radius::ZERO,
        };
    }
    radius
}

/// Phase-2 radii, indexed by node.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedRadii(Vec<Radius>);

impl ReducedRadii {
    pub fn get(&self, id: NodeId) -> Option<Radius> {
        self.0.get(id.0).copied()
    }

    pub fn as_slice(&self) -> &[Radius] {
        &self.0
    }

    pub fn into_radius_map(self) -> RadiusMap {
        RadiusMap::from_radii(self.0)
    }
}

impl From<Vec<Radius>> for ReducedRadii {
    fn from(v: Vec<Radius>) -> Self {
        ReducedRadii(v)
    }
}

/// Asymmetric-edge removal at the view's center.
///
/// Returns the distance to the furthest `G_max` neighbour `v` with
/// `dist(u, v) <= min(r'(u), r'(v))`, or zero when there is none. Only the
/// phase-2 radii of the center's neighbours are read from `reduced`.
pub fn remove_asymmetric(view: &LocalView, own: Radius, reduced: &ReducedRadii) -> Result<Radius> {
    let mut candidates = Vec::with_capacity(view.nbrs(0).len());
    for &s in view.nbrs(0) {
        let s = s as usize;
        let id = view.ids[s];
        let theirs = reduced.get(id).ok_or(Error::UnknownNode(id))?;
        candidates.push((id, view.dist(0, s), theirs.value()));
    }
    Ok(furthest_mutual(view.center, own, candidates))
}

fn furthest_mutual(
    center: NodeId,
    own: Radius,
    neighbours: impl IntoIterator<Item = (NodeId, f64, f64)>,
) -> Radius {
    neighbours
        .into_iter()
        .filter(|&(_, d, theirs)| d <= own.value().min(theirs))
        .max_by_key(|&(v, d, _)| EdgeKey::new(d, center.0, v.0))
        .map_or(Radius::ZERO, |(v, d, _)| Radius::reaching_value(d, v))
}

/// Reduction phase for every node, visiting nodes in `order`.
///
/// Each node reads only its own view of the immutable `G_max`, so the result
/// does not depend on `order`.
pub fn reduce_radii(g_max: &CommGraph, order: impl IntoIterator<Item = NodeId>) -> Result<ReducedRadii> {
    let mut builder = ViewBuilder::new(g_max.len());
    let mut out: Vec<Option<Radius>> = vec![None; g_max.len()];
    for u in order {
        if !g_max.points().contains(u) {
            return Err(Error::UnknownNode(u));
        }
        let view = builder.build(g_max, u.0);
        out[u.0] = Some(reduce_radius(&view));
    }
    out.into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(Error::UnknownNode(NodeId(i))))
        .collect::<Result<Vec<_>>>()
        .map(ReducedRadii)
}

/// Full protocol result, with the intermediate phase-2 radii.
#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    pub reduced: ReducedRadii,
    pub graph: CommGraph,
}

/// Runs all three phases on `G_max` and returns `G_min`.
pub fn run_protocol(g_max: &CommGraph) -> Result<CommGraph> {
    Ok(run_protocol_detailed(g_max)?.graph)
}

pub fn run_protocol_detailed(g_max: &CommGraph) -> Result<ProtocolOutcome> {
    let reduced = reduce_radii(g_max, g_max.points().ids())?;
    let points = g_max.points();
    let finals: Vec<Radius> = (0..g_max.len())
        .map(|u| {
            let own = reduced.0[u];
            if g_max.adj(u).is_empty() {
                // No neighbour constrains an isolated node.
                return own;
            }
            let neighbours = g_max
                .adj(u)
                .iter()
                .map(|&v| (NodeId(v), points.dist(u, v), reduced.0[v].value()));
            furthest_mutual(NodeId(u), own, neighbours)
        })
        .collect();
    let graph = CommGraph::new(points.clone(), RadiusMap::from_radii(finals))?;
    Ok(ProtocolOutcome { reduced, graph })
}
