//! Communication graphs, closures and interference.
//!
//! A [`CommGraph`] is fully determined by its points and radii: `{p, q}` is an
//! edge iff `dist(p, q) <= min(r(p), r(q))`. The edge relation is derived once
//! at construction and never stored independently of the radii.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::geometry::{Edge, NodeId, PointSet};

/// Relative tolerance used when a radius did not come from a distance.
pub const RADIUS_TOLERANCE: f64 = 1e-9;

/// Transmission radius of one node.
///
/// A radius that was copied from the distance to a particular node remembers
/// that node (`reach`). Such radii are compared with exact equality when
/// deciding whether an edge is primitive, and they are recomputed (not
/// multiplied) when the geometry is rescaled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    value: f64,
    reach: Option<NodeId>,
}

impl Radius {
    pub const ZERO: Radius = Radius {
        value: 0.0,
        reach: None,
    };

    pub fn fixed(value: f64) -> Self {
        Radius { value, reach: None }
    }

    /// The radius of `owner` that just reaches `target`.
    pub fn reaching(points: &PointSet, owner: NodeId, target: NodeId) -> Self {
        Radius {
            value: points.dist(owner.0, target.0),
            reach: Some(target),
        }
    }

    /// `value` must be the distance from the owner to `target`, computed on the same coordinates.
    pub(crate) fn reaching_value(value: f64, target: NodeId) -> Self {
        Radius {
            value,
            reach: Some(target),
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.value
    }

    pub fn reach(self) -> Option<NodeId> {
        self.reach
    }
}

/// Per-node transmission radii, indexed by [`NodeId`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusMap {
    radii: Vec<Radius>,
}

impl RadiusMap {
    pub fn uniform(n: usize, r: f64) -> Self {
        RadiusMap {
            radii: vec![Radius::fixed(r); n],
        }
    }

    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Self {
        RadiusMap {
            radii: values.into_iter().map(Radius::fixed).collect(),
        }
    }

    pub fn from_radii(radii: Vec<Radius>) -> Self {
        RadiusMap { radii }
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn get(&self, id: NodeId) -> Option<Radius> {
        self.radii.get(id.0).copied()
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        self.radii[i].value
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.radii.iter().map(|r| r.value)
    }

    pub fn as_slice(&self) -> &[Radius] {
        &self.radii
    }

    fn validate(&self, points: &PointSet) -> Result<()> {
        if self.radii.len() != points.len() {
            return Err(Error::MissingRadius {
                expected: points.len(),
                found: self.radii.len(),
            });
        }
        for (i, r) in self.radii.iter().enumerate() {
            if r.value.is_nan() || r.value < 0.0 {
                return Err(Error::InvalidRadius {
                    node: NodeId(i),
                    value: r.value,
                });
            }
            if let Some(t) = r.reach {
                if !points.contains(t) {
                    return Err(Error::UnknownNode(t));
                }
            }
        }
        Ok(())
    }
}

/// A communication graph: points, radii and the symmetric edge relation they induce.
#[derive(Debug, Clone)]
pub struct CommGraph {
    points: PointSet,
    radii: RadiusMap,
    adj: Vec<Vec<usize>>,
    interference: Vec<u32>,
}

impl CommGraph {
    pub fn new(points: PointSet, radii: RadiusMap) -> Result<Self> {
        radii.validate(&points)?;
        let n = points.len();
        let mut adj = vec![Vec::new(); n];
        let mut interference = vec![0u32; n];

        // Sweep along the first axis: no pair further apart than the largest
        // radius can link or cover.
        let reach = radii.values().fold(0.0f64, f64::max);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| {
            points.coords(a)[0]
                .total_cmp(&points.coords(b)[0])
                .then(a.cmp(&b))
        });
        for (k, &a) in order.iter().enumerate() {
            let xa = points.coords(a)[0];
            let ra = radii.value(a);
            for &b in &order[k + 1..] {
                if points.coords(b)[0] - xa > reach {
                    break;
                }
                let d = points.dist(a, b);
                let rb = radii.value(b);
                let a_covers_b = d <= ra;
                let b_covers_a = d <= rb;
                if a_covers_b {
                    interference[b] += 1;
                }
                if b_covers_a {
                    interference[a] += 1;
                }
                if a_covers_b && b_covers_a {
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(CommGraph {
            points,
            radii,
            adj,
            interference,
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn radii(&self) -> &RadiusMap {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn radius(&self, id: NodeId) -> Result<f64> {
        self.check(id)?;
        Ok(self.radii.value(id.0))
    }

    /// Neighbour indices of node `i`, ascending.
    #[inline]
    pub fn adj(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbours(&self, id: NodeId) -> Result<impl Iterator<Item = NodeId> + '_> {
        self.check(id)?;
        Ok(self.adj[id.0].iter().map(|&v| NodeId(v)))
    }

    pub fn degree(&self, id: NodeId) -> Result<usize> {
        self.check(id)?;
        Ok(self.adj[id.0].len())
    }

    /// The edge predicate itself: `dist(a, b) <= min(r(a), r(b))`, `a != b`.
    #[inline]
    pub fn linked(&self, a: usize, b: usize) -> bool {
        a != b && self.points.dist(a, b) <= self.radii.value(a).min(self.radii.value(b))
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        let (a, b) = e.endpoints();
        self.points.contains(b) && self.linked(a.0, b.0)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| {
            list.iter()
                .filter(move |&&b| b > a)
                .map(move |&b| Edge::of(a, b))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edge_length(&self, e: Edge) -> f64 {
        self.points.dist(e.lo().0, e.hi().0)
    }

    /// Number of other nodes whose radius covers `p`.
    pub fn interference_at(&self, p: NodeId) -> Result<usize> {
        self.check(p)?;
        Ok(self.interference[p.0] as usize)
    }

    pub fn interference(&self) -> &[u32] {
        &self.interference
    }

    pub fn max_interference(&self) -> usize {
        self.interference.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn mean_interference(&self) -> f64 {
        let total: u64 = self.interference.iter().map(|&c| c as u64).sum();
        total as f64 / self.len() as f64
    }

    /// Whether the smaller endpoint radius equals the edge length.
    pub fn is_primitive(&self, e: Edge) -> Result<bool> {
        self.check_edge(e)?;
        Ok(self.primitive(e.lo().0, e.hi().0))
    }

    fn primitive(&self, a: usize, b: usize) -> bool {
        let d = self.points.dist(a, b);
        let (ra, rb) = (self.radii.radii[a], self.radii.radii[b]);
        let smaller = if ra.value <= rb.value { ra } else { rb };
        match smaller.reach {
            Some(_) => smaller.value == d,
            None => (smaller.value - d).abs() <= RADIUS_TOLERANCE * d,
        }
    }

    /// Whether some path of at most three edges joins the endpoints of `e`
    /// using only edges strictly shorter than `e`.
    pub fn is_bridged(&self, e: Edge) -> Result<bool> {
        self.check_edge(e)?;
        Ok(self.bridged(e.lo().0, e.hi().0))
    }

    fn bridged(&self, p: usize, q: usize) -> bool {
        let len = self.points.dist(p, q);
        for &v in &self.adj[p] {
            if self.points.dist(p, v) >= len {
                continue;
            }
            if self.points.dist(v, q) < len && self.linked(v, q) {
                return true;
            }
            for &w in &self.adj[v] {
                if w == p || w == q {
                    continue;
                }
                if self.points.dist(v, w) < len
                    && self.points.dist(w, q) < len
                    && self.linked(w, q)
                {
                    return true;
                }
            }
        }
        false
    }

    /// Membership in the class of graphs where no primitive edge is bridged.
    pub fn in_class_t(&self) -> bool {
        self.offending_edge().is_none()
    }

    /// The first primitive edge that is bridged, if any.
    pub fn offending_edge(&self) -> Option<Edge> {
        self.edges()
            .find(|e| self.primitive(e.lo().0, e.hi().0) && self.bridged(e.lo().0, e.hi().0))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(NodeId(u));
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Shortest and longest edge lengths.
    pub fn edge_length_extremes(&self) -> Result<(f64, f64)> {
        self.edges()
            .map(|e| self.edge_length(e))
            .fold(None, |acc: Option<(f64, f64)>, d| match acc {
                None => Some((d, d)),
                Some((lo, hi)) => Some((lo.min(d), hi.max(d))),
            })
            .ok_or(Error::EmptyEdgeSet)
    }

    /// Scales coordinates and radii by `alpha > 0`.
    pub fn scaled(&self, alpha: f64) -> Result<CommGraph> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale factor {alpha}")));
        }
        let points = self.points.scaled(alpha);
        let radii = self
            .radii
            .radii
            .iter()
            .enumerate()
            .map(|(i, r)| match r.reach {
                Some(t) => Radius::reaching(&points, NodeId(i), t),
                None => Radius::fixed(r.value * alpha),
            })
            .collect();
        CommGraph::new(points, RadiusMap::from_radii(radii))
    }

    pub fn to_embedded(&self) -> EmbeddedGraph {
        EmbeddedGraph {
            points: self.points.clone(),
            edges: self.edges().collect(),
        }
    }

    fn check(&self, id: NodeId) -> Result<()> {
        if self.points.contains(id) {
            Ok(())
        } else {
            Err(Error::UnknownNode(id))
        }
    }

    fn check_edge(&self, e: Edge) -> Result<()> {
        self.check(e.hi())?;
        if self.linked(e.lo().0, e.hi().0) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(e.lo(), e.hi()))
        }
    }
}

/// A graph embedded in `R^d` with an explicit edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedGraph {
    points: PointSet,
    edges: BTreeSet<Edge>,
}

impl EmbeddedGraph {
    pub fn new(points: PointSet, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(e) = edges.iter().find(|e| !points.contains(e.hi())) {
            return Err(Error::UnknownNode(e.hi()));
        }
        Ok(EmbeddedGraph { points, edges })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_length(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| self.points.dist(e.lo().0, e.hi().0))
            .sum()
    }

    /// The closure: radius of each node is its furthest neighbour's distance,
    /// and the edge set is whatever those radii induce.
    pub fn closure(&self) -> Result<CommGraph> {
        closure(self)
    }
}

/// Edge-minimal communication graph containing `h`.
pub fn closure(h: &EmbeddedGraph) -> Result<CommGraph> {
    let points = &h.points;
    let mut radii: Vec<Option<Radius>> = vec![None; points.len()];
    for e in &h.edges {
        let (a, b) = e.endpoints();
        let d = points.dist(a.0, b.0);
        for (own, other) in [(a, b), (b, a)] {
            let slot = &mut radii[own.0];
            if slot.is_none_or(|r| d > r.value) {
                *slot = Some(Radius::reaching(points, own, other));
            }
        }
    }
    let radii = radii
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or(Error::IsolatedNode(NodeId(i))))
        .collect::<Result<Vec<_>>>()?;
    CommGraph::new(points.clone(), RadiusMap::from_radii(radii))
}
