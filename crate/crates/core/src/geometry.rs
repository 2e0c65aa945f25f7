//! Points, node identities and the Euclidean metric.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Dense node identifier, `0..n` within one point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i)
    }
}

/// A position in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Point { coords: coords.into() }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point { coords }
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn distance(p: &Point, q: &Point) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(euclid(p.coords(), q.coords()))
}

/// Distance on raw coordinate slices. Callers guarantee equal lengths.
///
/// Symmetric bit-for-bit: `(a - b)^2 == (b - a)^2` in IEEE arithmetic, so
/// `euclid(p, q) == euclid(q, p)` exactly. Radii copied from distances rely on this.
#[inline]
pub(crate) fn euclid(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let t = a - b;
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

/// An unordered pair of distinct nodes, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: NodeId,
    hi: NodeId,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Result<Self> {
        match a.cmp(&b) {
            Ordering::Less => Ok(Edge { lo: a, hi: b }),
            Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Panics on a self-loop.
    pub fn of(a: usize, b: usize) -> Self {
        Edge::new(NodeId(a), NodeId(b)).expect("edge endpoints must differ")
    }

    pub fn lo(self) -> NodeId {
        self.lo
    }

    pub fn hi(self) -> NodeId {
        self.hi
    }

    pub fn endpoints(self) -> (NodeId, NodeId) {
        (self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

/// Total order on edges: by length, then smaller id, then larger id.
///
/// Stands in for the general-position assumption: when two lengths tie, the
/// ids decide, as if the points had been perturbed infinitesimally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeKey {
    pub length: f64,
    pub edge: Edge,
}

impl EdgeKey {
    pub fn new(length: f64, a: usize, b: usize) -> Self {
        EdgeKey {
            length,
            edge: Edge::of(a, b),
        }
    }
}

impl Eq for EdgeKey {}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .total_cmp(&other.length)
            .then_with(|| self.edge.cmp(&other.edge))
    }
}

/// A set of `n ≥ 1` points of a common dimension, indexed by dense [`NodeId`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut dim = None;
        let mut coords = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            let d = *dim.get_or_insert(p.dim());
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
            if p.coords().iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFiniteCoordinate(NodeId(i)));
            }
            coords.extend_from_slice(p.coords());
        }
        let dim = dim.ok_or(Error::EmptyPointSet)?;
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(PointSet { dim, coords })
    }

    /// Builds from a flat row-major coordinate buffer.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if coords.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate(NodeId(i / dim)));
        }
        Ok(PointSet { dim, coords })
    }

    /// Points on a line at the given positions (`d = 1`).
    pub fn on_line(xs: &[f64]) -> Result<Self> {
        PointSet::from_flat(1, xs.to_vec())
    }

    /// Planar points.
    pub fn planar(xy: &[(f64, f64)]) -> Result<Self> {
        PointSet::from_flat(2, xy.iter().flat_map(|&(x, y)| [x, y]).collect())
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ids(&self) -> impl Iterator<Item = NodeId> {
        (0..self.len()).map(NodeId)
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.len()
    }

    /// Coordinates of node `i`. Panics when out of range.
    #[inline]
    pub fn coords(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn point(&self, id: NodeId) -> Result<Point> {
        if !self.contains(id) {
            return Err(Error::UnknownNode(id));
        }
        Ok(Point::new(self.coords(id.0)))
    }

    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        euclid(self.coords(a), self.coords(b))
    }

    pub fn key(&self, a: usize, b: usize) -> EdgeKey {
        EdgeKey::new(self.dist(a, b), a, b)
    }

    /// Uniform scaling of every coordinate by `alpha`.
    pub fn scaled(&self, alpha: f64) -> PointSet {
        PointSet {
            dim: self.dim,
            coords: self.coords.iter().map(|c| c * alpha).collect(),
        }
    }

    /// Subset of nodes, re-indexed densely in the order given.
    pub fn select(&self, ids: &[NodeId]) -> Result<PointSet> {
        let mut coords = Vec::with_capacity(ids.len() * self.dim);
        for &id in ids {
            if !self.contains(id) {
                return Err(Error::UnknownNode(id));
            }
            coords.extend_from_slice(self.coords(id.0));
        }
        PointSet::from_flat(self.dim, coords)
    }

    /// True when all pairwise distances are distinct.
    pub fn in_general_position(&self) -> bool {
        let n = self.len();
        let mut lengths = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                lengths.push(self.dist(a, b));
            }
        }
        lengths.sort_by(f64::total_cmp);
        lengths.windows(2).all(|w| w[0] != w[1])
    }
}
