//! Brute-force reference implementations.
//!
//! Everything here works directly on coordinates and radius values with its
//! own distance and edge predicate; nothing calls into [`crate::graph`]. The
//! point is to check the real implementations against code that shares no
//! logic with them.

use crate::error::{Error, Result};
use crate::geometry::PointSet;

fn dist(points: &PointSet, a: usize, b: usize) -> f64 {
    let (p, q) = (points.coords(a), points.coords(b));
    let mut acc = 0.0;
    for i in 0..p.len() {
        acc += (p[i] - q[i]) * (p[i] - q[i]);
    }
    acc.sqrt()
}

fn covers(points: &PointSet, radii: &[f64], from: usize, to: usize) -> bool {
    dist(points, from, to) <= radii[from]
}

fn linked(points: &PointSet, radii: &[f64], a: usize, b: usize) -> bool {
    a != b && covers(points, radii, a, b) && covers(points, radii, b, a)
}

/// All edges, by evaluating the link predicate on every pair.
pub fn naive_edges(points: &PointSet, radii: &[f64]) -> Vec<(usize, usize)> {
    let n = points.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if linked(points, radii, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Number of nodes `q != p` whose radius reaches `p`.
pub fn naive_interference(points: &PointSet, radii: &[f64], p: usize) -> usize {
    (0..points.len())
        .filter(|&q| q != p && covers(points, radii, q, p))
        .count()
}

pub fn naive_max_interference(points: &PointSet, radii: &[f64]) -> usize {
    (0..points.len())
        .map(|p| naive_interference(points, radii, p))
        .max()
        .unwrap_or(0)
}

pub fn naive_connected(points: &PointSet, radii: &[f64]) -> bool {
    let n = points.len();
    let mut label: Vec<usize> = (0..n).collect();
    for (a, b) in naive_edges(points, radii) {
        let (la, lb) = (label[a], label[b]);
        if la != lb {
            for l in &mut label {
                if *l == lb {
                    *l = la;
                }
            }
        }
    }
    label.iter().all(|&l| l == label[0])
}

/// Every simple path of at most three edges from `p` to `q`, checked for
/// hops all strictly shorter than `dist(p, q)`.
pub fn exhaustive_bridged(points: &PointSet, radii: &[f64], p: usize, q: usize) -> bool {
    let n = points.len();
    let len = dist(points, p, q);
    let short_edge = |a: usize, b: usize| linked(points, radii, a, b) && dist(points, a, b) < len;
    for v in 0..n {
        if v == p || v == q {
            continue;
        }
        if short_edge(p, v) && short_edge(v, q) {
            return true;
        }
        for w in 0..n {
            if w == p || w == q || w == v {
                continue;
            }
            if short_edge(p, v) && short_edge(v, w) && short_edge(w, q) {
                return true;
            }
        }
    }
    false
}

/// Total length of the lightest spanning tree, by enumerating all `n^(n-2)`
/// labelled trees through their Prüfer sequences.
pub fn exhaustive_mst_weight(points: &PointSet) -> Result<f64> {
    let n = points.len();
    if !(2..=8).contains(&n) {
        return Err(Error::OracleRange {
            min: 2,
            max: 8,
            found: n,
        });
    }
    if n == 2 {
        return Ok(dist(points, 0, 1));
    }
    let mut best = f64::INFINITY;
    let mut seq = vec![0usize; n - 2];
    loop {
        let w: f64 = prufer_edges(&seq, n)
            .into_iter()
            .map(|(a, b)| dist(points, a, b))
            .sum();
        best = best.min(w);
        // Next sequence in base-n counting order.
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return Ok(best);
        }
    }
}

/// Decodes a Prüfer sequence into the edges of a labelled tree on `n` nodes.
pub fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// For each node, the sorted distances to every other node.
///
/// Any radius assignment can be rounded down to these values without changing
/// the edge set or anyone's coverage, so an optimum over the lattice is an
/// optimum overall.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusCandidateLattice {
    pub candidates: Vec<Vec<f64>>,
}

impl RadiusCandidateLattice {
    pub fn new(points: &PointSet) -> Self {
        let n = points.len();
        let candidates = (0..n)
            .map(|p| {
                let mut c: Vec<f64> = (0..n).filter(|&q| q != p).map(|q| dist(points, p, q)).collect();
                c.sort_by(f64::total_cmp);
                c.dedup();
                c
            })
            .collect();
        RadiusCandidateLattice { candidates }
    }

    /// Rounds each radius down to the largest candidate not exceeding it
    /// (zero when it is below every candidate).
    pub fn round_down(&self, radii: &[f64]) -> Vec<f64> {
        self.candidates
            .iter()
            .zip(radii)
            .map(|(c, &r)| c.iter().copied().filter(|&d| d <= r).fold(0.0, f64::max))
            .collect()
    }
}

/// Smallest possible maximum interference over all connected communication
/// graphs on `points`, by exhaustive search of the candidate lattice.
pub fn brute_force_opt(points: &PointSet) -> Result<usize> {
    let n = points.len();
    if !(2..=6).contains(&n) {
        return Err(Error::OracleRange {
            min: 2,
            max: 6,
            found: n,
        });
    }
    let lattice = RadiusCandidateLattice::new(points);
    let mut choice = vec![0usize; n];
    let mut radii = vec![0.0; n];
    let mut best = usize::MAX;
    loop {
        for (p, &c) in choice.iter().enumerate() {
            radii[p] = lattice.candidates[p][c];
        }
        let worst = naive_max_interference(points, &radii);
        if worst < best && naive_connected(points, &radii) {
            best = worst;
        }
        let mut i = 0;
        while i < n {
            choice[i] += 1;
            if choice[i] < lattice.candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(best);
        }
    }
}
