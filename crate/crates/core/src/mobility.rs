//! Node placement and mobility: uniform placement, random walk, random waypoint.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Axis-aligned simulation region `[0, e_1] x ... x [0, e_d]`, in metres.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    extents: Vec<f64>,
}

impl Default for Region {
    fn default() -> Self {
        Region {
            extents: vec![1000.0, 1000.0],
        }
    }
}

impl Region {
    pub fn new(extents: impl Into<Vec<f64>>) -> Result<Self> {
        let extents = extents.into();
        if extents.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(e) = extents.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(Error::InvalidParameter(format!("region extent {e}")));
        }
        Ok(Region { extents })
    }

    /// A cube with side `side` in `dim` dimensions.
    pub fn cube(dim: usize, side: f64) -> Result<Self> {
        Region::new(vec![side; dim])
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[f64] {
        &self.extents
    }

    pub fn center(&self) -> Vec<f64> {
        self.extents.iter().map(|e| e / 2.0).collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim() && p.iter().zip(&self.extents).all(|(c, e)| (0.0..=*e).contains(c))
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        self.extents.iter().map(|e| rng.gen::<f64>() * e).collect()
    }

    fn planar(&self) -> Result<(f64, f64)> {
        match self.extents[..] {
            [w, h] => Ok((w, h)),
            _ => Err(Error::InvalidParameter(format!(
                "mobility models are planar; region has dimension {}",
                self.dim()
            ))),
        }
    }
}

/// `n` independent uniform points in `region`, reproducible from `seed`.
pub fn place_uniform(n: usize, region: &Region, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n).flat_map(|_| region.sample(&mut rng)).collect();
    PointSet::from_flat(region.dim(), coords)
}

/// Smallest distance between any two points.
pub fn min_pairwise_distance(points: &PointSet) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, found: n });
    }
    let mut best = f64::INFINITY;
    for a in 0..n {
        for b in a + 1..n {
            best = best.min(points.dist(a, b));
        }
    }
    Ok(best)
}

/// Source distribution of node positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributionKind {
    Uniform,
    WalkStationary,
    WaypointStationary,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionSpec {
    pub kind: DistributionKind,
    /// Upper bound on the density over the unit cube, when known.
    pub density_bound: Option<f64>,
}

impl DistributionSpec {
    pub fn uniform() -> Self {
        DistributionSpec {
            kind: DistributionKind::Uniform,
            density_bound: Some(1.0),
        }
    }

    /// Exponent `c` such that the minimum pairwise distance of `n` samples in
    /// `[0,1]^d` exceeds `n^-c` with probability at least `1 - 1/n`:
    /// `c = 1 + (log2(c') + 2) / d`.
    pub fn separation_exponent(&self, dim: usize) -> Option<f64> {
        self.density_bound
            .map(|c| 1.0 + (c.log2() + 2.0) / dim as f64)
    }
}

/// Probability lower bound `1 - 1/n` on the separation event.
pub fn separation_probability_bound(n: usize) -> f64 {
    1.0 - 1.0 / n as f64
}

/// Speed and direction resampling bounds shared by both mobility models.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionParams {
    pub region: Region,
    pub v_min: f64,
    pub v_max: f64,
}

impl MotionParams {
    pub fn new(region: Region, v_min: f64, v_max: f64) -> Result<Self> {
        region.planar()?;
        if !(0.0 <= v_min && v_min <= v_max && v_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("speed range [{v_min}, {v_max}]")));
        }
        Ok(MotionParams { region, v_min, v_max })
    }

    fn speed(&self, rng: &mut impl Rng) -> f64 {
        if self.v_max > self.v_min {
            rng.gen_range(self.v_min..=self.v_max)
        } else {
            self.v_min
        }
    }
}

/// One node under the random-walk model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkState {
    pub position: [f64; 2],
    pub speed: f64,
    /// Radians.
    pub direction: f64,
}

/// Advances one random-walk node by `dt` seconds.
///
/// When `interval_elapsed`, speed and direction are redrawn first. A move that
/// would leave the region is replaced by the same-length move in the reversed
/// direction; if that also leaves the region the position is clamped.
pub fn walk_step(
    state: &WalkState,
    params: &MotionParams,
    dt: f64,
    interval_elapsed: bool,
    rng: &mut impl Rng,
) -> WalkState {
    let mut next = *state;
    if interval_elapsed {
        next.speed = params.speed(rng);
        next.direction = rng.gen::<f64>() * TAU;
    }
    let region = &params.region;
    let step = next.speed * dt;
    let advance = |dir: f64| {
        [
            state.position[0] + step * dir.cos(),
            state.position[1] + step * dir.sin(),
        ]
    };
    let proposed = advance(next.direction);
    if region.contains(&proposed) {
        next.position = proposed;
        return next;
    }
    next.direction = (next.direction + PI) % TAU;
    let reflected = advance(next.direction);
    let (w, h) = (region.extents[0], region.extents[1]);
    next.position = [reflected[0].clamp(0.0, w), reflected[1].clamp(0.0, h)];
    next
}

/// A population of random-walk nodes with per-node random streams.
#[derive(Debug, Clone)]
pub struct RandomWalk {
    params: MotionParams,
    interval: f64,
    since_resample: f64,
    nodes: Vec<WalkState>,
    rngs: Vec<ChaCha8Rng>,
}

impl RandomWalk {
    /// Uniform initial positions (the same ones [`place_uniform`] yields for
    /// `seed`), with speed and direction drawn from each node's own stream.
    pub fn new(n: usize, params: MotionParams, interval: f64, seed: u64) -> Result<Self> {
        if !(interval > 0.0) {
            return Err(Error::InvalidParameter(format!("resample interval {interval}")));
        }
        let start = place_uniform(n, &params.region, seed)?;
        let mut rngs = node_streams(n, seed);
        let nodes = rngs
            .iter_mut()
            .enumerate()
            .map(|(i, rng)| {
                let c = start.coords(i);
                WalkState {
                    position: [c[0], c[1]],
                    speed: params.speed(rng),
                    direction: rng.gen::<f64>() * TAU,
                }
            })
            .collect();
        Ok(RandomWalk {
            params,
            interval,
            since_resample: 0.0,
            nodes,
            rngs,
        })
    }

    pub fn advance(&mut self, dt: f64) {
        let resample = self.since_resample >= self.interval;
        if resample {
            self.since_resample = 0.0;
        }
        for (node, rng) in self.nodes.iter_mut().zip(&mut self.rngs) {
            *node = walk_step(node, &self.params, dt, resample, rng);
        }
        self.since_resample += dt;
    }

    pub fn nodes(&self) -> &[WalkState] {
        &self.nodes
    }

    pub fn snapshot(&self) -> PointSet {
        planar_snapshot(self.nodes.iter().map(|s| s.position))
    }
}

/// Random-waypoint parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct WaypointParams {
    pub motion: MotionParams,
    pub pause_max: f64,
}

/// One node under the random-waypoint model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaypointState {
    pub position: [f64; 2],
    pub destination: [f64; 2],
    pub speed: f64,
    /// Remaining pause in seconds; `None` while moving.
    pub pause: Option<f64>,
}

/// Advances one random-waypoint node by `dt` seconds.
pub fn waypoint_step(
    state: &WaypointState,
    params: &WaypointParams,
    dt: f64,
    rng: &mut impl Rng,
) -> WaypointState {
    let mut next = *state;
    match state.pause {
        Some(remaining) => {
            let left = remaining - dt;
            if left > 0.0 {
                next.pause = Some(left);
            } else {
                let d = params.motion.region.sample(rng);
                next.destination = [d[0], d[1]];
                next.speed = params.motion.speed(rng);
                next.pause = None;
            }
        }
        None => {
            let [x, y] = state.position;
            let [tx, ty] = state.destination;
            let remaining = (tx - x).hypot(ty - y);
            let step = state.speed * dt;
            if remaining <= step {
                next.position = state.destination;
                next.pause = Some(rng.gen::<f64>() * params.pause_max);
            } else {
                let f = step / remaining;
                next.position = [x + (tx - x) * f, y + (ty - y) * f];
            }
        }
    }
    next
}

/// A population of random-waypoint nodes with per-node random streams.
#[derive(Debug, Clone)]
pub struct RandomWaypoint {
    params: WaypointParams,
    nodes: Vec<WaypointState>,
    rngs: Vec<ChaCha8Rng>,
}

impl RandomWaypoint {
    pub fn new(n: usize, params: WaypointParams, seed: u64) -> Result<Self> {
        if !(params.pause_max >= 0.0 && params.pause_max.is_finite()) {
            return Err(Error::InvalidParameter(format!("pause bound {}", params.pause_max)));
        }
        let start = place_uniform(n, &params.motion.region, seed)?;
        let mut rngs = node_streams(n, seed);
        let nodes = rngs
            .iter_mut()
            .enumerate()
            .map(|(i, rng)| {
                let c = start.coords(i);
                let d = params.motion.region.sample(rng);
                WaypointState {
                    position: [c[0], c[1]],
                    destination: [d[0], d[1]],
                    speed: params.motion.speed(rng),
                    pause: None,
                }
            })
            .collect();
        Ok(RandomWaypoint { params, nodes, rngs })
    }

    pub fn advance(&mut self, dt: f64) {
        for (node, rng) in self.nodes.iter_mut().zip(&mut self.rngs) {
            *node = waypoint_step(node, &self.params, dt, rng);
        }
    }

    pub fn nodes(&self) -> &[WaypointState] {
        &self.nodes
    }

    pub fn snapshot(&self) -> PointSet {
        planar_snapshot(self.nodes.iter().map(|s| s.position))
    }
}

/// Stream 0 places nodes; node `i` moves with stream `i + 1`.
fn node_streams(n: usize, seed: u64) -> Vec<ChaCha8Rng> {
    (0..n)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            rng
        })
        .collect()
}

fn planar_snapshot(positions: impl Iterator<Item = [f64; 2]>) -> PointSet {
    PointSet::from_flat(2, positions.flat_map(|p| p).collect()).expect("non-empty finite positions")
}
