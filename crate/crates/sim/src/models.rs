//! Placement models, looked up by name like the topology strategies.

use std::collections::BTreeMap;
use std::fmt;

use topocon_core::mobility::{place_uniform, RandomWalk, RandomWaypoint};
use topocon_core::PointSet;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

/// Seconds between speed and direction redraws in the random walk.
pub const WALK_INTERVAL: f64 = 1.0;

/// Produces the node positions of one trial.
pub trait Placement: Send + Sync {
    fn name(&self) -> &str;

    fn place(&self, n: usize, cfg: &ExperimentConfig, seed: u64) -> Result<PointSet>;
}

fn steps(cfg: &ExperimentConfig) -> usize {
    (cfg.duration / cfg.cadence).round() as usize
}

/// Independent uniform positions.
#[derive(Debug, Default, Clone, Copy)]
pub struct StaticUniform;

impl Placement for StaticUniform {
    fn name(&self) -> &str {
        "static"
    }

    fn place(&self, n: usize, cfg: &ExperimentConfig, seed: u64) -> Result<PointSet> {
        Ok(place_uniform(n, &cfg.region, seed)?)
    }
}

/// Random-walk population after `duration` simulated seconds.
#[derive(Debug, Default, Clone, Copy)]
pub struct WalkSnapshot;

impl Placement for WalkSnapshot {
    fn name(&self) -> &str {
        "walk"
    }

    fn place(&self, n: usize, cfg: &ExperimentConfig, seed: u64) -> Result<PointSet> {
        let mut sim = RandomWalk::new(n, cfg.motion()?, WALK_INTERVAL, seed)?;
        for _ in 0..steps(cfg) {
            sim.advance(cfg.cadence);
        }
        Ok(sim.snapshot())
    }
}

/// Random-waypoint population after `duration` simulated seconds.
#[derive(Debug, Default, Clone, Copy)]
pub struct WaypointSnapshot;

impl Placement for WaypointSnapshot {
    fn name(&self) -> &str {
        "waypoint"
    }

    fn place(&self, n: usize, cfg: &ExperimentConfig, seed: u64) -> Result<PointSet> {
        let mut sim = RandomWaypoint::new(n, cfg.waypoint()?, seed)?;
        for _ in 0..steps(cfg) {
            sim.advance(cfg.cadence);
        }
        Ok(sim.snapshot())
    }
}

/// The same given points for every trial. Handy for hand-built instances.
#[derive(Debug, Clone)]
pub struct FixedPlacement {
    name: String,
    points: PointSet,
}

impl FixedPlacement {
    pub fn new(name: impl Into<String>, points: PointSet) -> Self {
        FixedPlacement {
            name: name.into(),
            points,
        }
    }
}

impl Placement for FixedPlacement {
    fn name(&self) -> &str {
        &self.name
    }

    fn place(&self, n: usize, _cfg: &ExperimentConfig, _seed: u64) -> Result<PointSet> {
        if n != self.points.len() {
            return Err(HarnessError::config(format!(
                "placement {} has {} points, {n} requested",
                self.name,
                self.points.len()
            )));
        }
        Ok(self.points.clone())
    }
}

pub struct PlacementRegistry {
    entries: BTreeMap<String, Box<dyn Placement>>,
}

impl fmt::Debug for PlacementRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl Default for PlacementRegistry {
    fn default() -> Self {
        PlacementRegistry::with_builtins()
    }
}

impl PlacementRegistry {
    pub fn empty() -> Self {
        PlacementRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = PlacementRegistry::empty();
        reg.register(StaticUniform);
        reg.register(WalkSnapshot);
        reg.register(WaypointSnapshot);
        reg
    }

    pub fn register(&mut self, placement: impl Placement + 'static) {
        self.entries.insert(placement.name().to_string(), Box::new(placement));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Placement> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> + '_ {
        self.entries.keys().map(String::as_str)
    }
}
