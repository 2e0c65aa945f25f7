//! Topology-control strategies behind a common trait, looked up by name.
//!
//! Each strategy turns the maximum-power graph `G_max` into the communication
//! graph whose interference gets measured. The built-ins are:
//!
//! | name      | topology                                   |
//! |-----------|--------------------------------------------|
//! | `udg`     | `G_max` itself                             |
//! | `gabriel` | closure of Gabriel ∩ `G_max`               |
//! | `mst`     | closure of the Euclidean MST (ignores `G_max` edges) |
//! | `lrr`     | output of the local radius-reduction protocol |

use std::collections::BTreeMap;
use std::fmt;

use crate::construct::{euclidean_mst, gabriel_filter};
use crate::error::Result;
use crate::graph::CommGraph;
use crate::reduction::run_protocol;

pub trait Topology: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether the strategy only makes sense on a connected `G_max`.
    fn requires_connected(&self) -> bool {
        true
    }

    fn build(&self, g_max: &CommGraph) -> Result<CommGraph>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct UnitDisc;

impl Topology for UnitDisc {
    fn name(&self) -> &'static str {
        "udg"
    }

    fn build(&self, g_max: &CommGraph) -> Result<CommGraph> {
        Ok(g_max.clone())
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct Gabriel;

impl Topology for Gabriel {
    fn name(&self) -> &'static str {
        "gabriel"
    }

    fn build(&self, g_max: &CommGraph) -> Result<CommGraph> {
        gabriel_filter(g_max).closure()
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct MinimumSpanningTree;

impl Topology for MinimumSpanningTree {
    fn name(&self) -> &'static str {
        "mst"
    }

    fn requires_connected(&self) -> bool {
        false
    }

    fn build(&self, g_max: &CommGraph) -> Result<CommGraph> {
        euclidean_mst(g_max.points())?.closure()
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct LocalRadiusReduction;

impl Topology for LocalRadiusReduction {
    fn name(&self) -> &'static str {
        "lrr"
    }

    fn build(&self, g_max: &CommGraph) -> Result<CommGraph> {
        run_protocol(g_max)
    }
}

/// Name-keyed collection of strategies.
pub struct TopologyRegistry {
    entries: BTreeMap<&'static str, Box<dyn Topology>>,
}

impl fmt::Debug for TopologyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

impl Default for TopologyRegistry {
    fn default() -> Self {
        TopologyRegistry::with_builtins()
    }
}

impl TopologyRegistry {
    pub fn empty() -> Self {
        TopologyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut reg = TopologyRegistry::empty();
        reg.register(UnitDisc);
        reg.register(Gabriel);
        reg.register(MinimumSpanningTree);
        reg.register(LocalRadiusReduction);
        reg
    }

    /// Adds a strategy, replacing any previous one with the same name.
    pub fn register(&mut self, topology: impl Topology + 'static) {
        self.entries.insert(topology.name(), Box::new(topology));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Topology> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}
