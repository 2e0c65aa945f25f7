//! Sweep execution: placement, `G_max`, topology, metrics.

use std::fs::File;
use std::io::BufReader;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use topocon_core::construct::unit_disc_graph;
use topocon_core::topology::{Topology, TopologyRegistry};
use topocon_core::trace::{load_trace, Trace};
use topocon_core::{CommGraph, NodeId, PointSet};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::models::PlacementRegistry;
use crate::record::TrialRecord;

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial` in the cell with `n` nodes.
///
/// Every radius and algorithm in a cell sees the same instance, so
/// comparisons across them are paired.
pub fn trial_seed(base: u64, n: usize, trial: usize) -> u64 {
    base ^ mix(mix(n as u64) ^ trial as u64)
}

/// Registries of topology strategies and placement models.
#[derive(Debug, Default)]
pub struct Harness {
    pub topologies: TopologyRegistry,
    pub placements: PlacementRegistry,
}

struct Cell<'a> {
    n: usize,
    model: &'a str,
    trial: usize,
}

impl Harness {
    fn algorithms(&self, cfg: &ExperimentConfig) -> Result<Vec<&dyn Topology>> {
        cfg.algorithms
            .iter()
            .map(|name| {
                self.topologies
                    .get(name)
                    .ok_or_else(|| HarnessError::config(format!("unknown algorithm {name}")))
            })
            .collect()
    }

    /// Every requested algorithm on one instance, for every radius.
    fn evaluate(
        &self,
        cfg: &ExperimentConfig,
        algos: &[&dyn Topology],
        cell: Cell<'_>,
        points: &PointSet,
    ) -> Result<Vec<TrialRecord>> {
        let mut out = Vec::with_capacity(cfg.rmax.len() * algos.len());
        for &rmax in &cfg.rmax {
            let g_max = unit_disc_graph(points, rmax)?;
            let connected = g_max.is_connected();
            for algo in algos {
                let mut rec = TrialRecord {
                    n: cell.n,
                    rmax,
                    model: cell.model.to_string(),
                    algo: algo.name().to_string(),
                    trial: cell.trial,
                    connected,
                    max_interference: None,
                    mean_interference: None,
                    dmin: None,
                    dmax: None,
                    wall_ms: None,
                };
                if connected || !algo.requires_connected() {
                    let start = Instant::now();
                    let g = algo.build(&g_max)?;
                    let elapsed = start.elapsed();
                    fill_metrics(&mut rec, &g);
                    if cfg.timing {
                        rec.wall_ms = Some(elapsed.as_secs_f64() * 1e3);
                    }
                }
                out.push(rec);
            }
        }
        Ok(out)
    }

    /// Runs a sweep. `model = "trace"` delegates to [`run_trace_eval`].
    pub fn run(&self, cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
        cfg.validate()?;
        if cfg.model == "trace" {
            return self.run_trace(cfg, &read_trace_file(cfg)?);
        }
        let placement = self
            .placements
            .get(&cfg.model)
            .ok_or_else(|| HarnessError::config(format!("unknown model {}", cfg.model)))?;
        let algos = self.algorithms(cfg)?;
        let jobs: Vec<(usize, usize)> = cfg
            .n_values()
            .into_iter()
            .flat_map(|n| (0..cfg.trials).map(move |t| (n, t)))
            .collect();
        let batches = jobs
            .into_par_iter()
            .map(|(n, trial)| {
                let points = placement.place(n, cfg, trial_seed(cfg.seed, n, trial))?;
                let cell = Cell {
                    n,
                    model: &cfg.model,
                    trial,
                };
                self.evaluate(cfg, &algos, cell, &points)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(canonical_order(cfg, batches.into_iter().flatten().collect()))
    }

    /// Evaluates subsampled trace snapshots.
    ///
    /// For each `n`, every snapshot with at least `n` reporting nodes yields
    /// one instance; the record's `trial` is the snapshot index. The `trials`
    /// setting is not used.
    pub fn run_trace(&self, cfg: &ExperimentConfig, trace: &Trace) -> Result<Vec<TrialRecord>> {
        cfg.validate()?;
        let algos = self.algorithms(cfg)?;
        let population = trace.population();
        let mut jobs = Vec::new();
        for n in cfg.n_values() {
            if n > population {
                return Err(HarnessError::config(format!(
                    "trace has {population} nodes, {n} requested"
                )));
            }
            for (s, snap) in trace.snapshots.iter().enumerate() {
                if snap.len() >= n {
                    jobs.push((n, s));
                }
            }
        }
        let batches = jobs
            .into_par_iter()
            .map(|(n, s)| {
                let snap = &trace.snapshots[s];
                let present: Vec<NodeId> = snap.positions.keys().copied().collect();
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, n, s));
                let mut chosen: Vec<NodeId> = present.choose_multiple(&mut rng, n).copied().collect();
                chosen.sort();
                let points = snap.points_of(&chosen).expect("chosen ids are present");
                let cell = Cell {
                    n,
                    model: "trace",
                    trial: s,
                };
                self.evaluate(cfg, &algos, cell, &points)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(canonical_order(cfg, batches.into_iter().flatten().collect()))
    }
}

fn fill_metrics(rec: &mut TrialRecord, g: &CommGraph) {
    rec.max_interference = Some(g.max_interference() as u32);
    rec.mean_interference = Some(g.mean_interference());
    if let Ok((lo, hi)) = g.edge_length_extremes() {
        rec.dmin = Some(lo);
        rec.dmax = Some(hi);
    }
}

/// Sorts by (n, rmax, trial, algorithm) in config order.
fn canonical_order(cfg: &ExperimentConfig, mut records: Vec<TrialRecord>) -> Vec<TrialRecord> {
    let rmax_idx = |r: f64| cfg.rmax.iter().position(|&x| x == r).unwrap_or(usize::MAX);
    let algo_idx = |a: &str| cfg.algorithms.iter().position(|x| x == a).unwrap_or(usize::MAX);
    records.sort_by_key(|r| (r.n, rmax_idx(r.rmax), r.trial, algo_idx(&r.algo)));
    records
}

fn read_trace_file(cfg: &ExperimentConfig) -> Result<Trace> {
    let path = cfg
        .trace_file
        .as_ref()
        .ok_or_else(|| HarnessError::config("no trace file given"))?;
    Ok(load_trace(BufReader::new(File::open(path)?))?)
}

/// Runs a sweep with the built-in registries.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    Harness::default().run(cfg)
}

/// Loads `cfg.trace_file` and evaluates its snapshots.
pub fn run_trace_eval(cfg: &ExperimentConfig) -> Result<Vec<TrialRecord>> {
    let trace = read_trace_file(cfg)?;
    Harness::default().run_trace(cfg, &trace)
}
