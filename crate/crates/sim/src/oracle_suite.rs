//! Randomized comparison of the graph code against the brute-force oracles.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topocon_core::construct::{euclidean_mst, unit_disc_graph};
use topocon_core::oracle::{brute_force_opt, exhaustive_bridged, exhaustive_mst_weight, naive_interference};
use topocon_core::reduction::run_protocol;
use topocon_core::{CommGraph, NodeId, PointSet, RadiusMap};

use crate::error::Result;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub instances: usize,
    pub interference_checks: usize,
    pub interference_mismatches: usize,
    pub bridged_checks: usize,
    pub bridged_mismatches: usize,
    pub mst_checks: usize,
    pub mst_mismatches: usize,
    pub opt_instances: usize,
    /// Instances where the protocol output beat the exhaustive optimum.
    pub opt_violations: usize,
    /// Instances where the protocol output matched the optimum exactly.
    pub opt_equalities: usize,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.interference_mismatches == 0
            && self.bridged_mismatches == 0
            && self.mst_mismatches == 0
            && self.opt_violations == 0
            && (self.opt_instances == 0 || self.opt_equalities > 0)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances             {}", self.instances)?;
        writeln!(
            f,
            "interference          {} checked, {} mismatched",
            self.interference_checks, self.interference_mismatches
        )?;
        writeln!(
            f,
            "bridged               {} checked, {} mismatched",
            self.bridged_checks, self.bridged_mismatches
        )?;
        writeln!(f, "mst weight            {} checked, {} mismatched", self.mst_checks, self.mst_mismatches)?;
        write!(
            f,
            "lrr vs optimum        {} checked, {} below optimum, {} equal",
            self.opt_instances, self.opt_violations, self.opt_equalities
        )
    }
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
    let xy: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)))
        .collect();
    PointSet::planar(&xy).expect("finite planar points")
}

/// `equivalence` instances with up to 8 nodes and arbitrary radii, then
/// `optimum` connected instances with up to 5 nodes run through the protocol.
pub fn run_oracle_suite(seed: u64, equivalence: usize, optimum: usize) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    for _ in 0..equivalence {
        let n = rng.gen_range(2..=8);
        let points = random_points(&mut rng, n);
        let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..8.0)).collect();
        let g = CommGraph::new(points.clone(), RadiusMap::from_values(radii.clone()))?;
        report.instances += 1;
        for p in 0..n {
            report.interference_checks += 1;
            if g.interference_at(NodeId(p))? != naive_interference(&points, &radii, p) {
                report.interference_mismatches += 1;
            }
        }
        for e in g.edges() {
            report.bridged_checks += 1;
            if g.is_bridged(e)? != exhaustive_bridged(&points, &radii, e.lo().0, e.hi().0) {
                report.bridged_mismatches += 1;
            }
        }
        if n <= 6 {
            report.mst_checks += 1;
            let ours = euclidean_mst(&points)?.total_length();
            if (ours - exhaustive_mst_weight(&points)?).abs() > 1e-9 * ours.max(1.0) {
                report.mst_mismatches += 1;
            }
        }
    }
    while report.opt_instances < optimum {
        let n = rng.gen_range(2..=5);
        let points = random_points(&mut rng, n);
        let g_max = unit_disc_graph(&points, rng.gen_range(4.0..15.0))?;
        if !g_max.is_connected() {
            continue;
        }
        let ours = run_protocol(&g_max)?.max_interference();
        let best = brute_force_opt(&points)?;
        report.opt_instances += 1;
        if ours < best {
            report.opt_violations += 1;
        } else if ours == best {
            report.opt_equalities += 1;
        }
    }
    Ok(report)
}
