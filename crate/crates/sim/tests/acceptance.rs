//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.
//!
//! Run a subset with `cargo test --test acceptance -- 3 9`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use topocon_core::construct::{euclidean_mst, unit_disc_graph};
use topocon_core::mobility::{
    min_pairwise_distance, place_uniform, separation_probability_bound, DistributionSpec, Region,
};
use topocon_core::oracle::naive_max_interference;
use topocon_core::reduction::run_protocol;
use topocon_core::{CommGraph, PointSet};
use topocon_sim::analysis::{compare_topologies, fit_log, FitReport};
use topocon_sim::experiment::trial_seed;
use topocon_sim::models::FixedPlacement;
use topocon_sim::oracle_suite::run_oracle_suite;
use topocon_sim::record::to_csv_string;
use topocon_sim::{run_experiment, ExperimentConfig, Harness, TrialRecord};

const SEED: u64 = 1;

const MST_INSTANCES: usize = 1000;
const MST_N: usize = 100;

const LRR_N: usize = 50;
const LRR_CONNECTED: usize = 1000;
const LRR_DISCONNECTED: usize = 500;
/// Maximum radius for the connected batch; about 97% of instances connect.
const LRR_RMAX: f64 = 300.0;
const LRR_MIN_CONNECT_RATE: f64 = 0.9;
/// Small enough that almost no 50-node instance connects.
const LRR_SPARSE_RMAX: f64 = 100.0;

/// Fixed bound on max interference / (1 + log2(dmax / dmin)) over class-T graphs.
const RATIO_CAP: f64 = 4.0;

const SWEEP_RMAX: f64 = 300.0;
const SWEEP_TRIALS: usize = 100;
const MIN_LOG_R2: f64 = 0.9;
const GROWTH_FACTOR: f64 = 1.3;
const UDG_RATIO: (f64, f64) = (1.7, 2.3);
const LRR_NOT_WORSE_THAN_GABRIEL: f64 = 0.95;

const SEPARATION_TRIALS: u64 = 1000;
const SEPARATION_SLACK: f64 = 0.01;

const ORACLE_EQUIVALENCE: usize = 500;
const ORACLE_OPTIMUM: usize = 100;

const MOBILE_NS: [usize; 2] = [100, 300];
const MOBILE_TOLERANCE: f64 = 0.10;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

#[derive(Default)]
struct Suite {
    /// Ratio of max interference to 1 + log2(dmax/dmin), per class-T graph.
    ratios: Vec<f64>,
    class_t_done: [bool; 2],
    sweep: Option<Vec<TrialRecord>>,
}

fn ratio(g: &CommGraph) -> f64 {
    let (lo, hi) = g.edge_length_extremes().expect("graph has edges");
    g.max_interference() as f64 / (1.0 + (hi / lo).log2())
}

impl Suite {
    fn mst_closures(&mut self) -> Outcome {
        let region = Region::default();
        let mut failures = 0;
        for k in 0..MST_INSTANCES {
            let pts = place_uniform(MST_N, &region, trial_seed(SEED, MST_N, k)).unwrap();
            let g = euclidean_mst(&pts).unwrap().closure().unwrap();
            if !g.in_class_t() {
                failures += 1;
            }
            self.ratios.push(ratio(&g));
        }
        self.class_t_done[0] = true;
        outcome(
            failures == 0,
            format!("{} of {MST_INSTANCES} closures (n={MST_N}) outside class T", failures),
        )
    }

    fn protocol_invariants(&mut self) -> Outcome {
        let region = Region::default();
        let (mut generated, mut checked) = (0usize, 0usize);
        let (mut not_subset, mut disconnected, mut outside_t) = (0, 0, 0);
        while checked < LRR_CONNECTED {
            let pts = place_uniform(LRR_N, &region, trial_seed(SEED, LRR_N, generated)).unwrap();
            generated += 1;
            let g_max = unit_disc_graph(&pts, LRR_RMAX).unwrap();
            if !g_max.is_connected() {
                continue;
            }
            checked += 1;
            let g_min = run_protocol(&g_max).unwrap();
            not_subset += usize::from(!g_min.edges().all(|e| g_max.has_edge(e)));
            disconnected += usize::from(!g_min.is_connected());
            outside_t += usize::from(!g_min.in_class_t());
            self.ratios.push(ratio(&g_min));
        }
        let connect_rate = checked as f64 / generated as f64;

        let (mut sparse, mut partitions_differ) = (0usize, 0usize);
        let mut k = 0;
        while sparse < LRR_DISCONNECTED {
            let pts = place_uniform(LRR_N, &region, trial_seed(SEED ^ 0xd15c, LRR_N, k)).unwrap();
            k += 1;
            let g_max = unit_disc_graph(&pts, LRR_SPARSE_RMAX).unwrap();
            if g_max.is_connected() {
                continue;
            }
            sparse += 1;
            let g_min = run_protocol(&g_max).unwrap();
            partitions_differ += usize::from(g_min.connected_components() != g_max.connected_components());
        }
        self.class_t_done[1] = true;
        outcome(
            connect_rate >= LRR_MIN_CONNECT_RATE
                && not_subset + disconnected + outside_t + partitions_differ == 0,
            format!(
                "connect rate {connect_rate:.3} at rmax {LRR_RMAX}; over {checked} connected: \
                 {not_subset} not subgraph, {disconnected} disconnected, {outside_t} outside T; \
                 over {sparse} disconnected: {partitions_differ} partitions changed"
            ),
        )
    }

    fn chain_witness(&mut self) -> Outcome {
        let n = 16;
        let xs: Vec<f64> = (0..n).map(|i| 2f64.powi(i)).collect();
        let points = PointSet::on_line(&xs).unwrap();
        let mut harness = Harness::default();
        harness.placements.register(FixedPlacement::new("chain", points.clone()));
        let cfg = ExperimentConfig {
            n_start: n as usize,
            n_stop: n as usize,
            rmax: vec![2f64.powi(15)],
            trials: 1,
            model: "chain".into(),
            algorithms: vec!["mst".into()],
            ..Default::default()
        };
        let rec = harness.run(&cfg).unwrap().remove(0);
        let inter = rec.max_interference.unwrap();
        let log_ratio = (rec.dmax.unwrap() / rec.dmin.unwrap()).log2();
        let closure = euclidean_mst(&points).unwrap().closure().unwrap();
        let recount = naive_max_interference(&points, closure.radii().values().collect::<Vec<_>>().as_slice());
        outcome(
            inter == 14 && inter as usize == n as usize - 2 && recount == 14 && log_ratio == 14.0,
            format!(
                "max interference {inter} (recount {recount}), log2(dmax/dmin) {log_ratio}, ratio {}",
                inter as f64 / log_ratio
            ),
        )
    }

    fn bounded_ratio(&mut self) -> Outcome {
        if !self.class_t_done[0] {
            self.mst_closures();
        }
        if !self.class_t_done[1] {
            self.protocol_invariants();
        }
        let max = self.ratios.iter().copied().fold(0.0, f64::max);
        let mean = self.ratios.iter().sum::<f64>() / self.ratios.len() as f64;
        outcome(
            max <= RATIO_CAP,
            format!(
                "{} graphs, ratio max {max:.3}, mean {mean:.3}, cap {RATIO_CAP}",
                self.ratios.len()
            ),
        )
    }

    fn sweep(&mut self) -> &[TrialRecord] {
        self.sweep.get_or_insert_with(|| {
            let cfg = ExperimentConfig {
                rmax: vec![SWEEP_RMAX],
                trials: SWEEP_TRIALS,
                algorithms: vec!["udg".into(), "gabriel".into(), "lrr".into()],
                seed: SEED,
                ..Default::default()
            };
            run_experiment(&cfg).unwrap()
        })
    }

    fn logarithmic_growth(&mut self) -> Outcome {
        let fit = fit_log(self.sweep(), "lrr", SWEEP_RMAX).unwrap();
        let m = |n| interpolated_mean(&fit, n);
        let (m250, m500, m1000) = (m(250), m(500), m(1000));
        let upper = m1000 - m500;
        let lower = m500 - m250;
        outcome(
            fit.r2 >= MIN_LOG_R2 && upper <= GROWTH_FACTOR * lower,
            format!(
                "I = {:.3} ln n + {:.3}, R2 {:.4} (linear {:.4}); m1000-m500 {upper:.3} vs {GROWTH_FACTOR} x (m500-m250) {:.3}",
                fit.a,
                fit.b,
                fit.r2,
                fit.linear_r2,
                GROWTH_FACTOR * lower
            ),
        )
    }

    fn udg_linear_growth(&mut self) -> Outcome {
        let fit = fit_log(self.sweep(), "udg", SWEEP_RMAX).unwrap();
        let (m500, m1000) = (fit.mean_at(500).unwrap(), fit.mean_at(1000).unwrap());
        let r = m1000 / m500;
        outcome(
            (UDG_RATIO.0..=UDG_RATIO.1).contains(&r),
            format!("udg mean {m1000:.1} at n=1000 vs {m500:.1} at n=500, ratio {r:.3}"),
        )
    }

    fn ordering(&mut self) -> Outcome {
        let cmp = compare_topologies(self.sweep()).unwrap();
        let mut bad_rows = Vec::new();
        for row in &cmp.rows {
            let (l, g, u) = (
                cmp.mean(row, "lrr").unwrap(),
                cmp.mean(row, "gabriel").unwrap(),
                cmp.mean(row, "udg").unwrap(),
            );
            if !(l <= g && g <= u) {
                bad_rows.push(row.n);
            }
        }
        let lg = cmp.pair("lrr", "gabriel").unwrap();
        let lu = cmp.pair("lrr", "udg").unwrap();
        outcome(
            bad_rows.is_empty() && lg.not_worse_rate() >= LRR_NOT_WORSE_THAN_GABRIEL && lu.losses == 0,
            format!(
                "{} n values, mean order violated at {bad_rows:?}; lrr<=gabriel in {:.4} of {} pairs; lrr>udg in {} of {}",
                cmp.rows.len(),
                lg.not_worse_rate(),
                lg.total(),
                lu.losses,
                lu.total()
            ),
        )
    }

    fn separation(&mut self) -> Outcome {
        let unit = Region::cube(2, 1.0).unwrap();
        let c = DistributionSpec::uniform().separation_exponent(2).unwrap();
        let mut pass = c == 2.0;
        let mut parts = vec![format!("exponent {c}")];
        for n in [50usize, 100, 200] {
            let threshold = (n as f64).powf(-c);
            let hits = (0..SEPARATION_TRIALS)
                .filter(|&t| {
                    let pts = place_uniform(n, &unit, trial_seed(SEED, n, t as usize)).unwrap();
                    min_pairwise_distance(&pts).unwrap() > threshold
                })
                .count();
            let frac = hits as f64 / SEPARATION_TRIALS as f64;
            let need = separation_probability_bound(n) - SEPARATION_SLACK;
            pass &= frac >= need;
            parts.push(format!("n={n}: {frac:.3} >= {need:.3}"));
        }
        outcome(pass, parts.join(", "))
    }

    fn oracles(&mut self) -> Outcome {
        let r = run_oracle_suite(SEED, ORACLE_EQUIVALENCE, ORACLE_OPTIMUM).unwrap();
        outcome(
            r.passed() && r.instances == ORACLE_EQUIVALENCE && r.opt_instances == ORACLE_OPTIMUM,
            format!(
                "{} instances: interference {}/{} mismatched, bridged {}/{} mismatched; \
                 {} optimum checks: {} below optimum, {} equal",
                r.instances,
                r.interference_mismatches,
                r.interference_checks,
                r.bridged_mismatches,
                r.bridged_checks,
                r.opt_instances,
                r.opt_violations,
                r.opt_equalities
            ),
        )
    }

    fn mobility(&mut self) -> Outcome {
        let means = |model: &str| -> BTreeMap<usize, f64> {
            let cfg = ExperimentConfig {
                n_start: MOBILE_NS[0],
                n_stop: MOBILE_NS[1],
                n_step: MOBILE_NS[1] - MOBILE_NS[0],
                rmax: vec![SWEEP_RMAX],
                trials: SWEEP_TRIALS,
                model: model.into(),
                algorithms: vec!["lrr".into()],
                seed: SEED,
                ..Default::default()
            };
            let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
            for r in run_experiment(&cfg).unwrap() {
                if let (true, Some(m)) = (r.connected, r.max_interference) {
                    let e = acc.entry(r.n).or_default();
                    e.0 += m as f64;
                    e.1 += 1;
                }
            }
            acc.into_iter().map(|(n, (s, c))| (n, s / c as f64)).collect()
        };
        let (stat, walk, way) = (means("static"), means("walk"), means("waypoint"));
        let mut pass = true;
        let mut parts = Vec::new();
        for n in MOBILE_NS {
            let (s, w, p) = (stat[&n], walk[&n], way[&n]);
            let rel = (w - s).abs() / s;
            pass &= rel <= MOBILE_TOLERANCE && p >= w;
            parts.push(format!("n={n}: static {s:.2}, walk {w:.2} ({:.1}%), waypoint {p:.2}", 100.0 * rel));
        }
        outcome(pass, parts.join("; "))
    }

    fn determinism(&mut self) -> Outcome {
        let configs = [
            ExperimentConfig {
                n_start: 50,
                n_stop: 200,
                trials: 10,
                seed: SEED,
                ..Default::default()
            },
            ExperimentConfig {
                n_start: 50,
                n_stop: 150,
                trials: 5,
                model: "walk".into(),
                duration: 1000.0,
                seed: SEED,
                ..Default::default()
            },
            ExperimentConfig {
                n_start: 50,
                n_stop: 150,
                trials: 5,
                model: "waypoint".into(),
                duration: 1000.0,
                seed: SEED,
                ..Default::default()
            },
        ];
        let mut bytes = 0;
        let mut same = true;
        for cfg in &configs {
            let a = to_csv_string(&run_experiment(cfg).unwrap()).unwrap();
            let b = to_csv_string(&run_experiment(cfg).unwrap()).unwrap();
            same &= a == b;
            bytes += a.len();
        }
        outcome(same, format!("{} configs, {bytes} CSV bytes compared", configs.len()))
    }
}

/// Mean at `n`, linearly interpolated between neighbouring cells if `n` was
/// not itself swept.
fn interpolated_mean(fit: &FitReport, n: usize) -> f64 {
    if let Some(m) = fit.mean_at(n) {
        return m;
    }
    let cells: Vec<(f64, f64)> = fit
        .cells
        .iter()
        .filter_map(|c| c.mean_max.map(|m| (c.n as f64, m)))
        .collect();
    let x = n as f64;
    let i = cells.iter().position(|c| c.0 > x).expect("n inside the swept range");
    let ((x0, y0), (x1, y1)) = (cells[i - 1], cells[i]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

type Criterion = (u32, &'static str, fn(&mut Suite) -> Outcome);

const CRITERIA: [Criterion; 11] = [
    (1, "MST closure lies in class T", Suite::mst_closures),
    (2, "radius reduction keeps subgraph, connectivity, class T, components", Suite::protocol_invariants),
    (3, "exponential chain reaches the logarithmic bound exactly", Suite::chain_witness),
    (4, "interference over log length ratio stays bounded in class T", Suite::bounded_ratio),
    (5, "lrr interference grows logarithmically in n", Suite::logarithmic_growth),
    (6, "udg interference grows linearly in n", Suite::udg_linear_growth),
    (7, "lrr <= gabriel <= udg", Suite::ordering),
    (8, "uniform placement is well separated", Suite::separation),
    (9, "implementation agrees with brute-force oracles", Suite::oracles),
    (10, "mobile snapshots match static networks", Suite::mobility),
    (11, "reruns are byte-identical", Suite::determinism),
];

fn main() {
    let selected: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut suite = Suite::default();
    let mut failed = Vec::new();
    let total = Instant::now();
    for (id, name, check) in CRITERIA {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| check(&mut suite))).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {id:>2} {name}: {} ({:.1}s)",
            result.detail,
            start.elapsed().as_secs_f64()
        );
        if !result.pass {
            failed.push(id);
        }
    }
    println!("acceptance finished in {:.1}s", total.elapsed().as_secs_f64());
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
