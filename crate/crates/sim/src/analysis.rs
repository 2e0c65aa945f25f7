//! Post-processing of trial records: logarithmic growth fit and paired
//! comparison of algorithms.

use std::collections::BTreeMap;

use crate::error::{HarnessError, Result};
use crate::record::TrialRecord;

/// Cells where fewer than this fraction of `G_max` instances connect are
/// left out of the fit.
pub const MIN_CONNECTED_FRACTION: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub n: usize,
    pub trials: usize,
    pub connected: usize,
    /// Mean max interference over connected, evaluated trials.
    pub mean_max: Option<f64>,
    pub included: bool,
}

impl CellSummary {
    pub fn connected_fraction(&self) -> f64 {
        self.connected as f64 / self.trials as f64
    }
}

/// Least-squares fit `I = a ln n + b` of per-n mean max interference.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub algorithm: String,
    pub rmax: f64,
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    /// R² of a straight-line fit `I = a n + b` on the same cells.
    pub linear_r2: f64,
    pub cells: Vec<CellSummary>,
}

impl FitReport {
    pub fn mean_at(&self, n: usize) -> Option<f64> {
        self.cells.iter().find(|c| c.n == n).and_then(|c| c.mean_max)
    }

    pub fn predict(&self, n: usize) -> f64 {
        self.a * (n as f64).ln() + self.b
    }
}

/// Returns `(slope, intercept, r2)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let r2 = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else if ss_res <= f64::EPSILON {
        1.0
    } else {
        0.0
    };
    (slope, intercept, r2)
}

/// Fits `(n, mean)` pairs; returns `(a, b, r2)` of the log fit and the R²
/// of the linear fit.
pub fn fit_means(points: &[(f64, f64)]) -> (f64, f64, f64, f64) {
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let logs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let lins: Vec<f64> = points.iter().map(|p| p.0).collect();
    let (a, b, r2) = least_squares(&logs, &ys);
    let (_, _, linear_r2) = least_squares(&lins, &ys);
    (a, b, r2, linear_r2)
}

pub fn fit_log(records: &[TrialRecord], algorithm: &str, rmax: f64) -> Result<FitReport> {
    let mut by_n: BTreeMap<usize, (usize, usize, Vec<f64>)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.algo == algorithm && r.rmax == rmax) {
        let cell = by_n.entry(r.n).or_default();
        cell.0 += 1;
        if r.connected {
            cell.1 += 1;
            if let Some(m) = r.max_interference {
                cell.2.push(m as f64);
            }
        }
    }
    let cells: Vec<CellSummary> = by_n
        .into_iter()
        .map(|(n, (trials, connected, values))| {
            let mean_max = (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64);
            let included = mean_max.is_some() && connected as f64 >= MIN_CONNECTED_FRACTION * trials as f64;
            CellSummary {
                n,
                trials,
                connected,
                mean_max,
                included,
            }
        })
        .collect();
    let used: Vec<(f64, f64)> = cells
        .iter()
        .filter(|c| c.included)
        .filter_map(|c| c.mean_max.map(|m| (c.n as f64, m)))
        .collect();
    if used.len() < 3 {
        return Err(HarnessError::analysis(format!(
            "{algorithm} at rmax {rmax}: {} usable n values, need 3",
            used.len()
        )));
    }
    let (a, b, r2, linear_r2) = fit_means(&used);
    Ok(FitReport {
        algorithm: algorithm.to_string(),
        rmax,
        a,
        b,
        r2,
        linear_r2,
        cells,
    })
}

/// Head-to-head counts over paired trials: `wins` means `first` had strictly
/// lower max interference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStats {
    pub first: String,
    pub second: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl PairStats {
    pub fn total(&self) -> usize {
        self.wins + self.ties + self.losses
    }

    /// Fraction of trials where `first` did no worse than `second`.
    pub fn not_worse_rate(&self) -> f64 {
        (self.wins + self.ties) as f64 / self.total() as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub rmax: f64,
    pub n: usize,
    pub paired: usize,
    /// Mean max interference per algorithm, in [`Comparison::algorithms`] order.
    pub means: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub algorithms: Vec<String>,
    pub rows: Vec<CompareRow>,
    pub pairs: Vec<PairStats>,
}

impl Comparison {
    fn index(&self, algo: &str) -> Option<usize> {
        self.algorithms.iter().position(|a| a == algo)
    }

    pub fn pair(&self, first: &str, second: &str) -> Option<PairStats> {
        let (i, j) = (self.index(first)?, self.index(second)?);
        let p = self.pairs.iter().find(|p| p.first == self.algorithms[i.min(j)] && p.second == self.algorithms[i.max(j)])?;
        Some(if i < j {
            p.clone()
        } else {
            PairStats {
                first: p.second.clone(),
                second: p.first.clone(),
                wins: p.losses,
                ties: p.ties,
                losses: p.wins,
            }
        })
    }

    pub fn mean(&self, row: &CompareRow, algo: &str) -> Option<f64> {
        self.index(algo).map(|i| row.means[i])
    }
}

type TrialKey = (String, u64, usize, usize);

/// Paired comparison of max interference across algorithms on identical
/// instances. Instances where any algorithm was skipped are left out.
pub fn compare_topologies(records: &[TrialRecord]) -> Result<Comparison> {
    let mut algorithms: Vec<String> = Vec::new();
    for r in records {
        if !algorithms.contains(&r.algo) {
            algorithms.push(r.algo.clone());
        }
    }
    if algorithms.len() < 2 {
        return Err(HarnessError::analysis(format!(
            "need at least two algorithms, found {}",
            algorithms.len()
        )));
    }
    let mut trials: BTreeMap<TrialKey, Vec<Option<u32>>> = BTreeMap::new();
    for r in records {
        let i = algorithms.iter().position(|a| *a == r.algo).expect("collected above");
        let slot = trials
            .entry((r.model.clone(), r.rmax.to_bits(), r.n, r.trial))
            .or_insert_with(|| vec![None; algorithms.len()]);
        if slot[i].is_some() {
            return Err(HarnessError::analysis(format!(
                "duplicate {} record for n={} rmax={} trial={}",
                r.algo, r.n, r.rmax, r.trial
            )));
        }
        slot[i] = Some(r.max_interference.unwrap_or(u32::MAX));
    }
    let k = algorithms.len();
    let mut pairs: Vec<PairStats> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            pairs.push(PairStats {
                first: algorithms[i].clone(),
                second: algorithms[j].clone(),
                wins: 0,
                ties: 0,
                losses: 0,
            });
        }
    }
    let mut sums: BTreeMap<(u64, usize), (usize, Vec<f64>)> = BTreeMap::new();
    for ((_, rmax, n, trial), slot) in &trials {
        let Some(values) = slot.iter().copied().collect::<Option<Vec<u32>>>() else {
            return Err(HarnessError::analysis(format!(
                "unpaired records at n={n} rmax={} trial={trial}",
                f64::from_bits(*rmax)
            )));
        };
        // u32::MAX marks an algorithm that was not evaluated.
        if values.contains(&u32::MAX) {
            continue;
        }
        let cell = sums.entry((*rmax, *n)).or_insert_with(|| (0, vec![0.0; k]));
        cell.0 += 1;
        for (s, v) in cell.1.iter_mut().zip(&values) {
            *s += *v as f64;
        }
        let mut p = 0;
        for i in 0..k {
            for j in i + 1..k {
                let stats = &mut pairs[p];
                match values[i].cmp(&values[j]) {
                    std::cmp::Ordering::Less => stats.wins += 1,
                    std::cmp::Ordering::Equal => stats.ties += 1,
                    std::cmp::Ordering::Greater => stats.losses += 1,
                }
                p += 1;
            }
        }
    }
    let mut rows: Vec<CompareRow> = sums
        .into_iter()
        .map(|((rmax, n), (paired, totals))| CompareRow {
            rmax: f64::from_bits(rmax),
            n,
            paired,
            means: totals.into_iter().map(|t| t / paired as f64).collect(),
        })
        .collect();
    rows.sort_by(|a, b| a.rmax.total_cmp(&b.rmax).then(a.n.cmp(&b.n)));
    Ok(Comparison {
        algorithms,
        rows,
        pairs,
    })
}
