//! GPS trace ingestion.
//!
//! One record per line, `node_id,t_seconds,x_m,y_m`, coordinates already
//! projected to planar metres. A header line is allowed (recognised by a
//! non-numeric first field). LF and CRLF line endings are both accepted.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::BufRead;

use thiserror::Error;

use crate::geometry::{NodeId, PointSet};

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: node {node} goes back in time ({t} after {previous})")]
    NonMonotone {
        line: usize,
        node: u64,
        t: f64,
        previous: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Positions of all nodes reporting at one timestamp.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceSnapshot {
    pub timestamp: f64,
    pub positions: BTreeMap<NodeId, [f64; 2]>,
}

impl TraceSnapshot {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// The chosen nodes as a point set, in the order given.
    pub fn points_of(&self, ids: &[NodeId]) -> Option<PointSet> {
        let coords = ids
            .iter()
            .map(|id| self.positions.get(id).copied())
            .collect::<Option<Vec<_>>>()?;
        PointSet::from_flat(2, coords.into_iter().flatten().collect()).ok()
    }
}

/// Snapshots in time order, with dense node ids.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    pub snapshots: Vec<TraceSnapshot>,
    /// Original id of each dense id.
    pub original_ids: Vec<u64>,
}

impl Trace {
    pub fn population(&self) -> usize {
        self.original_ids.len()
    }
}

struct Record {
    node: u64,
    t: f64,
    xy: [f64; 2],
}

pub fn load_trace(reader: impl BufRead) -> Result<Trace, TraceError> {
    let mut records = Vec::new();
    let mut last_seen: HashMap<u64, f64> = HashMap::new();
    let mut first_content = true;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if first_content {
            first_content = false;
            if fields[0].parse::<f64>().is_err() {
                continue;
            }
        }
        let rec = parse_record(&fields).map_err(|reason| TraceError::Malformed {
            line: line_no,
            reason,
        })?;
        if let Some(&previous) = last_seen.get(&rec.node) {
            if rec.t < previous {
                return Err(TraceError::NonMonotone {
                    line: line_no,
                    node: rec.node,
                    t: rec.t,
                    previous,
                });
            }
        }
        last_seen.insert(rec.node, rec.t);
        records.push(rec);
    }

    let original_ids: Vec<u64> = records
        .iter()
        .map(|r| r.node)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dense: HashMap<u64, NodeId> = original_ids
        .iter()
        .enumerate()
        .map(|(i, &id)| (id, NodeId(i)))
        .collect();

    // Stable sort keeps file order within a timestamp, so later records win.
    records.sort_by(|a, b| a.t.total_cmp(&b.t));
    let mut snapshots: Vec<TraceSnapshot> = Vec::new();
    for rec in records {
        if snapshots.last().is_none_or(|s| s.timestamp != rec.t) {
            snapshots.push(TraceSnapshot {
                timestamp: rec.t,
                positions: BTreeMap::new(),
            });
        }
        let snap = snapshots.last_mut().expect("just pushed");
        snap.positions.insert(dense[&rec.node], rec.xy);
    }
    Ok(Trace {
        snapshots,
        original_ids,
    })
}

fn parse_record(fields: &[&str]) -> Result<Record, String> {
    let [node, t, x, y] = fields else {
        return Err(format!("expected 4 fields, found {}", fields.len()));
    };
    let node = node
        .parse::<u64>()
        .map_err(|e| format!("node id {node:?}: {e}"))?;
    let num = |name: &str, s: &str| -> Result<f64, String> {
        let v = s.parse::<f64>().map_err(|e| format!("{name} {s:?}: {e}"))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(format!("{name} {s:?} is not finite"))
        }
    };
    Ok(Record {
        node,
        t: num("timestamp", t)?,
        xy: [num("x", x)?, num("y", y)?],
    })
}
