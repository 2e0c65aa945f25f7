//! One CSV row per evaluated (instance, algorithm) pair.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: &str =
    "n,rmax,model,algo,trial,connected,max_interference,mean_interference,dmin,dmax,wall_ms";

/// Metrics are `None` when the algorithm was skipped because `G_max` was
/// disconnected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub rmax: f64,
    pub model: String,
    pub algo: String,
    pub trial: usize,
    /// Connectivity of `G_max`, not of the evaluated topology.
    pub connected: bool,
    pub max_interference: Option<u32>,
    pub mean_interference: Option<f64>,
    /// Shortest and longest edge of the evaluated topology.
    pub dmin: Option<f64>,
    pub dmax: Option<f64>,
    pub wall_ms: Option<f64>,
}

impl TrialRecord {
    pub fn evaluated(&self) -> bool {
        self.max_interference.is_some()
    }
}

pub fn write_csv<W: Write>(out: W, records: &[TrialRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn to_csv_string(records: &[TrialRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, records)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
