//! Experiment engine for topology-control interference studies.
//!
//! Sweeps over node count, maximum radius, placement model and topology
//! algorithm, writes one CSV row per (instance, algorithm), and analyses the
//! rows afterwards (logarithmic fit, paired comparison).

pub mod analysis;
pub mod config;
pub mod error;
pub mod experiment;
pub mod models;
pub mod oracle_suite;
pub mod record;

pub use config::{ConfigArgs, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, run_trace_eval, Harness};
pub use record::TrialRecord;
