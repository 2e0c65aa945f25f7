use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use topocon_sim::analysis::{compare_topologies, fit_log};
use topocon_sim::oracle_suite::run_oracle_suite;
use topocon_sim::record::{read_csv, write_csv};
use topocon_sim::{run_experiment, run_trace_eval, ConfigArgs, TrialRecord};

#[derive(Parser)]
#[command(name = "topocon", version, about = "Interference experiments for wireless topology control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a parameter sweep and write CSV
    Run(ConfigArgs),
    /// Evaluate snapshots of a mobility trace and write CSV
    Trace(ConfigArgs),
    /// Fit mean max interference against ln n
    Fit {
        input: PathBuf,
        #[arg(long, default_value = "lrr")]
        algo: String,
        /// Radius to fit; every radius in the file when absent
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Paired comparison of the algorithms in a CSV
    Compare { input: PathBuf },
    /// Check the implementation against brute-force oracles
    Oracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        #[arg(long, default_value_t = 100)]
        optimum: usize,
    },
}

fn emit(records: &[TrialRecord], out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(BufWriter::new(file), records)?;
        }
        None => write_csv(io::stdout().lock(), records)?,
    }
    Ok(())
}

fn load(path: &PathBuf) -> anyhow::Result<Vec<TrialRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(read_csv(file)?)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Run(args) => {
            let args = args.with_file()?;
            let records = run_experiment(&args.resolve()?)?;
            emit(&records, args.out.as_ref())?;
        }
        Command::Trace(args) => {
            let mut args = args.with_file()?;
            args.model = Some("trace".into());
            if args.algo.is_none() {
                args.algo = Some(vec!["lrr".into(), "udg".into()]);
            }
            let records = run_trace_eval(&args.resolve()?)?;
            emit(&records, args.out.as_ref())?;
        }
        Command::Fit { input, algo, rmax } => {
            let records = load(&input)?;
            let mut radii: Vec<f64> = match rmax {
                Some(r) => vec![r],
                None => records.iter().filter(|r| r.algo == algo).map(|r| r.rmax).collect(),
            };
            radii.sort_by(f64::total_cmp);
            radii.dedup();
            if radii.is_empty() {
                bail!("no {algo} records in {}", input.display());
            }
            let mut out = io::stdout().lock();
            for r in radii {
                let fit = fit_log(&records, &algo, r)?;
                writeln!(
                    out,
                    "{algo} rmax={r}: I = {:.4} ln n + {:.4}  R2={:.4}  (linear R2={:.4})",
                    fit.a, fit.b, fit.r2, fit.linear_r2
                )?;
                writeln!(out, "  n\ttrials\tconnected\tmean_max\tused")?;
                for c in &fit.cells {
                    let mean = c.mean_max.map_or("-".to_string(), |m| format!("{m:.3}"));
                    writeln!(out, "  {}\t{}\t{}\t{}\t{}", c.n, c.trials, c.connected, mean, c.included)?;
                }
            }
        }
        Command::Compare { input } => {
            let cmp = compare_topologies(&load(&input)?)?;
            let mut out = io::stdout().lock();
            writeln!(out, "rmax\tn\tpaired\t{}", cmp.algorithms.join("\t"))?;
            for row in &cmp.rows {
                let means: Vec<String> = row.means.iter().map(|m| format!("{m:.3}")).collect();
                writeln!(out, "{}\t{}\t{}\t{}", row.rmax, row.n, row.paired, means.join("\t"))?;
            }
            writeln!(out)?;
            for p in &cmp.pairs {
                writeln!(
                    out,
                    "{} vs {}: {} lower, {} tied, {} higher",
                    p.first, p.second, p.wins, p.ties, p.losses
                )?;
            }
        }
        Command::Oracle {
            seed,
            instances,
            optimum,
        } => {
            let report = run_oracle_suite(seed, instances, optimum)?;
            println!("{report}");
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
