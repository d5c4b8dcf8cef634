//! Command-line interface of the `maisac` binary.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use maisac_core::env::{read_trace, write_trace};
use maisac_core::ScenarioConfig;

use crate::baseline::{cmaes_episode, BaselineConfig};
use crate::checkpoint;
use crate::error::{HarnessError, Result};
use crate::output::{
    check_trajectory, emit_plot_data, trajectory_rows, write_clusters, write_runs, write_trajectory, PlotKind,
};
use crate::run::{default_workers, evaluate, run_scheme_with, Profile, RunConfig, RunRecord};
use crate::scheme::Scheme;
use crate::sweep::{summarize, sweep, SweepParam};

#[derive(Debug, Parser)]
#[command(
    name = "maisac",
    about = "Multi-UAV ISAC with movable antenna arrays: training, evaluation and sweeps",
    after_help = "Any scenario key can be overridden with --KEY=VALUE, e.g. --antenna_count=6."
)]
pub struct Cli {
    /// Scenario file (TOML); defaults are used when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct TrainArgs {
    #[arg(long, default_value = "proposed")]
    pub scheme: Scheme,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the profile's epoch count.
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Full-size networks and 1200 epochs instead of the desk profile.
    #[arg(long)]
    pub paper_scale: bool,
    /// Write re-clustering events of the evaluation episode to clusters.jsonl.
    #[arg(long)]
    pub dump_clusters: bool,
    /// Evaluation episodes after training.
    #[arg(long, default_value_t = 3)]
    pub eval_episodes: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train one scheme and evaluate the final policy.
    Train(TrainArgs),
    /// Evaluate a saved checkpoint.
    Evaluate {
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long, default_value = "proposed")]
        scheme: Scheme,
        /// First evaluation seed.
        #[arg(long, default_value_t = 1_000_000)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        episodes: usize,
        #[arg(long)]
        dump_clusters: bool,
    },
    /// Train every (value, scheme, seed) combination and aggregate.
    Sweep {
        #[arg(long)]
        param: SweepParam,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "proposed")]
        schemes: Vec<Scheme>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        seeds: Vec<u64>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        paper_scale: bool,
        /// Parallel runs; defaults to the number of cores.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Check a JSON-lines trace and convert it to trajectory and cluster files.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        dump_clusters: bool,
    },
    /// Print the scenario configuration as a commented TOML file.
    DumpConfig,
    /// Per-slot CMA-ES baseline on one episode.
    Cmaes {
        #[arg(long, default_value = "proposed")]
        scheme: Scheme,
        #[arg(long, default_value_t = 1_000_000)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        generations: usize,
    },
}

/// Splits `--key=value` scenario overrides from the remaining arguments.
pub fn split_overrides(args: Vec<String>) -> (Vec<String>, Vec<(String, String)>) {
    let keys = ScenarioConfig::keys();
    let mut rest = Vec::with_capacity(args.len());
    let mut overrides = Vec::new();
    for a in args {
        if let Some((k, v)) = a.strip_prefix("--").and_then(|s| s.split_once('=')) {
            let key = k.replace('-', "_");
            if keys.contains(&key) {
                overrides.push((key, v.to_string()));
                continue;
            }
        }
        rest.push(a);
    }
    (rest, overrides)
}

pub fn load_scenario(path: Option<&Path>, overrides: &[(String, String)]) -> Result<ScenarioConfig> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => String::new(),
    };
    if text.trim().is_empty() {
        Ok(ScenarioConfig::default().with_overrides(overrides)?)
    } else {
        Ok(ScenarioConfig::from_toml_with_overrides(&text, overrides)?)
    }
}

fn run_config(scenario: ScenarioConfig, paper_scale: bool, epochs: Option<usize>) -> RunConfig {
    let profile = if paper_scale { Profile::Paper } else { Profile::Desk };
    let mut rc = RunConfig::new(scenario, profile);
    if let Some(e) = epochs {
        rc.sac.epochs = e;
    }
    rc
}

fn write_trace_file(path: &Path, trace: &[maisac_core::env::SlotRecord]) -> Result<()> {
    let f = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_trace(f, trace)?;
    Ok(())
}

pub fn run(args: Vec<String>) -> Result<()> {
    let (args, overrides) = split_overrides(args);
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        // --help and --version
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(HarnessError::Invalid(e.to_string())),
    };
    if let Command::DumpConfig = cli.command {
        let scenario = load_scenario(cli.config.as_deref(), &overrides)?;
        print!("{}", scenario.to_documented_toml());
        return Ok(());
    }
    let scenario = load_scenario(cli.config.as_deref(), &overrides)?;
    let out = cli.out_dir.clone();
    std::fs::create_dir_all(&out)?;
    match cli.command {
        Command::Train(t) => {
            let mut rc = run_config(scenario.clone(), t.paper_scale, t.epochs);
            rc.eval_episodes = t.eval_episodes;
            let total = rc.sac.epochs;
            let (record, agent) = run_scheme_with(t.scheme, &rc, t.seed, |e| {
                eprintln!("epoch {}/{} cumulative reward {:.3} alpha {:.4}", e.epoch + 1, total, e.cumulative_reward, e.alpha);
            })?;
            let records = [record];
            write_runs(&out.join("runs.csv"), &records)?;
            emit_plot_data(&records, PlotKind::LearningCurve, &out)?;
            emit_plot_data(&records, PlotKind::Trajectory, &out)?;
            write_trace_file(&out.join("trace.jsonl"), &records[0].eval_trace)?;
            if t.dump_clusters {
                write_clusters(&out.join("clusters.jsonl"), &records[0].eval_trace)?;
            }
            checkpoint::save(&out.join("checkpoint.json"), &agent, t.scheme, &scenario)?;
            std::fs::write(out.join("scenario.toml"), scenario.to_documented_toml())?;
            print_record(&records[0]);
        }
        Command::Evaluate {
            checkpoint: path,
            scheme,
            seed,
            episodes,
            dump_clusters,
        } => {
            let mut agent = checkpoint::load(&path, scheme, &scenario)?;
            let seeds: Vec<u64> = (0..episodes.max(1) as u64).map(|i| seed + i).collect();
            let eval = evaluate(&mut agent, &scenario, scheme, &seeds)?;
            let trace = eval.traces.into_iter().next().unwrap_or_default();
            let record = RunRecord {
                scheme,
                seed,
                antenna_count: scenario.antenna_count,
                user_count: scenario.comm_user_count,
                sensing_threshold_db: scenario.sensing_threshold_db,
                mean_sum_rate_bps: eval.mean_sum_rate_bps,
                sensing_satisfaction: eval.sensing_satisfaction,
                mean_eval_reward: eval.mean_reward,
                curve: Vec::new(),
                eval_trace: trace,
            };
            write_runs(&out.join("evaluation.csv"), std::slice::from_ref(&record))?;
            write_trace_file(&out.join("trace.jsonl"), &record.eval_trace)?;
            emit_plot_data(std::slice::from_ref(&record), PlotKind::Trajectory, &out)?;
            if dump_clusters {
                write_clusters(&out.join("clusters.jsonl"), &record.eval_trace)?;
            }
            print_record(&record);
        }
        Command::Sweep {
            param,
            values,
            schemes,
            seeds,
            epochs,
            paper_scale,
            workers,
        } => {
            let rc = run_config(scenario, paper_scale, epochs);
            let records = sweep(param, &values, &schemes, &seeds, &rc, workers.unwrap_or_else(default_workers))?;
            write_runs(&out.join(format!("runs_{}.csv", param.name())), &records)?;
            emit_plot_data(&records, PlotKind::Sweep(param), &out)?;
            emit_plot_data(&records, PlotKind::LearningCurve, &out)?;
            for s in summarize(param, &records) {
                println!(
                    "{}={} {}: sum rate {:.4e} ± {:.2e} bit/s, satisfaction {:.3}",
                    s.parameter, s.value, s.scheme, s.mean_sum_rate_bps, s.std_sum_rate_bps, s.mean_satisfaction
                );
            }
        }
        Command::Replay { trace, dump_clusters } => {
            let file = std::io::BufReader::new(std::fs::File::open(&trace)?);
            let records = read_trace(file)?;
            if records.is_empty() {
                return Err(HarnessError::Invalid(format!("{} holds no slots", trace.display())));
            }
            let report = check_trajectory(&trajectory_rows(&records), &scenario)?;
            write_trajectory(&out.join("trajectory.csv"), &records)?;
            if dump_clusters {
                write_clusters(&out.join("clusters.jsonl"), &records)?;
            }
            let slots = records.len() as f64;
            let rate = records.iter().map(|r| r.reward.sum_rate_bps).sum::<f64>() / slots;
            let reward = records.iter().map(|r| r.reward.total).sum::<f64>() / slots;
            println!(
                "{} slots, mean sum rate {rate:.4e} bit/s, mean reward {reward:.4}, {} separation violations",
                records.len(),
                report.separation_violations.len()
            );
        }
        Command::Cmaes {
            scheme,
            seed,
            generations,
        } => {
            let b = BaselineConfig {
                generations,
                ..BaselineConfig::default()
            };
            let r = cmaes_episode(scheme, &scenario, seed, &b)?;
            write_trace_file(&out.join("cmaes_trace.jsonl"), &r.trace)?;
            println!(
                "cmaes {scheme}: sum rate {:.4e} bit/s, satisfaction {:.3}, mean reward {:.4}",
                r.mean_sum_rate_bps, r.sensing_satisfaction, r.mean_reward
            );
        }
        Command::DumpConfig => unreachable!("handled above"),
    }
    Ok(())
}

fn print_record(r: &RunRecord) {
    println!(
        "{} seed {}: sum rate {:.4e} bit/s, sensing satisfaction {:.3}, mean reward {:.4}",
        r.scheme, r.seed, r.mean_sum_rate_bps, r.sensing_satisfaction, r.mean_eval_reward
    );
}
