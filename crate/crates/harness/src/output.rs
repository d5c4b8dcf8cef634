//! CSV and JSON-lines artifacts.
//!
//! | file | columns |
//! |---|---|
//! | `learning_curve.csv` | epoch, scheme, seed, cumulative_reward, critic_loss, policy_loss, alpha, entropy |
//! | `runs.csv` | scheme, seed, antenna_count, user_count, sensing_threshold_db, mean_sum_rate_bps, sensing_satisfaction, mean_eval_reward, final_cumulative_reward |
//! | `sweep_<param>.csv` | parameter, value, scheme, runs, mean/std of sum rate and satisfaction |
//! | `trajectory_<scheme>_<seed>.csv` | t, uav_id, x, y, z |
//! | `clusters.jsonl` | one re-clustering event per line |

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use maisac_core::env::SlotRecord;
use maisac_core::ScenarioConfig;
use serde::Serialize;

use crate::error::{HarnessError, Result};
use crate::run::RunRecord;
use crate::scheme::Scheme;
use crate::sweep::{summarize, SweepParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    LearningCurve,
    Sweep(SweepParam),
    Trajectory,
}

#[derive(Debug, Serialize)]
struct CurveRow {
    epoch: usize,
    scheme: Scheme,
    seed: u64,
    cumulative_reward: f64,
    critic_loss: Option<f64>,
    policy_loss: Option<f64>,
    alpha: f64,
    entropy: Option<f64>,
}

#[derive(Debug, Serialize)]
struct RunRow {
    scheme: Scheme,
    seed: u64,
    antenna_count: usize,
    user_count: usize,
    sensing_threshold_db: f64,
    mean_sum_rate_bps: f64,
    sensing_satisfaction: f64,
    mean_eval_reward: f64,
    final_cumulative_reward: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub t: usize,
    pub uav_id: usize,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

fn write_rows<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_learning_curves(path: &Path, records: &[RunRecord]) -> Result<()> {
    write_rows(
        path,
        records.iter().flat_map(|r| {
            r.curve.iter().map(move |e| CurveRow {
                epoch: e.epoch,
                scheme: r.scheme,
                seed: r.seed,
                cumulative_reward: e.cumulative_reward,
                critic_loss: e.critic_loss,
                policy_loss: e.policy_loss,
                alpha: e.alpha,
                entropy: e.entropy,
            })
        }),
    )
}

pub fn write_runs(path: &Path, records: &[RunRecord]) -> Result<()> {
    write_rows(
        path,
        records.iter().map(|r| RunRow {
            scheme: r.scheme,
            seed: r.seed,
            antenna_count: r.antenna_count,
            user_count: r.user_count,
            sensing_threshold_db: r.sensing_threshold_db,
            mean_sum_rate_bps: r.mean_sum_rate_bps,
            sensing_satisfaction: r.sensing_satisfaction,
            mean_eval_reward: r.mean_eval_reward,
            final_cumulative_reward: r.curve.last().map(|e| e.cumulative_reward),
        }),
    )
}

pub fn trajectory_rows(trace: &[SlotRecord]) -> Vec<TrajectoryRow> {
    trace
        .iter()
        .flat_map(|r| {
            r.uav_positions.iter().enumerate().map(move |(uav_id, p)| TrajectoryRow {
                t: r.t,
                uav_id,
                x: p[0],
                y: p[1],
                z: p[2],
            })
        })
        .collect()
}

pub fn write_trajectory(path: &Path, trace: &[SlotRecord]) -> Result<()> {
    write_rows(path, trajectory_rows(trace))
}

pub fn read_trajectory(path: &Path) -> Result<Vec<TrajectoryRow>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec.get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| HarnessError::Invalid(format!("bad trajectory field {i} in {rec:?}")))
        };
        rows.push(TrajectoryRow {
            t: num(0)? as usize,
            uav_id: num(1)? as usize,
            x: num(2)?,
            y: num(3)?,
            z: num(4)?,
        });
    }
    Ok(rows)
}

/// Separation violations found while checking a trajectory.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryReport {
    pub slots: usize,
    /// `(t, m, n)` for UAV pairs closer than the collision distance.
    pub separation_violations: Vec<(usize, usize, usize)>,
}

/// Checks the kinematic constraints on a trajectory: every position inside
/// the UAV box and every per-slot displacement at most `V`. Separation is
/// a penalised soft constraint, so violations are reported, not rejected.
pub fn check_trajectory(rows: &[TrajectoryRow], config: &ScenarioConfig) -> Result<TrajectoryReport> {
    let (lo, hi) = (config.uav_lower_bound(), config.uav_upper_bound());
    let tol = 1e-9;
    let mut by_slot: std::collections::BTreeMap<usize, Vec<(usize, [f64; 3])>> = Default::default();
    for r in rows {
        let p = [r.x, r.y, r.z];
        for i in 0..3 {
            if !(p[i] >= lo[i] - tol && p[i] <= hi[i] + tol) {
                return Err(HarnessError::Invalid(format!("UAV {} out of bounds at t={}: {p:?}", r.uav_id, r.t)));
            }
        }
        by_slot.entry(r.t).or_default().push((r.uav_id, p));
    }
    let mut report = TrajectoryReport {
        slots: by_slot.len(),
        ..Default::default()
    };
    let mut prev: Option<(usize, Vec<(usize, [f64; 3])>)> = None;
    for (t, mut uavs) in by_slot {
        uavs.sort_by_key(|u| u.0);
        if let Some((pt, pu)) = &prev {
            if t == pt + 1 {
                for ((a, p), (b, q)) in pu.iter().zip(&uavs) {
                    let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
                    if a != b || d > config.uav_max_speed_mps + tol {
                        return Err(HarnessError::Invalid(format!("UAV {b} moved {d} m in slot {t}")));
                    }
                }
            }
        }
        for i in 0..uavs.len() {
            for j in i + 1..uavs.len() {
                let (p, q) = (uavs[i].1, uavs[j].1);
                let d = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt();
                if d < config.collision_distance_m {
                    report.separation_violations.push((t, uavs[i].0, uavs[j].0));
                }
            }
        }
        prev = Some((t, uavs));
    }
    Ok(report)
}

/// Writes re-clustering events, one JSON object per line.
pub fn write_clusters(path: &Path, trace: &[SlotRecord]) -> Result<usize> {
    let mut w = BufWriter::new(File::create(path)?);
    let mut n = 0;
    for event in trace.iter().filter_map(|r| r.clusters.as_ref()) {
        serde_json::to_writer(&mut w, event)?;
        w.write_all(b"\n")?;
        n += 1;
    }
    w.flush()?;
    Ok(n)
}

/// Writes the plot data of `kind` into `dir` and returns the files written.
pub fn emit_plot_data(records: &[RunRecord], kind: PlotKind, dir: &Path) -> Result<Vec<PathBuf>> {
    if records.is_empty() {
        return Err(HarnessError::Invalid("no run records to emit".into()));
    }
    std::fs::create_dir_all(dir)?;
    match kind {
        PlotKind::LearningCurve => {
            let path = dir.join("learning_curve.csv");
            write_learning_curves(&path, records)?;
            Ok(vec![path])
        }
        PlotKind::Sweep(param) => {
            let path = dir.join(format!("sweep_{}.csv", param.name()));
            write_rows(&path, summarize(param, records))?;
            Ok(vec![path])
        }
        PlotKind::Trajectory => {
            let mut out = Vec::new();
            for r in records {
                let path = dir.join(format!("trajectory_{}_{}.csv", r.scheme, r.seed));
                write_trajectory(&path, &r.eval_trace)?;
                out.push(path);
            }
            Ok(out)
        }
    }
}
