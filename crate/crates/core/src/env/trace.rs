//! JSON-lines episode traces.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::reward::RewardBreakdown;
use crate::assoc::ClusterAssignment;
use crate::error::{Error, Result};

/// Clustering snapshot taken on a recluster slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterEvent {
    pub t: usize,
    pub labels: Vec<Option<usize>>,
    pub centroids: Vec<[f64; 2]>,
    pub cluster_owner: Vec<Option<usize>>,
    pub uav_cluster: Vec<Option<usize>>,
}

impl ClusterEvent {
    pub fn from_assignment(t: usize, a: &ClusterAssignment) -> Self {
        Self {
            t,
            labels: a.clusters.labels.clone(),
            centroids: a.clusters.centroids.iter().map(|c| [c.x, c.y]).collect(),
            cluster_owner: a.cluster_owner.clone(),
            uav_cluster: a.uav_cluster.clone(),
        }
    }
}

/// One line of an episode trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotRecord {
    pub t: usize,
    pub uav_positions: Vec<[f64; 3]>,
    pub offsets: Vec<Vec<f64>>,
    pub user_positions: Vec<[f64; 2]>,
    /// Serving UAV per ground node.
    pub owners: Vec<usize>,
    pub sensing_tx: Vec<usize>,
    pub sensing_rx: Vec<usize>,
    pub sensing_sinr: Vec<f64>,
    pub user_rates_bps: Vec<f64>,
    /// Power ratio of each node at its serving UAV.
    pub power_ratios: Vec<f64>,
    pub collisions: Vec<(usize, usize)>,
    pub reward: RewardBreakdown,
    pub reclustered: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub clusters: Option<ClusterEvent>,
}

pub fn write_trace<W: Write>(mut out: W, records: &[SlotRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r).map_err(|e| Error::InvalidInput(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_trace<R: BufRead>(input: R) -> Result<Vec<SlotRecord>> {
    input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
        .map(|l| {
            let line = l?;
            serde_json::from_str(&line).map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}
