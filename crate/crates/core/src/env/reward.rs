use serde::{Deserialize, Serialize};

use crate::scenario::ScenarioConfig;

/// Per-slot reward, `total = sum_rate_term - penalties`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RewardBreakdown {
    /// `Σ log₂(1 + γ_k)`, the sum rate in units of the bandwidth.
    pub sum_rate_term: f64,
    /// Sum rate in bits/s, logged only.
    pub sum_rate_bps: f64,
    pub sensing_penalty: f64,
    pub collision_penalty: f64,
    pub speed_penalty: f64,
    pub total: f64,
}

impl RewardBreakdown {
    pub fn penalties(&self) -> f64 {
        self.sensing_penalty + self.collision_penalty + self.speed_penalty
    }
}

/// Raw per-slot quantities the reward is built from.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SlotMetrics {
    pub comm_sinr: Vec<f64>,
    pub sensing_sinr: Vec<f64>,
    pub collisions: Vec<(usize, usize)>,
    /// Commanded speed exceeded `V` before clamping.
    pub overspeed: Vec<bool>,
}

/// `(Γ_thr / Γ)·f_1` for a target below threshold, capped at `cap·f_1`.
pub fn sensing_penalty(sinr: f64, threshold: f64, weight: f64, cap: f64) -> f64 {
    if sinr >= threshold {
        0.0
    } else if sinr > 0.0 {
        (threshold / sinr).min(cap) * weight
    } else {
        cap * weight
    }
}

pub fn compute_reward(metrics: &SlotMetrics, config: &ScenarioConfig) -> RewardBreakdown {
    let sum_rate_term: f64 = metrics.comm_sinr.iter().map(|g| (1.0 + g).log2()).sum();
    let threshold = config.sensing_threshold();
    let sensing_penalty = metrics
        .sensing_sinr
        .iter()
        .map(|&g| sensing_penalty(g, threshold, config.sensing_penalty_weight, config.sensing_penalty_cap))
        .sum();
    let collision_penalty = metrics.collisions.len() as f64 * config.collision_penalty;
    let speed_penalty = metrics.overspeed.iter().filter(|&&o| o).count() as f64 * config.speed_penalty_weight;
    let mut r = RewardBreakdown {
        sum_rate_term,
        sum_rate_bps: sum_rate_term * config.bandwidth_hz,
        sensing_penalty,
        collision_penalty,
        speed_penalty,
        total: 0.0,
    };
    r.total = r.sum_rate_term - r.penalties();
    r
}
