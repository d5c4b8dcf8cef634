//! Gradient-free baseline: CMA-ES picks each slot's decision vector on the
//! frozen scenario, then the environment advances with it.

use maisac_core::env::{Env, SlotRecord};
use maisac_core::ScenarioConfig;
use maisac_optim::{cmaes_optimize, CmaesConfig};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scheme::Scheme;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub generations: usize,
    pub sigma0: f64,
    pub population: Option<usize>,
}

impl Default for BaselineConfig {
    fn default() -> Self {
        Self {
            generations: 20,
            sigma0: 0.3,
            population: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineRun {
    pub mean_sum_rate_bps: f64,
    pub sensing_satisfaction: f64,
    pub mean_reward: f64,
    pub trace: Vec<SlotRecord>,
}

/// One episode. UAVs hover unless the scheme prescribes a fixed path.
pub fn cmaes_episode(scheme: Scheme, config: &ScenarioConfig, seed: u64, baseline: &BaselineConfig) -> Result<BaselineRun> {
    let mut env = Env::new(config.clone(), scheme.env_options())?;
    env.reset(seed)?;
    let layout = *env.layout();
    let hover = |x: &mut [f64]| {
        for n in 0..layout.uav_count {
            x[layout.speed(n)] = -1.0;
            for i in layout.direction(n) {
                x[i] = 0.0;
            }
        }
    };
    let mut x0 = vec![0.0; env.action_dim()];
    let threshold = config.sensing_threshold();
    let (mut rate, mut reward, mut met, mut checks) = (0.0, 0.0, 0usize, 0usize);
    let mut trace = Vec::with_capacity(config.episode_length_slots);
    while !env.is_done() {
        let cma = CmaesConfig {
            population: baseline.population,
            sigma0: baseline.sigma0,
            max_generations: baseline.generations,
            target: None,
            seed: seed.wrapping_add(env.slot() as u64),
        };
        let frozen = env.clone();
        let best = cmaes_optimize(
            |x| {
                let clipped: Vec<f64> = x.iter().map(|v| v.clamp(-1.0, 1.0)).collect();
                frozen.evaluate_frozen(&clipped).map(|(r, _)| -r.total).unwrap_or(f64::NAN)
            },
            &x0,
            &cma,
        )?;
        let mut action: Vec<f64> = best.best_x.iter().map(|v| v.clamp(-1.0, 1.0)).collect();
        hover(&mut action);
        let r = env.step(&action)?;
        rate += r.reward.sum_rate_bps;
        reward += r.reward.total;
        met += r.record.sensing_sinr.iter().filter(|&&g| g >= threshold).count();
        checks += r.record.sensing_sinr.len();
        trace.push(r.record);
        x0 = action;
    }
    let slots = trace.len().max(1) as f64;
    Ok(BaselineRun {
        mean_sum_rate_bps: rate / slots,
        sensing_satisfaction: if checks == 0 { 1.0 } else { met as f64 / checks as f64 },
        mean_reward: reward / slots,
        trace,
    })
}
