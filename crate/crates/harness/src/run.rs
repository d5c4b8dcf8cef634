//! Training and deterministic evaluation of one scheme.

use maisac_core::env::{Env, SlotRecord};
use maisac_core::ScenarioConfig;
use maisac_optim::{sac_train, EnvStep, Environment, EpochStats, Sac, SacConfig};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::scheme::Scheme;

/// Adapts the simulator to the trainer's interface; the reward is the
/// total of the per-slot breakdown.
#[derive(Debug, Clone)]
pub struct SimEnv {
    pub env: Env,
    pub last_record: Option<SlotRecord>,
}

impl SimEnv {
    pub fn new(config: ScenarioConfig, scheme: Scheme) -> Result<Self> {
        Ok(Self {
            env: Env::new(config, scheme.env_options())?,
            last_record: None,
        })
    }
}

impl Environment for SimEnv {
    type Error = maisac_core::Error;

    fn observation_dim(&self) -> usize {
        self.env.observation_dim()
    }

    fn action_dim(&self) -> usize {
        self.env.action_dim()
    }

    fn reset(&mut self, seed: u64) -> maisac_core::Result<Vec<f64>> {
        self.last_record = None;
        self.env.reset(seed)
    }

    fn step(&mut self, action: &[f64]) -> maisac_core::Result<EnvStep> {
        let r = self.env.step(action)?;
        self.last_record = Some(r.record);
        Ok(EnvStep {
            observation: r.observation,
            reward: r.reward.total,
            done: r.done,
        })
    }
}

/// Training budget presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// 150 epochs with small networks; minutes per run on one core.
    Desk,
    /// 1200 epochs with `[256, 256]` networks and batch 256.
    Paper,
}

impl Profile {
    pub fn sac_config(self) -> SacConfig {
        match self {
            Profile::Desk => SacConfig {
                hidden: vec![64, 64],
                lr: 3e-4,
                batch_size: 64,
                epochs: 150,
                steps_per_epoch: 200,
                updates_per_epoch: Some(50),
                warmup_steps: 1000,
                ..SacConfig::default()
            },
            Profile::Paper => SacConfig {
                epochs: 1200,
                ..SacConfig::default()
            },
        }
    }
}

/// Everything one run depends on besides the scheme and seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub scenario: ScenarioConfig,
    pub sac: SacConfig,
    /// Episodes of deterministic evaluation after training.
    pub eval_episodes: usize,
    /// Evaluation layouts use seeds `eval_seed_base + i`, shared by all runs.
    pub eval_seed_base: u64,
}

impl RunConfig {
    pub fn new(scenario: ScenarioConfig, profile: Profile) -> Self {
        Self {
            scenario,
            sac: profile.sac_config(),
            eval_episodes: 3,
            eval_seed_base: 1_000_000,
        }
    }

    pub fn eval_seeds(&self) -> Vec<u64> {
        (0..self.eval_episodes as u64).map(|i| self.eval_seed_base + i).collect()
    }
}

/// Summary of one (scheme, seed) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scheme: Scheme,
    pub seed: u64,
    pub antenna_count: usize,
    pub user_count: usize,
    pub sensing_threshold_db: f64,
    /// Mean per-slot sum rate of the deterministic policy, bits/s.
    pub mean_sum_rate_bps: f64,
    /// Fraction of (slot, target) pairs meeting the sensing threshold.
    pub sensing_satisfaction: f64,
    pub mean_eval_reward: f64,
    pub curve: Vec<EpochStats>,
    /// First evaluation episode, slot by slot.
    #[serde(skip)]
    pub eval_trace: Vec<SlotRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub mean_sum_rate_bps: f64,
    pub sensing_satisfaction: f64,
    pub mean_reward: f64,
    pub traces: Vec<Vec<SlotRecord>>,
}

/// Runs the deterministic policy for one full episode per seed.
pub fn evaluate(agent: &mut Sac, config: &ScenarioConfig, scheme: Scheme, seeds: &[u64]) -> Result<Evaluation> {
    if seeds.is_empty() {
        return Err(HarnessError::Invalid("no evaluation seeds".into()));
    }
    let mut env = Env::new(config.clone(), scheme.env_options())?;
    let threshold = config.sensing_threshold();
    let (mut rate, mut reward, mut slots) = (0.0, 0.0, 0usize);
    let (mut met, mut checks) = (0usize, 0usize);
    let mut traces = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let mut obs = env.reset(seed)?;
        let mut trace = Vec::with_capacity(config.episode_length_slots);
        loop {
            let a = agent.act(&obs, true)?;
            let r = env.step(&a)?;
            rate += r.reward.sum_rate_bps;
            reward += r.reward.total;
            slots += 1;
            met += r.record.sensing_sinr.iter().filter(|&&g| g >= threshold).count();
            checks += r.record.sensing_sinr.len();
            trace.push(r.record);
            if r.done {
                break;
            }
            obs = r.observation;
        }
        traces.push(trace);
    }
    Ok(Evaluation {
        mean_sum_rate_bps: rate / slots as f64,
        sensing_satisfaction: if checks == 0 { 1.0 } else { met as f64 / checks as f64 },
        mean_reward: reward / slots as f64,
        traces,
    })
}

/// Trains a fresh agent for `scheme` and evaluates it.
pub fn run_scheme(scheme: Scheme, config: &RunConfig, seed: u64) -> Result<(RunRecord, Sac)> {
    run_scheme_with(scheme, config, seed, |_| {})
}

/// As [`run_scheme`], reporting each epoch to `progress`.
pub fn run_scheme_with(
    scheme: Scheme,
    config: &RunConfig,
    seed: u64,
    mut progress: impl FnMut(&EpochStats),
) -> Result<(RunRecord, Sac)> {
    let scenario = &config.scenario;
    if scheme.movable() && scenario.antenna_count < 2 {
        return Err(HarnessError::Invalid(format!(
            "scheme {scheme} moves array elements but the array has {} element",
            scenario.antenna_count
        )));
    }
    let mut env = SimEnv::new(scenario.clone(), scheme)?;
    let sac = SacConfig {
        seed,
        ..config.sac.clone()
    };
    let (mut agent, curve) = sac_train(&mut env, &sac, |e, _| progress(e))?;
    let eval = evaluate(&mut agent, scenario, scheme, &config.eval_seeds())?;
    let record = RunRecord {
        scheme,
        seed,
        antenna_count: scenario.antenna_count,
        user_count: scenario.comm_user_count,
        sensing_threshold_db: scenario.sensing_threshold_db,
        mean_sum_rate_bps: eval.mean_sum_rate_bps,
        sensing_satisfaction: eval.sensing_satisfaction,
        mean_eval_reward: eval.mean_reward,
        curve,
        eval_trace: eval.traces.into_iter().next().unwrap_or_default(),
    };
    Ok((record, agent))
}

/// Runs `jobs` on up to `workers` threads; results keep job order.
pub fn run_parallel<J, T, F>(jobs: &[J], workers: usize, f: F) -> Vec<T>
where
    J: Sync,
    T: Send,
    F: Fn(&J) -> T + Sync,
{
    use std::sync::atomic::{AtomicUsize, Ordering};
    use std::sync::Mutex;

    let workers = workers.clamp(1, jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..jobs.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let out = f(&jobs[i]);
                slots.lock().expect("result lock")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("result lock")
        .into_iter()
        .map(|x| x.expect("every job ran"))
        .collect()
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
