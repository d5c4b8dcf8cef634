//! Soft actor-critic with twin critics, Polyak targets and a learned
//! entropy coefficient.

use ndarray::{concatenate, s, Array1, Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::adam::{Adam, AdamConfig, ScalarAdam};
use crate::env::Environment;
use crate::error::{OptimError, Result};
use crate::mlp::{soft_update, Grads, Mlp};
use crate::policy::{soft_clamp_derivative, GaussianHead, PolicySample};
use crate::replay::{Batch, ReplayBuffer, Transition};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SacConfig {
    pub hidden: Vec<usize>,
    pub lr: f64,
    pub batch_size: usize,
    pub gamma: f64,
    pub tau: f64,
    pub buffer_capacity: usize,
    pub initial_alpha: f64,
    /// Defaults to `-dim(a)`.
    pub target_entropy: Option<f64>,
    pub steps_per_epoch: usize,
    /// Gradient updates after each epoch's collection; defaults to `steps_per_epoch`.
    pub updates_per_epoch: Option<usize>,
    pub epochs: usize,
    /// Uniformly random actions for the first steps of training.
    pub warmup_steps: usize,
    pub max_grad_norm: f64,
    /// Initial scale of the policy output layer.
    pub policy_output_scale: f64,
    pub seed: u64,
}

impl Default for SacConfig {
    fn default() -> Self {
        Self {
            hidden: vec![256, 256],
            lr: 1e-4,
            batch_size: 256,
            gamma: 0.99,
            tau: 0.005,
            buffer_capacity: 100_000,
            initial_alpha: 0.2,
            target_entropy: None,
            steps_per_epoch: 200,
            updates_per_epoch: None,
            epochs: 150,
            warmup_steps: 1000,
            max_grad_norm: 10.0,
            policy_output_scale: 0.01,
            seed: 0,
        }
    }
}

impl SacConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(OptimError::InvalidConfig(m.into()));
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return bad("learning rate must be positive");
        }
        if self.batch_size == 0 {
            return bad("batch size must be positive");
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return bad("discount must lie in [0, 1]");
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return bad("tau must lie in (0, 1]");
        }
        if !(self.initial_alpha > 0.0 && self.initial_alpha.is_finite()) {
            return bad("entropy coefficient must be positive");
        }
        if self.buffer_capacity < self.batch_size {
            return bad("buffer capacity is smaller than the batch");
        }
        if self.steps_per_epoch == 0 {
            return bad("steps per epoch must be positive");
        }
        if self.hidden.contains(&0) {
            return bad("hidden widths must be positive");
        }
        if !(self.max_grad_norm > 0.0) {
            return bad("gradient clip must be positive");
        }
        Ok(())
    }

    pub fn updates(&self) -> usize {
        self.updates_per_epoch.unwrap_or(self.steps_per_epoch)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct UpdateStats {
    pub critic_loss: f64,
    pub policy_loss: f64,
    pub alpha: f64,
    /// `-E[log π]` on the batch.
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochStats {
    pub epoch: usize,
    pub cumulative_reward: f64,
    pub critic_loss: Option<f64>,
    pub policy_loss: Option<f64>,
    pub alpha: f64,
    pub entropy: Option<f64>,
}

fn sizes(input: usize, hidden: &[usize], output: usize) -> Vec<usize> {
    let mut v = vec![input];
    v.extend_from_slice(hidden);
    v.push(output);
    v
}

fn join(obs: &Array2<f64>, act: &Array2<f64>) -> Array2<f64> {
    concatenate(Axis(1), &[obs.view(), act.view()]).expect("row counts agree")
}

/// `E[½(Q(s,a) − y)²]` and its parameter gradient.
pub fn critic_loss(critic: &Mlp, batch: &Batch, targets: &Array1<f64>) -> (f64, Grads) {
    let n = batch.len() as f64;
    let (q, cache) = critic.forward_cached(&join(&batch.obs, &batch.actions));
    let diff = &q.column(0) - targets;
    let loss = 0.5 * diff.iter().map(|d| d * d).sum::<f64>() / n;
    let grad_out = (diff / n).insert_axis(Axis(1));
    (loss, critic.backward(&cache, &grad_out).0)
}

/// `L(log λ) = λ·(−E[log π] − H_target)` and its derivative in `log λ`.
pub fn entropy_loss(log_alpha: f64, log_probs: &Array1<f64>, target_entropy: f64) -> (f64, f64) {
    let alpha = log_alpha.exp();
    let g = -log_probs.mean().unwrap_or(0.0) - target_entropy;
    (alpha * g, alpha * g)
}

#[derive(Debug, Clone)]
pub struct Sac {
    config: SacConfig,
    obs_dim: usize,
    act_dim: usize,
    target_entropy: f64,
    policy: Mlp,
    q1: Mlp,
    q2: Mlp,
    q1_target: Mlp,
    q2_target: Mlp,
    log_alpha: f64,
    policy_opt: Adam,
    q1_opt: Adam,
    q2_opt: Adam,
    alpha_opt: ScalarAdam,
    rng: ChaCha8Rng,
}

impl Sac {
    pub fn new(obs_dim: usize, act_dim: usize, config: SacConfig) -> Result<Self> {
        config.validate()?;
        if obs_dim == 0 || act_dim == 0 {
            return Err(OptimError::InvalidConfig("observation and action sizes must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut policy = Mlp::new(&sizes(obs_dim, &config.hidden, 2 * act_dim), &mut rng)?;
        policy.scale_output_layer(config.policy_output_scale);
        let q1 = Mlp::new(&sizes(obs_dim + act_dim, &config.hidden, 1), &mut rng)?;
        let q2 = Mlp::new(&sizes(obs_dim + act_dim, &config.hidden, 1), &mut rng)?;
        let adam = AdamConfig {
            lr: config.lr,
            max_grad_norm: config.max_grad_norm,
            ..AdamConfig::default()
        };
        Ok(Self {
            target_entropy: config.target_entropy.unwrap_or(-(act_dim as f64)),
            obs_dim,
            act_dim,
            policy_opt: Adam::new(&policy, adam),
            q1_opt: Adam::new(&q1, adam),
            q2_opt: Adam::new(&q2, adam),
            alpha_opt: ScalarAdam::new(adam),
            q1_target: q1.clone(),
            q2_target: q2.clone(),
            log_alpha: config.initial_alpha.ln(),
            policy,
            q1,
            q2,
            rng,
            config,
        })
    }

    pub fn config(&self) -> &SacConfig {
        &self.config
    }

    pub fn obs_dim(&self) -> usize {
        self.obs_dim
    }

    pub fn act_dim(&self) -> usize {
        self.act_dim
    }

    pub fn target_entropy(&self) -> f64 {
        self.target_entropy
    }

    pub fn alpha(&self) -> f64 {
        self.log_alpha.exp()
    }

    pub fn log_alpha(&self) -> f64 {
        self.log_alpha
    }

    pub fn set_log_alpha(&mut self, v: f64) {
        self.log_alpha = v;
    }

    pub fn policy(&self) -> &Mlp {
        &self.policy
    }

    pub fn policy_mut(&mut self) -> &mut Mlp {
        &mut self.policy
    }

    pub fn critics(&self) -> (&Mlp, &Mlp) {
        (&self.q1, &self.q2)
    }

    pub fn critics_mut(&mut self) -> (&mut Mlp, &mut Mlp) {
        (&mut self.q1, &mut self.q2)
    }

    pub fn target_critics(&self) -> (&Mlp, &Mlp) {
        (&self.q1_target, &self.q2_target)
    }

    pub fn target_critics_mut(&mut self) -> (&mut Mlp, &mut Mlp) {
        (&mut self.q1_target, &mut self.q2_target)
    }

    /// Standard-normal noise drawn from the agent's stream.
    pub fn draw_noise(&mut self, rows: usize) -> Array2<f64> {
        let rng = &mut self.rng;
        Array2::from_shape_fn((rows, self.act_dim), |_| rng.sample(StandardNormal))
    }

    pub fn head(&self, obs: &Array2<f64>) -> Result<GaussianHead> {
        GaussianHead::from_output(&self.policy.forward(obs), self.act_dim)
    }

    pub fn sample_actions(&self, obs: &Array2<f64>, noise: &Array2<f64>) -> Result<PolicySample> {
        Ok(self.head(obs)?.sample(noise))
    }

    /// One action; the mean is squashed when `deterministic`.
    pub fn act(&mut self, obs: &[f64], deterministic: bool) -> Result<Vec<f64>> {
        if obs.len() != self.obs_dim {
            return Err(OptimError::InvalidConfig(format!(
                "observation has {} entries, expected {}",
                obs.len(),
                self.obs_dim
            )));
        }
        let x = Array2::from_shape_vec((1, self.obs_dim), obs.to_vec()).expect("shape");
        let head = self.head(&x)?;
        let a = if deterministic {
            head.deterministic()
        } else {
            let noise = self.draw_noise(1);
            head.sample(&noise).actions
        };
        Ok(a.into_raw_vec_and_offset().0)
    }

    /// `y = r + γ(1 − d)(min_i Q'_i(s', a') − λ log π(a'|s'))` with `a'` drawn from `noise`.
    pub fn target_values(&self, batch: &Batch, noise: &Array2<f64>) -> Result<Array1<f64>> {
        let next = self.sample_actions(&batch.next_obs, noise)?;
        let x = join(&batch.next_obs, &next.actions);
        let q1 = self.q1_target.forward(&x);
        let q2 = self.q2_target.forward(&x);
        let alpha = self.alpha();
        let y = Array1::from_shape_fn(batch.len(), |i| {
            let soft = q1[(i, 0)].min(q2[(i, 0)]) - alpha * next.log_prob[i];
            batch.rewards[i] + self.config.gamma * (1.0 - batch.dones[i]) * soft
        });
        Ok(y)
    }

    /// `E[λ log π(a|s) − min_i Q_i(s, a)]` with reparameterised `a`, its
    /// gradient in the policy parameters, and the sampled log-probabilities.
    pub fn policy_loss(&self, obs: &Array2<f64>, noise: &Array2<f64>) -> Result<(f64, Grads, Array1<f64>)> {
        let n = obs.nrows() as f64;
        let ad = self.act_dim;
        let (out, pcache) = self.policy.forward_cached(obs);
        let head = GaussianHead::from_output(&out, ad)?;
        let sample = head.sample(noise);
        let x = join(obs, &sample.actions);
        let (q1, c1) = self.q1.forward_cached(&x);
        let (q2, c2) = self.q2.forward_cached(&x);
        let pick1 = Array2::from_shape_fn((obs.nrows(), 1), |(i, _)| if q1[(i, 0)] <= q2[(i, 0)] { 1.0 } else { 0.0 });
        let pick2 = pick1.mapv(|m| 1.0 - m);
        let dq = self.q1.input_gradient(&c1, &pick1) + self.q2.input_gradient(&c2, &pick2);
        let dq_da = dq.slice(s![.., self.obs_dim..]);

        let alpha = self.alpha();
        let qmin: f64 = (0..obs.nrows()).map(|i| q1[(i, 0)].min(q2[(i, 0)])).sum();
        let loss = (alpha * sample.log_prob.sum() - qmin) / n;

        let mut grad = Array2::zeros((obs.nrows(), 2 * ad));
        for i in 0..obs.nrows() {
            for j in 0..ad {
                let a = sample.actions[(i, j)];
                let std = head.log_std[(i, j)].exp();
                let eps = noise[(i, j)];
                let d_u = (-dq_da[(i, j)] * (1.0 - a * a) + 2.0 * alpha * a) / n;
                let d_ls = d_u * std * eps - alpha / n;
                grad[(i, j)] = d_u;
                grad[(i, ad + j)] = d_ls * soft_clamp_derivative(head.raw_log_std[(i, j)]);
            }
        }
        let (grads, _) = self.policy.backward(&pcache, &grad);
        Ok((loss, grads, sample.log_prob))
    }

    /// One critic step per critic on fixed targets; returns the two losses.
    pub fn critic_update(&mut self, batch: &Batch, targets: &Array1<f64>) -> (f64, f64) {
        let (l1, mut g1) = critic_loss(&self.q1, batch, targets);
        let (l2, mut g2) = critic_loss(&self.q2, batch, targets);
        self.q1_opt.step(&mut self.q1, &mut g1);
        self.q2_opt.step(&mut self.q2, &mut g2);
        (l1, l2)
    }

    /// One policy step with the critics held fixed.
    pub fn policy_update(&mut self, obs: &Array2<f64>, noise: &Array2<f64>) -> Result<(f64, Array1<f64>)> {
        let (loss, mut grads, log_probs) = self.policy_loss(obs, noise)?;
        self.policy_opt.step(&mut self.policy, &mut grads);
        Ok((loss, log_probs))
    }

    pub fn entropy_update(&mut self, log_probs: &Array1<f64>) -> f64 {
        let (_, g) = entropy_loss(self.log_alpha, log_probs, self.target_entropy);
        self.alpha_opt.step(&mut self.log_alpha, g);
        self.alpha()
    }

    pub fn soft_update_targets(&mut self) -> Result<()> {
        soft_update(&mut self.q1_target, &self.q1, self.config.tau)?;
        soft_update(&mut self.q2_target, &self.q2, self.config.tau)
    }

    /// Critic, policy, entropy and target updates on one batch.
    pub fn update(&mut self, batch: &Batch) -> Result<UpdateStats> {
        let noise = self.draw_noise(batch.len());
        let targets = self.target_values(batch, &noise)?;
        let (l1, l2) = self.critic_update(batch, &targets);
        let noise = self.draw_noise(batch.len());
        let (policy_loss, log_probs) = self.policy_update(&batch.obs, &noise)?;
        let alpha = self.entropy_update(&log_probs);
        self.soft_update_targets()?;
        if !(l1.is_finite() && l2.is_finite() && policy_loss.is_finite() && alpha.is_finite()) {
            return Err(OptimError::NonFinite("training losses".into()));
        }
        Ok(UpdateStats {
            critic_loss: 0.5 * (l1 + l2),
            policy_loss,
            alpha,
            entropy: -log_probs.mean().unwrap_or(0.0),
        })
    }

    pub fn checkpoint(&self, config_hash: &str) -> SacCheckpoint {
        SacCheckpoint {
            version: SacCheckpoint::VERSION,
            config_hash: config_hash.to_string(),
            config: self.config.clone(),
            obs_dim: self.obs_dim,
            act_dim: self.act_dim,
            policy: self.policy.clone(),
            q1: self.q1.clone(),
            q2: self.q2.clone(),
            q1_target: self.q1_target.clone(),
            q2_target: self.q2_target.clone(),
            log_alpha: self.log_alpha,
        }
    }

    /// Rebuilds an agent from a checkpoint. Optimiser moments start fresh.
    pub fn from_checkpoint(ck: SacCheckpoint) -> Result<Self> {
        if ck.version != SacCheckpoint::VERSION {
            return Err(OptimError::InvalidConfig(format!("unsupported checkpoint version {}", ck.version)));
        }
        let mut sac = Sac::new(ck.obs_dim, ck.act_dim, ck.config)?;
        let expect = |net: &Mlp, got: &Mlp| {
            if net.sizes() == got.sizes() {
                Ok(())
            } else {
                Err(OptimError::InvalidConfig("checkpoint network shapes do not match".into()))
            }
        };
        expect(&sac.policy, &ck.policy)?;
        expect(&sac.q1, &ck.q1)?;
        expect(&sac.q2, &ck.q2)?;
        sac.policy = ck.policy;
        sac.q1 = ck.q1;
        sac.q2 = ck.q2;
        sac.q1_target = ck.q1_target;
        sac.q2_target = ck.q2_target;
        sac.log_alpha = ck.log_alpha;
        Ok(sac)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SacCheckpoint {
    pub version: u32,
    pub config_hash: String,
    pub config: SacConfig,
    pub obs_dim: usize,
    pub act_dim: usize,
    pub policy: Mlp,
    pub q1: Mlp,
    pub q2: Mlp,
    pub q1_target: Mlp,
    pub q2_target: Mlp,
    pub log_alpha: f64,
}

impl SacCheckpoint {
    pub const VERSION: u32 = 1;
}

/// Seed of training episode `i`.
pub fn episode_seed(base: u64, episode: u64) -> u64 {
    base.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(episode)
}

fn env_err<E: std::error::Error + Send + Sync + 'static>(e: E) -> OptimError {
    OptimError::Env(Box::new(e))
}

/// Trains from scratch. Each epoch collects `steps_per_epoch` transitions
/// (resetting on episode end) and then runs `updates()` gradient updates.
/// `on_epoch` sees every epoch's statistics as they are produced.
pub fn sac_train<E: Environment>(
    env: &mut E,
    config: &SacConfig,
    mut on_epoch: impl FnMut(&EpochStats, &Sac),
) -> Result<(Sac, Vec<EpochStats>)> {
    let mut agent = Sac::new(env.observation_dim(), env.action_dim(), config.clone())?;
    let mut buffer = ReplayBuffer::new(config.buffer_capacity, env.observation_dim(), env.action_dim())?;
    let mut explore = ChaCha8Rng::seed_from_u64(config.seed);
    explore.set_stream(1);
    let mut sampler = ChaCha8Rng::seed_from_u64(config.seed);
    sampler.set_stream(2);

    let mut episode = 0u64;
    let mut obs = env.reset(episode_seed(config.seed, episode)).map_err(env_err)?;
    let mut total_steps = 0usize;
    let mut curve = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        let mut cumulative = 0.0;
        for _ in 0..config.steps_per_epoch {
            let action = if total_steps < config.warmup_steps {
                (0..env.action_dim()).map(|_| explore.random_range(-1.0..=1.0)).collect()
            } else {
                agent.act(&obs, false)?
            };
            let step = env.step(&action).map_err(env_err)?;
            if !step.reward.is_finite() {
                return Err(OptimError::NonFinite("environment reward".into()));
            }
            cumulative += step.reward;
            buffer.push(&Transition {
                observation: obs,
                action,
                reward: step.reward,
                next_observation: step.observation.clone(),
                done: step.done,
            })?;
            total_steps += 1;
            obs = if step.done {
                episode += 1;
                env.reset(episode_seed(config.seed, episode)).map_err(env_err)?
            } else {
                step.observation
            };
        }

        let mut sums = UpdateStats::default();
        let mut count = 0usize;
        if buffer.len() >= config.batch_size {
            for _ in 0..config.updates() {
                let batch = buffer.sample(config.batch_size, &mut sampler)?;
                let s = agent.update(&batch)?;
                sums.critic_loss += s.critic_loss;
                sums.policy_loss += s.policy_loss;
                sums.entropy += s.entropy;
                count += 1;
            }
        }
        let mean = |x: f64| (count > 0).then(|| x / count as f64);
        let stats = EpochStats {
            epoch,
            cumulative_reward: cumulative,
            critic_loss: mean(sums.critic_loss),
            policy_loss: mean(sums.policy_loss),
            alpha: agent.alpha(),
            entropy: mean(sums.entropy),
        };
        on_epoch(&stats, &agent);
        curve.push(stats);
    }
    Ok((agent, curve))
}

/// Mean per-step reward of the deterministic policy over the given episodes.
pub fn evaluate_policy<E: Environment>(env: &mut E, agent: &mut Sac, seeds: &[u64], max_steps: usize) -> Result<f64> {
    let mut total = 0.0;
    let mut steps = 0usize;
    for &seed in seeds {
        let mut obs = env.reset(seed).map_err(env_err)?;
        for _ in 0..max_steps {
            let a = agent.act(&obs, true)?;
            let step = env.step(&a).map_err(env_err)?;
            total += step.reward;
            steps += 1;
            if step.done {
                break;
            }
            obs = step.observation;
        }
    }
    if steps == 0 {
        return Err(OptimError::InvalidConfig("evaluation ran no steps".into()));
    }
    Ok(total / steps as f64)
}
