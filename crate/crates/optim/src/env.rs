use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of one environment transition.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvStep {
    pub observation: Vec<f64>,
    pub reward: f64,
    pub done: bool,
}

/// Episodic environment with continuous actions in `[-1, 1]^A`.
pub trait Environment {
    type Error: std::error::Error + Send + Sync + 'static;

    fn observation_dim(&self) -> usize;
    fn action_dim(&self) -> usize;
    fn reset(&mut self, seed: u64) -> Result<Vec<f64>, Self::Error>;
    fn step(&mut self, action: &[f64]) -> Result<EnvStep, Self::Error>;
}

/// One-dimensional contextual bandit.
///
/// The context `s` is uniform on `[-1, 1]` and the reward of action `a` is
/// `1 - (a - s/2)²`, so the optimum is `a = s/2` with reward 1 every step.
#[derive(Debug, Clone)]
pub struct ContextBandit {
    episode_length: usize,
    state: f64,
    t: usize,
    rng: ChaCha8Rng,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ToyError(pub String);

impl ContextBandit {
    pub const OPTIMAL_REWARD: f64 = 1.0;

    pub fn new(episode_length: usize) -> Self {
        Self {
            episode_length: episode_length.max(1),
            state: 0.0,
            t: 0,
            rng: ChaCha8Rng::seed_from_u64(0),
        }
    }

    pub fn reward(state: f64, action: f64) -> f64 {
        1.0 - (action - 0.5 * state).powi(2)
    }
}

impl Environment for ContextBandit {
    type Error = ToyError;

    fn observation_dim(&self) -> usize {
        1
    }

    fn action_dim(&self) -> usize {
        1
    }

    fn reset(&mut self, seed: u64) -> Result<Vec<f64>, ToyError> {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
        self.t = 0;
        self.state = self.rng.random_range(-1.0..=1.0);
        Ok(vec![self.state])
    }

    fn step(&mut self, action: &[f64]) -> Result<EnvStep, ToyError> {
        if action.len() != 1 {
            return Err(ToyError(format!("expected 1 action, got {}", action.len())));
        }
        if self.t >= self.episode_length {
            return Err(ToyError("episode finished".into()));
        }
        let reward = Self::reward(self.state, action[0]);
        self.t += 1;
        self.state = self.rng.random_range(-1.0..=1.0);
        Ok(EnvStep {
            observation: vec![self.state],
            reward,
            done: self.t >= self.episode_length,
        })
    }
}
