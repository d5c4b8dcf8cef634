//! FIFO experience replay with uniform sampling.

use ndarray::{Array1, Array2};
use rand::Rng;

use crate::error::{OptimError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub observation: Vec<f64>,
    pub action: Vec<f64>,
    pub reward: f64,
    pub next_observation: Vec<f64>,
    pub done: bool,
}

/// A sampled minibatch, one row per transition.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    pub obs: Array2<f64>,
    pub actions: Array2<f64>,
    pub rewards: Array1<f64>,
    pub next_obs: Array2<f64>,
    pub dones: Array1<f64>,
}

impl Batch {
    pub fn len(&self) -> usize {
        self.rewards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rewards.is_empty()
    }

    pub fn from_transitions(items: &[Transition]) -> Result<Self> {
        let first = items
            .first()
            .ok_or_else(|| OptimError::InvalidConfig("empty batch".into()))?;
        let (od, ad) = (first.observation.len(), first.action.len());
        let n = items.len();
        let mut b = Batch {
            obs: Array2::zeros((n, od)),
            actions: Array2::zeros((n, ad)),
            rewards: Array1::zeros(n),
            next_obs: Array2::zeros((n, od)),
            dones: Array1::zeros(n),
        };
        for (i, t) in items.iter().enumerate() {
            if t.observation.len() != od || t.next_observation.len() != od || t.action.len() != ad {
                return Err(OptimError::InvalidConfig("ragged transitions".into()));
            }
            b.obs.row_mut(i).iter_mut().zip(&t.observation).for_each(|(d, s)| *d = *s);
            b.next_obs.row_mut(i).iter_mut().zip(&t.next_observation).for_each(|(d, s)| *d = *s);
            b.actions.row_mut(i).iter_mut().zip(&t.action).for_each(|(d, s)| *d = *s);
            b.rewards[i] = t.reward;
            b.dones[i] = if t.done { 1.0 } else { 0.0 };
        }
        Ok(b)
    }
}

/// Ring buffer. Observations and actions are stored as `f32` to halve the
/// footprint of long runs; rewards stay `f64`.
#[derive(Debug, Clone)]
pub struct ReplayBuffer {
    capacity: usize,
    obs_dim: usize,
    act_dim: usize,
    obs: Vec<f32>,
    next_obs: Vec<f32>,
    actions: Vec<f32>,
    rewards: Vec<f64>,
    dones: Vec<bool>,
    head: usize,
    len: usize,
}

impl ReplayBuffer {
    pub fn new(capacity: usize, obs_dim: usize, act_dim: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(OptimError::InvalidConfig("replay capacity must be positive".into()));
        }
        Ok(Self {
            capacity,
            obs_dim,
            act_dim,
            obs: Vec::new(),
            next_obs: Vec::new(),
            actions: Vec::new(),
            rewards: Vec::new(),
            dones: Vec::new(),
            head: 0,
            len: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn push(&mut self, t: &Transition) -> Result<()> {
        if t.observation.len() != self.obs_dim || t.next_observation.len() != self.obs_dim || t.action.len() != self.act_dim {
            return Err(OptimError::InvalidConfig("transition has wrong dimensions".into()));
        }
        let to32 = |v: &[f64]| v.iter().map(|&x| x as f32).collect::<Vec<_>>();
        if self.len < self.capacity {
            self.obs.extend(to32(&t.observation));
            self.next_obs.extend(to32(&t.next_observation));
            self.actions.extend(to32(&t.action));
            self.rewards.push(t.reward);
            self.dones.push(t.done);
            self.len += 1;
        } else {
            let (o, a) = (self.head * self.obs_dim, self.head * self.act_dim);
            self.obs[o..o + self.obs_dim].copy_from_slice(&to32(&t.observation));
            self.next_obs[o..o + self.obs_dim].copy_from_slice(&to32(&t.next_observation));
            self.actions[a..a + self.act_dim].copy_from_slice(&to32(&t.action));
            self.rewards[self.head] = t.reward;
            self.dones[self.head] = t.done;
        }
        self.head = (self.head + 1) % self.capacity;
        Ok(())
    }

    /// Stored item `i`, oldest first.
    pub fn get(&self, i: usize) -> Option<Transition> {
        if i >= self.len {
            return None;
        }
        let slot = if self.len < self.capacity { i } else { (self.head + i) % self.capacity };
        let back = |v: &[f32]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
        let (o, a) = (slot * self.obs_dim, slot * self.act_dim);
        Some(Transition {
            observation: back(&self.obs[o..o + self.obs_dim]),
            action: back(&self.actions[a..a + self.act_dim]),
            reward: self.rewards[slot],
            next_observation: back(&self.next_obs[o..o + self.obs_dim]),
            done: self.dones[slot],
        })
    }

    /// Uniform sample with replacement; fails while fewer than `size` items are stored.
    pub fn sample<R: Rng + ?Sized>(&self, size: usize, rng: &mut R) -> Result<Batch> {
        if size == 0 || self.len < size {
            return Err(OptimError::InvalidConfig(format!(
                "cannot sample {size} from a buffer holding {}",
                self.len
            )));
        }
        let mut b = Batch {
            obs: Array2::zeros((size, self.obs_dim)),
            actions: Array2::zeros((size, self.act_dim)),
            rewards: Array1::zeros(size),
            next_obs: Array2::zeros((size, self.obs_dim)),
            dones: Array1::zeros(size),
        };
        for i in 0..size {
            let s = rng.random_range(0..self.len);
            let (o, a) = (s * self.obs_dim, s * self.act_dim);
            b.obs.row_mut(i).iter_mut().zip(&self.obs[o..o + self.obs_dim]).for_each(|(d, x)| *d = *x as f64);
            b.next_obs
                .row_mut(i)
                .iter_mut()
                .zip(&self.next_obs[o..o + self.obs_dim])
                .for_each(|(d, x)| *d = *x as f64);
            b.actions.row_mut(i).iter_mut().zip(&self.actions[a..a + self.act_dim]).for_each(|(d, x)| *d = *x as f64);
            b.rewards[i] = self.rewards[s];
            b.dones[i] = if self.dones[s] { 1.0 } else { 0.0 };
        }
        Ok(b)
    }
}
