//! Learning components: a small dense network, Adam, replay, soft
//! actor-critic and CMA-ES.

pub mod adam;
pub mod cmaes;
pub mod env;
mod error;
pub mod mlp;
pub mod policy;
pub mod replay;
pub mod sac;

pub use cmaes::{cmaes_optimize, CmaesConfig, CmaesResult};
pub use env::{ContextBandit, EnvStep, Environment};
pub use error::{OptimError, Result};
pub use mlp::Mlp;
pub use replay::{Batch, ReplayBuffer, Transition};
pub use sac::{evaluate_policy, sac_train, EpochStats, Sac, SacCheckpoint, SacConfig};
