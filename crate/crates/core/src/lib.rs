//! Physical model of a multi-UAV ISAC network with movable antenna arrays:
//! scenario geometry and mobility, array steering with attitude compensation,
//! communication and bistatic sensing SINR, clustering-based association, and
//! the slot-level environment built on top of them.

pub mod array;
pub mod assoc;
pub mod channel;
pub mod env;
pub mod error;
pub mod scenario;
pub mod sensing;

pub use error::{Error, Result};
pub use scenario::{load_config, ScenarioConfig};
pub use env::{Env, EnvOptions, RewardBreakdown, StepResult};
