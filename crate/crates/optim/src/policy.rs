//! Tanh-squashed diagonal Gaussian policy head.
//!
//! The network emits `2A` values per row: means, then unconstrained log-std
//! values that are softly clamped into `[LOG_STD_MIN, LOG_STD_MAX]`.

use ndarray::{s, Array1, Array2, Axis};

use crate::error::{OptimError, Result};

pub const LOG_STD_MIN: f64 = -5.0;
pub const LOG_STD_MAX: f64 = 2.0;

const HALF_LOG_TAU: f64 = 0.918_938_533_204_672_8;

pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `log(1 - tanh(u)²)` in a form that stays finite for large `|u|`.
pub fn squash_log_jacobian(u: f64) -> f64 {
    2.0 * (std::f64::consts::LN_2 - u - softplus(-2.0 * u))
}

pub fn soft_clamp(raw: f64) -> f64 {
    LOG_STD_MIN + 0.5 * (LOG_STD_MAX - LOG_STD_MIN) * (raw.tanh() + 1.0)
}

pub fn soft_clamp_derivative(raw: f64) -> f64 {
    let t = raw.tanh();
    0.5 * (LOG_STD_MAX - LOG_STD_MIN) * (1.0 - t * t)
}

/// Means and clamped log-std split out of a raw head output.
#[derive(Debug, Clone)]
pub struct GaussianHead {
    pub mean: Array2<f64>,
    pub raw_log_std: Array2<f64>,
    pub log_std: Array2<f64>,
}

impl GaussianHead {
    pub fn from_output(out: &Array2<f64>, act_dim: usize) -> Result<Self> {
        if out.ncols() != 2 * act_dim {
            return Err(OptimError::InvalidConfig(format!(
                "policy output has {} columns, expected {}",
                out.ncols(),
                2 * act_dim
            )));
        }
        if out.iter().any(|x| !x.is_finite()) {
            return Err(OptimError::NonFinite("policy network output".into()));
        }
        let mean = out.slice(s![.., ..act_dim]).to_owned();
        let raw_log_std = out.slice(s![.., act_dim..]).to_owned();
        let log_std = raw_log_std.mapv(soft_clamp);
        Ok(Self {
            mean,
            raw_log_std,
            log_std,
        })
    }

    pub fn deterministic(&self) -> Array2<f64> {
        self.mean.mapv(f64::tanh)
    }

    /// Reparameterised draw `a = tanh(μ + σ ε)` for given standard-normal `noise`.
    pub fn sample(&self, noise: &Array2<f64>) -> PolicySample {
        let std = self.log_std.mapv(f64::exp);
        let pre_tanh = &self.mean + &(&std * noise);
        let actions = pre_tanh.mapv(f64::tanh);
        let mut per_dim = noise.mapv(|e| -0.5 * e * e - HALF_LOG_TAU);
        per_dim -= &self.log_std;
        per_dim.zip_mut_with(&pre_tanh, |p, &u| *p -= squash_log_jacobian(u));
        PolicySample {
            actions,
            pre_tanh,
            log_prob: per_dim.sum_axis(Axis(1)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolicySample {
    pub actions: Array2<f64>,
    pub pre_tanh: Array2<f64>,
    pub log_prob: Array1<f64>,
}

/// Log-density of a squashed action under a 1-D head, for checking.
pub fn log_prob_of_action(mean: f64, log_std: f64, action: f64) -> f64 {
    let u = action.atanh();
    let z = (u - mean) / log_std.exp();
    -0.5 * z * z - log_std - HALF_LOG_TAU - squash_log_jacobian(u)
}
