use ndarray::{Array, Dimension, Ix1, Ix2, Zip};
use serde::{Deserialize, Serialize};

use crate::mlp::{Grads, Mlp};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
    /// Global gradient-norm clip applied before each step.
    pub max_grad_norm: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            lr: 1e-4,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            max_grad_norm: 10.0,
        }
    }
}

/// Adam moments for one network.
#[derive(Debug, Clone)]
pub struct Adam {
    config: AdamConfig,
    m: Grads,
    v: Grads,
    t: i32,
}

fn moment<D: Dimension>(
    p: &mut Array<f64, D>,
    m: &mut Array<f64, D>,
    v: &mut Array<f64, D>,
    g: &Array<f64, D>,
    c: &AdamConfig,
    bc1: f64,
    bc2: f64,
) {
    Zip::from(p).and(m).and(v).and(g).for_each(|p, m, v, &g| {
        *m = c.beta1 * *m + (1.0 - c.beta1) * g;
        *v = c.beta2 * *v + (1.0 - c.beta2) * g * g;
        *p -= c.lr * (*m / bc1) / ((*v / bc2).sqrt() + c.eps);
    });
}

impl Adam {
    pub fn new(net: &Mlp, config: AdamConfig) -> Self {
        Self {
            config,
            m: Grads::zeros_like(net),
            v: Grads::zeros_like(net),
            t: 0,
        }
    }

    /// Clips `grads` in place and applies one step. Returns the pre-clip norm.
    pub fn step(&mut self, net: &mut Mlp, grads: &mut Grads) -> f64 {
        let norm = grads.clip_norm(self.config.max_grad_norm);
        self.t += 1;
        let bc1 = 1.0 - self.config.beta1.powi(self.t);
        let bc2 = 1.0 - self.config.beta2.powi(self.t);
        let c = self.config;
        for (l, (w, b)) in net.params_mut().enumerate() {
            moment::<Ix2>(w, &mut self.m.weights[l], &mut self.v.weights[l], &grads.weights[l], &c, bc1, bc2);
            moment::<Ix1>(b, &mut self.m.biases[l], &mut self.v.biases[l], &grads.biases[l], &c, bc1, bc2);
        }
        norm
    }
}

/// Adam on a single scalar parameter.
#[derive(Debug, Clone, Copy)]
pub struct ScalarAdam {
    config: AdamConfig,
    m: f64,
    v: f64,
    t: i32,
}

impl ScalarAdam {
    pub fn new(config: AdamConfig) -> Self {
        Self {
            config,
            m: 0.0,
            v: 0.0,
            t: 0,
        }
    }

    pub fn step(&mut self, param: &mut f64, grad: f64) {
        let c = self.config;
        let g = grad.clamp(-c.max_grad_norm, c.max_grad_norm);
        self.t += 1;
        self.m = c.beta1 * self.m + (1.0 - c.beta1) * g;
        self.v = c.beta2 * self.v + (1.0 - c.beta2) * g * g;
        let mh = self.m / (1.0 - c.beta1.powi(self.t));
        let vh = self.v / (1.0 - c.beta2.powi(self.t));
        *param -= c.lr * mh / (vh.sqrt() + c.eps);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_gradient_leaves_parameters() {
        let mut net = Mlp::new(&[2, 3, 1], &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let before = net.clone();
        let mut opt = Adam::new(&net, AdamConfig::default());
        let mut g = Grads::zeros_like(&net);
        opt.step(&mut net, &mut g);
        assert_eq!(net, before);
    }

    #[test]
    fn scalar_adam_minimises_quadratic() {
        let mut x = 3.0;
        let mut opt = ScalarAdam::new(AdamConfig {
            lr: 0.05,
            ..AdamConfig::default()
        });
        for _ in 0..2000 {
            let g = 2.0 * (x - 1.0);
            opt.step(&mut x, g);
        }
        assert!((x - 1.0).abs() < 1e-3);
    }
}
