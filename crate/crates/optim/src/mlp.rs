//! Dense feed-forward network with tanh hidden layers and a linear output.

use ndarray::{Array1, Array2, Axis};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mlp {
    sizes: Vec<usize>,
    /// `weights[l]` is `in × out`, so a batch is `x · W + b`.
    weights: Vec<Array2<f64>>,
    biases: Vec<Array1<f64>>,
}

/// Per-layer inputs kept from a forward pass for the backward pass.
#[derive(Debug, Clone)]
pub struct Cache {
    inputs: Vec<Array2<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grads {
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl Grads {
    pub fn zeros_like(net: &Mlp) -> Self {
        Self {
            weights: net.weights.iter().map(|w| Array2::zeros(w.raw_dim())).collect(),
            biases: net.biases.iter().map(|b| Array1::zeros(b.raw_dim())).collect(),
        }
    }

    pub fn norm(&self) -> f64 {
        let w: f64 = self.weights.iter().map(|w| w.iter().map(|x| x * x).sum::<f64>()).sum();
        let b: f64 = self.biases.iter().map(|b| b.iter().map(|x| x * x).sum::<f64>()).sum();
        (w + b).sqrt()
    }

    pub fn scale(&mut self, s: f64) {
        self.weights.iter_mut().for_each(|w| *w *= s);
        self.biases.iter_mut().for_each(|b| *b *= s);
    }

    /// Rescales so the global norm is at most `max_norm`; returns the norm before clipping.
    pub fn clip_norm(&mut self, max_norm: f64) -> f64 {
        let n = self.norm();
        if n > max_norm {
            self.scale(max_norm / n);
        }
        n
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for (w, b) in self.weights.iter().zip(&self.biases) {
            out.extend(w.iter());
            out.extend(b.iter());
        }
        out
    }
}

/// Number of parameters of a dense net with the given widths.
pub fn param_count(sizes: &[usize]) -> usize {
    sizes.windows(2).map(|p| p[0] * p[1] + p[1]).sum()
}

impl Mlp {
    /// Uniform `±1/√fan_in` initialisation for weights and biases.
    pub fn new<R: Rng + ?Sized>(sizes: &[usize], rng: &mut R) -> Result<Self> {
        if sizes.len() < 2 || sizes.contains(&0) {
            return Err(OptimError::InvalidConfig(format!("bad layer widths {sizes:?}")));
        }
        let mut weights = Vec::with_capacity(sizes.len() - 1);
        let mut biases = Vec::with_capacity(sizes.len() - 1);
        for p in sizes.windows(2) {
            let bound = 1.0 / (p[0] as f64).sqrt();
            weights.push(Array2::from_shape_fn((p[0], p[1]), |_| rng.random_range(-bound..=bound)));
            biases.push(Array1::from_shape_fn(p[1], |_| rng.random_range(-bound..=bound)));
        }
        Ok(Self {
            sizes: sizes.to_vec(),
            weights,
            biases,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn input_dim(&self) -> usize {
        self.sizes[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.sizes.last().unwrap()
    }

    pub fn param_count(&self) -> usize {
        param_count(&self.sizes)
    }

    /// Multiplies the output layer by `s`; small output layers keep early
    /// policies near the centre of the action box.
    pub fn scale_output_layer(&mut self, s: f64) {
        let l = self.weights.len() - 1;
        self.weights[l] *= s;
        self.biases[l] *= s;
    }

    pub fn forward(&self, x: &Array2<f64>) -> Array2<f64> {
        let mut h = x.clone();
        let last = self.weights.len() - 1;
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            h = h.dot(w) + b;
            if l < last {
                h.mapv_inplace(f64::tanh);
            }
        }
        h
    }

    pub fn forward_cached(&self, x: &Array2<f64>) -> (Array2<f64>, Cache) {
        let mut inputs = Vec::with_capacity(self.weights.len());
        let mut h = x.clone();
        let last = self.weights.len() - 1;
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let mut z = h.dot(w) + b;
            if l < last {
                z.mapv_inplace(f64::tanh);
            }
            inputs.push(h);
            h = z;
        }
        (h, Cache { inputs })
    }

    /// Gradients of `Σ grad_out ⊙ output` with respect to parameters and input.
    pub fn backward(&self, cache: &Cache, grad_out: &Array2<f64>) -> (Grads, Array2<f64>) {
        self.backprop(cache, grad_out, true)
    }

    /// Input gradient only, skipping parameter gradients.
    pub fn input_gradient(&self, cache: &Cache, grad_out: &Array2<f64>) -> Array2<f64> {
        self.backprop(cache, grad_out, false).1
    }

    fn backprop(&self, cache: &Cache, grad_out: &Array2<f64>, params: bool) -> (Grads, Array2<f64>) {
        let layers = self.weights.len();
        let mut gw = vec![Array2::zeros((0, 0)); layers];
        let mut gb = vec![Array1::zeros(0); layers];
        let mut g = grad_out.clone();
        for l in (0..layers).rev() {
            let input = &cache.inputs[l];
            if params {
                gw[l] = input.t().dot(&g);
                gb[l] = g.sum_axis(Axis(0));
            }
            let mut gin = g.dot(&self.weights[l].t());
            if l > 0 {
                gin.zip_mut_with(input, |d, a| *d *= 1.0 - a * a);
            }
            g = gin;
        }
        (Grads { weights: gw, biases: gb }, g)
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.param_count());
        for (w, b) in self.weights.iter().zip(&self.biases) {
            out.extend(w.iter());
            out.extend(b.iter());
        }
        out
    }

    pub fn set_flat(&mut self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(OptimError::InvalidConfig(format!(
                "expected {} parameters, got {}",
                self.param_count(),
                params.len()
            )));
        }
        let mut it = params.iter();
        for (w, b) in self.weights.iter_mut().zip(&mut self.biases) {
            w.iter_mut().for_each(|x| *x = *it.next().unwrap());
            b.iter_mut().for_each(|x| *x = *it.next().unwrap());
        }
        Ok(())
    }

    pub(crate) fn params_mut(&mut self) -> impl Iterator<Item = (&mut Array2<f64>, &mut Array1<f64>)> {
        self.weights.iter_mut().zip(self.biases.iter_mut())
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|x| x.is_finite()))
            && self.biases.iter().all(|b| b.iter().all(|x| x.is_finite()))
    }
}

/// `θ' ← τθ + (1 − τ)θ'`. `τ` must lie in `(0, 1]`.
pub fn soft_update(target: &mut Mlp, source: &Mlp, tau: f64) -> Result<()> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(OptimError::InvalidConfig(format!("tau {tau} outside (0, 1]")));
    }
    if target.sizes != source.sizes {
        return Err(OptimError::InvalidConfig("soft update between different shapes".into()));
    }
    for ((tw, tb), (sw, sb)) in target.params_mut().zip(source.weights.iter().zip(&source.biases)) {
        tw.zip_mut_with(sw, |t, s| *t = tau * s + (1.0 - tau) * *t);
        tb.zip_mut_with(sb, |t, s| *t = tau * s + (1.0 - tau) * *t);
    }
    Ok(())
}
