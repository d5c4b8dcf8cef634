//! (μ/μ_w, λ)-CMA-ES with cumulative step-size adaptation and rank-one plus
//! rank-μ covariance updates.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{OptimError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CmaesConfig {
    /// Defaults to `4 + ⌊3 ln n⌋`.
    pub population: Option<usize>,
    pub sigma0: f64,
    pub max_generations: usize,
    /// Stop once the best value drops below this.
    pub target: Option<f64>,
    pub seed: u64,
}

impl Default for CmaesConfig {
    fn default() -> Self {
        Self {
            population: None,
            sigma0: 0.3,
            max_generations: 200,
            target: None,
            seed: 0,
        }
    }
}

pub fn default_population(dim: usize) -> usize {
    4 + (3.0 * (dim as f64).ln()).floor() as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Generation {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmaesResult {
    pub best_x: Vec<f64>,
    pub best_f: f64,
    pub evaluations: usize,
    pub history: Vec<Generation>,
}

/// Minimises `objective` starting from `x0`. A non-finite objective value is an error.
pub fn cmaes_optimize<F>(mut objective: F, x0: &[f64], config: &CmaesConfig) -> Result<CmaesResult>
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    if n == 0 {
        return Err(OptimError::InvalidConfig("CMA-ES needs at least one dimension".into()));
    }
    if !(config.sigma0 > 0.0 && config.sigma0.is_finite()) {
        return Err(OptimError::InvalidConfig("initial step size must be positive".into()));
    }
    let lambda = config.population.unwrap_or_else(|| default_population(n));
    if lambda < 2 {
        return Err(OptimError::InvalidConfig("population must be at least 2".into()));
    }
    let nf = n as f64;
    let mu = lambda / 2;
    let raw: Vec<f64> = (0..mu).map(|i| (mu as f64 + 0.5).ln() - ((i + 1) as f64).ln()).collect();
    let wsum: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / wsum).collect();
    let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

    let c_sigma = (mu_eff + 2.0) / (nf + mu_eff + 5.0);
    let d_sigma = 1.0 + 2.0 * (((mu_eff - 1.0) / (nf + 1.0)).sqrt() - 1.0).max(0.0) + c_sigma;
    let c_c = (4.0 + mu_eff / nf) / (nf + 4.0 + 2.0 * mu_eff / nf);
    let c_1 = 2.0 / ((nf + 1.3).powi(2) + mu_eff);
    let c_mu = (1.0 - c_1).min(2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nf + 2.0).powi(2) + mu_eff));
    let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut mean = DVector::from_column_slice(x0);
    let mut sigma = config.sigma0;
    let mut cov = DMatrix::<f64>::identity(n, n);
    let mut basis = DMatrix::<f64>::identity(n, n);
    let mut scales = DVector::<f64>::from_element(n, 1.0);
    let mut p_sigma = DVector::<f64>::zeros(n);
    let mut p_c = DVector::<f64>::zeros(n);

    let mut eval = |x: &DVector<f64>, count: &mut usize| -> Result<f64> {
        *count += 1;
        let f = objective(x.as_slice());
        if f.is_finite() {
            Ok(f)
        } else {
            Err(OptimError::NonFinite(format!("objective returned {f}")))
        }
    };

    let mut evaluations = 0;
    let mut best_x = mean.clone();
    let mut best_f = eval(&mean, &mut evaluations)?;
    let mut history = Vec::new();

    for generation in 0..config.max_generations {
        let mut pop: Vec<(f64, DVector<f64>, DVector<f64>)> = Vec::with_capacity(lambda);
        for _ in 0..lambda {
            let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
            let y = &basis * z.component_mul(&scales);
            let x = &mean + &y * sigma;
            let f = eval(&x, &mut evaluations)?;
            pop.push((f, x, y));
        }
        pop.sort_by(|a, b| a.0.total_cmp(&b.0));
        if pop[0].0 < best_f {
            best_f = pop[0].0;
            best_x = pop[0].1.clone();
        }

        let mut y_w = DVector::<f64>::zeros(n);
        for (w, (_, _, y)) in weights.iter().zip(&pop) {
            y_w += y * *w;
        }
        mean += &y_w * sigma;

        let inv_sqrt = &basis * DMatrix::from_diagonal(&scales.map(|d| 1.0 / d)) * basis.transpose();
        p_sigma = &p_sigma * (1.0 - c_sigma) + (inv_sqrt * &y_w) * (c_sigma * (2.0 - c_sigma) * mu_eff).sqrt();
        let ps_norm = p_sigma.norm();
        let decay = 1.0 - (1.0 - c_sigma).powi(2 * (generation as i32 + 1));
        let h_sigma = if ps_norm / decay.sqrt() < (1.4 + 2.0 / (nf + 1.0)) * chi_n {
            1.0
        } else {
            0.0
        };
        p_c = &p_c * (1.0 - c_c) + &y_w * (h_sigma * (c_c * (2.0 - c_c) * mu_eff).sqrt());

        let mut rank_mu = DMatrix::<f64>::zeros(n, n);
        for (w, (_, _, y)) in weights.iter().zip(&pop) {
            rank_mu += (y * y.transpose()) * *w;
        }
        let delta = (1.0 - h_sigma) * c_c * (2.0 - c_c);
        cov = &cov * (1.0 - c_1 - c_mu) + (&p_c * p_c.transpose() + &cov * delta) * c_1 + rank_mu * c_mu;
        cov = (&cov + cov.transpose()) * 0.5;

        sigma *= ((c_sigma / d_sigma) * (ps_norm / chi_n - 1.0)).exp();

        let eig = SymmetricEigen::new(cov.clone());
        basis = eig.eigenvectors;
        scales = eig.eigenvalues.map(|v| v.max(1e-300).sqrt());

        history.push(Generation {
            generation,
            best: best_f,
            mean: pop.iter().map(|p| p.0).sum::<f64>() / lambda as f64,
            sigma,
        });
        if config.target.is_some_and(|t| best_f < t) || !sigma.is_finite() || sigma < 1e-300 {
            break;
        }
    }

    Ok(CmaesResult {
        best_x: best_x.as_slice().to_vec(),
        best_f,
        evaluations,
        history,
    })
}
