//! Line-of-sight communication channels, beam plans, SINR and rate.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::{self, ArrayGeometry};
use crate::assoc::AssociationMatrix;
use crate::error::{Error, Result};
use crate::scenario::{GroundNode, InterferenceChannel, ScenarioConfig, UavState};

/// `hᴴ w`.
pub fn inner(h: &[Complex64], w: &[Complex64]) -> Complex64 {
    h.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommChannel {
    pub h: Vec<Complex64>,
    pub distance: f64,
}

/// Free-space LoS channel `sqrt(β0 / d²) · a(θ)`.
pub fn comm_channel(
    uav_position: &Vector3<f64>,
    axis: &Vector3<f64>,
    geometry: &ArrayGeometry,
    node_position: &Vector3<f64>,
    wavelength: f64,
    ref_gain: f64,
) -> Result<CommChannel> {
    let distance = (node_position - uav_position).norm();
    if !(distance > 0.0) {
        return Err(Error::InvalidInput("zero UAV-node distance".into()));
    }
    let theta = array::steering_angle(uav_position, axis, node_position)?;
    let amp = (ref_gain / (distance * distance)).sqrt();
    let h = array::steering_vector(geometry, theta, wavelength)
        .into_inner()
        .into_iter()
        .map(|a| a * amp)
        .collect();
    Ok(CommChannel { h, distance })
}

/// Steering vectors and distances for every UAV/ground-node pair in one slot.
#[derive(Debug, Clone)]
pub struct LinkTable {
    uav_count: usize,
    node_count: usize,
    steering: Vec<Vec<Complex64>>,
    distance: Vec<f64>,
}

impl LinkTable {
    /// `axes[n]` is UAV n's compensated array axis.
    pub fn compute(uavs: &[UavState], axes: &[Vector3<f64>], nodes: &[GroundNode], wavelength: f64) -> Result<Self> {
        let mut steering = Vec::with_capacity(uavs.len() * nodes.len());
        let mut distance = Vec::with_capacity(uavs.len() * nodes.len());
        for (uav, axis) in uavs.iter().zip(axes) {
            for node in nodes {
                let theta = array::steering_angle(&uav.position, axis, &node.position)?;
                steering.push(array::steering_vector(&uav.array, theta, wavelength).into_inner());
                distance.push((node.position - uav.position).norm());
            }
        }
        Ok(Self {
            uav_count: uavs.len(),
            node_count: nodes.len(),
            steering,
            distance,
        })
    }

    pub fn uav_count(&self) -> usize {
        self.uav_count
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn steering(&self, uav: usize, node: usize) -> &[Complex64] {
        &self.steering[uav * self.node_count + node]
    }

    pub fn distance(&self, uav: usize, node: usize) -> f64 {
        self.distance[uav * self.node_count + node]
    }

    pub fn channel(&self, uav: usize, node: usize, ref_gain: f64) -> CommChannel {
        let d = self.distance(uav, node);
        let amp = (ref_gain / (d * d)).sqrt();
        CommChannel {
            h: self.steering(uav, node).iter().map(|a| a * amp).collect(),
            distance: d,
        }
    }
}

/// Unit-norm beams and power ratios for every (UAV, node) pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BeamPlan {
    uav_count: usize,
    node_count: usize,
    antennas: usize,
    beams: Vec<Vec<Complex64>>,
    rho: Vec<f64>,
}

impl BeamPlan {
    pub fn new(uav_count: usize, node_count: usize, antennas: usize) -> Self {
        Self {
            uav_count,
            node_count,
            antennas,
            beams: vec![vec![Complex64::new(0.0, 0.0); antennas]; uav_count * node_count],
            rho: vec![0.0; uav_count * node_count],
        }
    }

    pub fn uav_count(&self) -> usize {
        self.uav_count
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn antennas(&self) -> usize {
        self.antennas
    }

    /// Stores `w / ‖w‖` with power ratio `rho`.
    pub fn set(&mut self, uav: usize, node: usize, w: &[Complex64], rho: f64) -> Result<()> {
        if w.len() != self.antennas {
            return Err(Error::InvalidInput(format!("beam has {} entries, expected {}", w.len(), self.antennas)));
        }
        if !(0.0..=1.0).contains(&rho) {
            return Err(Error::InvalidInput(format!("power ratio {rho} outside [0, 1]")));
        }
        let norm = norm_sqr(w).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidInput("beam has zero or non-finite norm".into()));
        }
        let i = uav * self.node_count + node;
        self.beams[i] = w.iter().map(|z| z / norm).collect();
        self.rho[i] = rho;
        Ok(())
    }

    pub fn beam(&self, uav: usize, node: usize) -> &[Complex64] {
        &self.beams[uav * self.node_count + node]
    }

    pub fn rho(&self, uav: usize, node: usize) -> f64 {
        self.rho[uav * self.node_count + node]
    }

    /// Zeroes every pair the association does not contain.
    pub fn mask_to(&mut self, assoc: &AssociationMatrix) {
        for n in 0..self.uav_count {
            for k in 0..self.node_count {
                if !assoc.is_associated(n, k) {
                    let i = n * self.node_count + k;
                    self.rho[i] = 0.0;
                    self.beams[i].iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    pub fn quantize_power(&mut self, step: f64) {
        if step > 0.0 {
            for r in &mut self.rho {
                *r = ((*r / step).round() * step).clamp(0.0, 1.0);
            }
        }
    }

    /// Scales each UAV's ratios over `nodes` so that `Σ_k ρ²` is at most one.
    pub fn enforce_total_power_cap(&mut self, nodes: std::ops::Range<usize>) {
        for n in 0..self.uav_count {
            let row = &mut self.rho[n * self.node_count + nodes.start..n * self.node_count + nodes.end];
            let total: f64 = row.iter().map(|r| r * r).sum();
            if total > 1.0 {
                let s = total.sqrt();
                row.iter_mut().for_each(|r| *r /= s);
            }
        }
    }

    /// Largest per-link transmit power in the plan, watts.
    pub fn max_link_power(&self, max_power: f64) -> f64 {
        self.beams
            .iter()
            .zip(&self.rho)
            .map(|(w, r)| r * r * norm_sqr(w) * max_power)
            .fold(0.0, f64::max)
    }
}

/// `|ρ w|² · P_max`.
pub fn link_power(rho: f64, w: &[Complex64], max_power: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::InvalidInput(format!("power ratio {rho} outside [0, 1]")));
    }
    Ok(rho * rho * norm_sqr(w) * max_power)
}

/// Scalars shared by the SINR computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub ref_gain: f64,
    pub max_power: f64,
    pub noise_power: f64,
    pub bandwidth: f64,
    pub interference: InterferenceChannel,
}

impl LinkBudget {
    pub fn from_config(config: &ScenarioConfig) -> Self {
        Self {
            ref_gain: config.ref_channel_gain(),
            max_power: config.max_tx_power_w(),
            noise_power: config.noise_power_w(),
            bandwidth: config.bandwidth_hz,
            interference: config.interference_channel,
        }
    }
}

/// Received power at the victim through `h` from beam `(m, l)`.
fn beam_power(links: &LinkTable, beams: &BeamPlan, budget: &LinkBudget, m: usize, via: usize, l: usize) -> f64 {
    let rho = beams.rho(m, l);
    if rho == 0.0 {
        return 0.0;
    }
    let d = links.distance(m, via);
    let gain = budget.ref_gain / (d * d);
    inner(links.steering(m, via), beams.beam(m, l)).norm_sqr() * gain * rho * rho * budget.max_power
}

/// SINR of communication user `k`; nodes `0..comm_count` are the users.
pub fn comm_sinr(
    k: usize,
    comm_count: usize,
    links: &LinkTable,
    beams: &BeamPlan,
    assoc: &AssociationMatrix,
    budget: &LinkBudget,
) -> Result<f64> {
    let n = assoc.owner(k)?;
    let signal = beam_power(links, beams, budget, n, k, k);
    if signal == 0.0 {
        return Ok(0.0);
    }
    let mut interference = 0.0;
    for m in 0..links.uav_count() {
        for l in (0..comm_count).filter(|&l| l != k) {
            let via = match budget.interference {
                InterferenceChannel::Receiver => k,
                InterferenceChannel::Literal => l,
            };
            interference += beam_power(links, beams, budget, m, via, l);
        }
    }
    Ok(signal / (interference + budget.noise_power))
}

/// `B log₂(1 + γ)` in bits/s.
pub fn rate(sinr: f64, bandwidth: f64) -> Result<f64> {
    if !(sinr >= 0.0) {
        return Err(Error::InvalidInput(format!("SINR must be non-negative, got {sinr}")));
    }
    Ok(bandwidth * (1.0 + sinr).log2())
}

/// Per-user SINRs of the communication users.
pub fn comm_sinrs(
    comm_count: usize,
    links: &LinkTable,
    beams: &BeamPlan,
    assoc: &AssociationMatrix,
    budget: &LinkBudget,
) -> Result<Vec<f64>> {
    (0..comm_count)
        .map(|k| comm_sinr(k, comm_count, links, beams, assoc, budget))
        .collect()
}

pub fn sum_rate(
    comm_count: usize,
    links: &LinkTable,
    beams: &BeamPlan,
    assoc: &AssociationMatrix,
    budget: &LinkBudget,
) -> Result<f64> {
    comm_sinrs(comm_count, links, beams, assoc, budget)?
        .into_iter()
        .map(|g| rate(g, budget.bandwidth))
        .sum()
}
