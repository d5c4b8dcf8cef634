//! Fixed-size action vector and its decoding into feasible decisions.

use std::ops::Range;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::array::{project_geometry, ArrayGeometry};
use crate::assoc::AssociationMatrix;
use crate::channel::{norm_sqr, BeamPlan, LinkTable};
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

/// Index map of the flat action vector.
///
/// Per UAV: speed, direction (3), element offsets (M), then `ξ` communication
/// slots of `2M + 1` entries (real parts, imaginary parts, power). One more
/// `2M + 1` slot per sensing target follows all UAV blocks; it is used by the
/// target's serving UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ActionLayout {
    pub uav_count: usize,
    pub antennas: usize,
    pub slots: usize,
    pub target_count: usize,
}

impl ActionLayout {
    pub fn from_config(config: &ScenarioConfig) -> Self {
        Self {
            uav_count: config.uav_count,
            antennas: config.antenna_count,
            slots: config.max_uav_load,
            target_count: config.target_count,
        }
    }

    pub fn beam_width(&self) -> usize {
        2 * self.antennas + 1
    }

    pub fn per_uav(&self) -> usize {
        4 + self.antennas + self.slots * self.beam_width()
    }

    pub fn dim(&self) -> usize {
        self.uav_count * self.per_uav() + self.target_count * self.beam_width()
    }

    pub fn speed(&self, uav: usize) -> usize {
        uav * self.per_uav()
    }

    pub fn direction(&self, uav: usize) -> Range<usize> {
        let s = self.speed(uav) + 1;
        s..s + 3
    }

    pub fn offsets(&self, uav: usize) -> Range<usize> {
        let s = self.speed(uav) + 4;
        s..s + self.antennas
    }

    pub fn comm_slot(&self, uav: usize, slot: usize) -> Range<usize> {
        let s = self.speed(uav) + 4 + self.antennas + slot * self.beam_width();
        s..s + self.beam_width()
    }

    pub fn sensing_slot(&self, target: usize) -> Range<usize> {
        let s = self.uav_count * self.per_uav() + target * self.beam_width();
        s..s + self.beam_width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionCommand {
    /// Speed before clamping to `V`.
    pub commanded_speed: f64,
    /// `None` means hover.
    pub direction: Option<Vector3<f64>>,
}

fn unit(raw: f64) -> f64 {
    if raw.is_finite() {
        raw.clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

/// `(raw + 1) / 2 · V`; the raw value is not clipped so over-range commands
/// stay visible to the speed penalty.
pub fn decode_motion(raw: &[f64], layout: &ActionLayout, max_speed: f64) -> Vec<MotionCommand> {
    (0..layout.uav_count)
        .map(|n| {
            let s = raw[layout.speed(n)];
            let speed = if s.is_finite() { ((s + 1.0) / 2.0 * max_speed).max(0.0) } else { 0.0 };
            let d = &raw[layout.direction(n)];
            let v = Vector3::new(unit(d[0]), unit(d[1]), unit(d[2]));
            let norm = v.norm();
            if norm < 1e-9 || speed == 0.0 {
                MotionCommand {
                    commanded_speed: speed,
                    direction: None,
                }
            } else {
                MotionCommand {
                    commanded_speed: speed,
                    direction: Some(v / norm),
                }
            }
        })
        .collect()
}

/// Residual around the uniform layout: raw ±1 moves an element by half the
/// uniform spacing before projection.
pub fn decode_offsets(raw: &[f64], layout: &ActionLayout, config: &ScenarioConfig) -> Result<Vec<ArrayGeometry>> {
    let (d_off, d_min) = (config.max_array_offset_m, config.min_antenna_spacing_m);
    let base = ArrayGeometry::uniform(layout.antennas, d_off, d_min)?;
    let step = if layout.antennas > 1 {
        d_off / (layout.antennas as f64 - 1.0)
    } else {
        d_off
    };
    (0..layout.uav_count)
        .map(|n| {
            let shifted: Vec<f64> = raw[layout.offsets(n)]
                .iter()
                .zip(base.offsets())
                .map(|(r, b)| b + unit(*r) * step)
                .collect();
            project_geometry(&shifted, d_off, d_min)
        })
        .collect()
}

/// Beam `a/√M + s·(x + j y)` normalised, and `ρ = (raw + 1) / 2`.
pub fn decode_beam(raw: &[f64], reference: &[Complex64], residual_scale: f64) -> (Vec<Complex64>, f64) {
    let m = reference.len();
    let scale = 1.0 / (m as f64).sqrt();
    let w: Vec<Complex64> = (0..m)
        .map(|i| reference[i] * scale + Complex64::new(unit(raw[i]), unit(raw[m + i])) * residual_scale)
        .collect();
    let norm = norm_sqr(&w).sqrt();
    let w = if norm > 1e-9 {
        w.into_iter().map(|z| z / norm).collect()
    } else {
        reference.iter().map(|z| z * scale).collect()
    };
    let rho = (unit(raw[2 * m]) + 1.0) / 2.0;
    (w, rho)
}

/// Fills a beam plan from the raw action for the given association.
///
/// Each UAV's served users take its communication slots in ascending id
/// order; targets use their own slot at the serving UAV. Beams are residuals
/// over the steering vector in `links`, so `links` must describe the
/// geometry at transmission time.
pub fn decode_beams(
    raw: &[f64],
    layout: &ActionLayout,
    assoc: &AssociationMatrix,
    links: &LinkTable,
    comm_count: usize,
    config: &ScenarioConfig,
) -> Result<BeamPlan> {
    let node_count = links.node_count();
    let mut plan = BeamPlan::new(layout.uav_count, node_count, layout.antennas);
    for n in 0..layout.uav_count {
        let served: Vec<usize> = assoc.served(n).into_iter().filter(|&k| k < comm_count).collect();
        if served.len() > layout.slots {
            return Err(Error::InvalidInput(format!(
                "UAV {n} serves {} users but has {} beam slots",
                served.len(),
                layout.slots
            )));
        }
        for (slot, &k) in served.iter().enumerate() {
            let (w, rho) = decode_beam(&raw[layout.comm_slot(n, slot)], links.steering(n, k), config.beam_residual_scale);
            plan.set(n, k, &w, rho)?;
        }
    }
    for i in 0..layout.target_count {
        let node = comm_count + i;
        let n = assoc.owner(node)?;
        let (w, rho) = decode_beam(&raw[layout.sensing_slot(i)], links.steering(n, node), config.beam_residual_scale);
        plan.set(n, node, &w, rho)?;
    }
    if config.total_power_cap {
        plan.enforce_total_power_cap(0..comm_count);
    }
    plan.quantize_power(config.power_quantization_step);
    Ok(plan)
}

#[derive(Debug, Clone)]
pub struct DecodedAction {
    pub motions: Vec<MotionCommand>,
    pub geometries: Vec<ArrayGeometry>,
    pub beams: BeamPlan,
}

/// Decodes every head at once against a fixed link table.
pub fn decode_action(
    raw: &[f64],
    layout: &ActionLayout,
    assoc: &AssociationMatrix,
    links: &LinkTable,
    comm_count: usize,
    config: &ScenarioConfig,
) -> Result<DecodedAction> {
    if raw.len() != layout.dim() {
        return Err(Error::InvalidInput(format!(
            "action has {} entries, expected {}",
            raw.len(),
            layout.dim()
        )));
    }
    Ok(DecodedAction {
        motions: decode_motion(raw, layout, config.uav_max_speed_mps),
        geometries: decode_offsets(raw, layout, config)?,
        beams: decode_beams(raw, layout, assoc, links, comm_count, config)?,
    })
}
