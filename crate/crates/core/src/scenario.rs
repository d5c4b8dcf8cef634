//! World configuration, ground-node mobility and UAV kinematics.
//!
//! One slot lasts one second, so every speed in the configuration is also the
//! largest displacement per slot.

use std::f64::consts::PI;
use std::path::Path;

use nalgebra::{Vector2, Vector3};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::array::{ArrayGeometry, Attitude};
use crate::error::{Error, Result};

pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Which channel carries an interfering beam to the victim user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum InterferenceChannel {
    /// Beam meant for user `l` reaches victim `k` through `h_{m,k}`.
    #[default]
    Receiver,
    /// Interference power is measured on the intended user's own channel `h_{m,l}`.
    Literal,
}

/// Radar cross-sections, either one value for every target or one per target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rcs {
    Uniform(f64),
    PerTarget(Vec<f64>),
}

/// Flat key-value scenario description. Field names are the file keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Side of the square ground area, meters.
    pub area_side_m: f64,
    pub uav_count: usize,
    pub comm_user_count: usize,
    pub target_count: usize,
    pub antenna_count: usize,
    pub altitude_min_m: f64,
    pub altitude_max_m: f64,
    /// Horizontal UAV bounds, meters (same on x and y).
    pub uav_xy_min_m: f64,
    pub uav_xy_max_m: f64,
    pub uav_max_speed_mps: f64,
    pub user_max_speed_mps: f64,
    pub collision_distance_m: f64,
    pub max_tx_power_dbm: f64,
    pub bandwidth_hz: f64,
    pub carrier_frequency_hz: f64,
    pub noise_psd_dbm_per_hz: f64,
    /// Channel power gain at 1 m, dB.
    pub ref_channel_gain_db: f64,
    /// Bistatic reference gain, linear.
    pub sensing_ref_gain: f64,
    pub target_rcs_m2: Rcs,
    /// Clutter scattering coefficients are drawn from U[0, scale * target gain].
    pub clutter_coefficient_scale: f64,
    /// Relative slack of the clutter ellipse over the target's bistatic range.
    pub clutter_ellipse_slack: f64,
    pub sensing_threshold_db: f64,
    /// f_1
    pub sensing_penalty_weight: f64,
    /// f_2
    pub speed_penalty_weight: f64,
    pub collision_penalty: f64,
    /// Upper bound on Γ_thr/Γ in the sensing penalty.
    pub sensing_penalty_cap: f64,
    /// T_c
    pub assoc_interval_slots: usize,
    /// T
    pub episode_length_slots: usize,
    /// ξ
    pub max_uav_load: usize,
    /// T_u
    pub mobility_resample_interval_slots: usize,
    /// D_off
    pub max_array_offset_m: f64,
    /// D_min
    pub min_antenna_spacing_m: f64,
    /// ι, angle between the hovering array and the x axis.
    pub array_heading_deg: f64,
    /// Roll, pitch and yaw are drawn from U[-jitter, jitter] every slot.
    pub attitude_jitter_deg: f64,
    pub hdbscan_min_cluster_size: usize,
    pub hdbscan_min_samples: usize,
    pub hdbscan_epsilon_m: f64,
    /// Enforce sum_k ρ_{n,k}^2 <= 1 per UAV in addition to the per-link limit.
    pub total_power_cap: bool,
    /// Quantize power ratios to this grid; 0 keeps them continuous.
    pub power_quantization_step: f64,
    pub interference_channel: InterferenceChannel,
    /// Magnitude of the agent's beam correction relative to the steering beam.
    pub beam_residual_scale: f64,
    pub rng_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            area_side_m: 500.0,
            uav_count: 3,
            comm_user_count: 9,
            target_count: 3,
            antenna_count: 4,
            altitude_min_m: 80.0,
            altitude_max_m: 120.0,
            uav_xy_min_m: 0.0,
            uav_xy_max_m: 500.0,
            uav_max_speed_mps: 4.0,
            user_max_speed_mps: 0.8,
            collision_distance_m: 20.0,
            max_tx_power_dbm: 30.0,
            bandwidth_hz: 20e6,
            carrier_frequency_hz: 2.4e9,
            noise_psd_dbm_per_hz: -110.0,
            ref_channel_gain_db: -30.0,
            sensing_ref_gain: 25.0,
            target_rcs_m2: Rcs::Uniform(1.0),
            clutter_coefficient_scale: 0.3,
            clutter_ellipse_slack: 0.1,
            sensing_threshold_db: 10.0,
            sensing_penalty_weight: 1.0,
            speed_penalty_weight: 1.0,
            collision_penalty: 5.0,
            sensing_penalty_cap: 100.0,
            assoc_interval_slots: 10,
            episode_length_slots: 200,
            max_uav_load: 4,
            mobility_resample_interval_slots: 20,
            max_array_offset_m: 0.625,
            min_antenna_spacing_m: 0.0625,
            array_heading_deg: 0.0,
            attitude_jitter_deg: 5.0,
            hdbscan_min_cluster_size: 2,
            hdbscan_min_samples: 2,
            hdbscan_epsilon_m: 50.0,
            total_power_cap: false,
            power_quantization_step: 0.0,
            interference_channel: InterferenceChannel::Receiver,
            beam_residual_scale: 0.5,
            rng_seed: 0,
        }
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn dbm_to_watts(dbm: f64) -> f64 {
    db_to_linear(dbm - 30.0)
}

/// Reads a config file and validates it.
pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)?;
    ScenarioConfig::from_toml_str(&text)
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        Self::from_toml_with_overrides(text, &[])
    }

    /// Parses `text`, then applies `key=value` overrides before validation.
    pub fn from_toml_with_overrides(text: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        for (key, raw) in overrides {
            table.insert(key.clone(), parse_override_value(raw));
        }
        let config: ScenarioConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self> {
        let text = toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_toml_with_overrides(&text, overrides)
    }

    /// Every key accepted in a config file.
    pub fn keys() -> Vec<String> {
        match toml::Table::try_from(ScenarioConfig::default()) {
            Ok(table) => table.keys().cloned().collect(),
            Err(_) => Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |field: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::config(field, format!("must be positive and finite, got {v}")))
            }
        };
        if self.uav_count < 2 {
            return Err(Error::config("uav_count", "bistatic sensing needs at least 2 UAVs"));
        }
        if self.antenna_count == 0 {
            return Err(Error::config("antenna_count", "must be at least 1"));
        }
        if self.comm_user_count == 0 {
            return Err(Error::config("comm_user_count", "must be at least 1"));
        }
        if !(self.altitude_min_m <= self.altitude_max_m) {
            return Err(Error::config("altitude_min_m", "altitude bounds inverted"));
        }
        if self.altitude_min_m <= 0.0 {
            return Err(Error::config("altitude_min_m", "UAVs must fly above ground"));
        }
        if !(self.uav_xy_min_m < self.uav_xy_max_m) {
            return Err(Error::config("uav_xy_min_m", "horizontal bounds inverted"));
        }
        positive("area_side_m", self.area_side_m)?;
        positive("uav_max_speed_mps", self.uav_max_speed_mps)?;
        if !(self.user_max_speed_mps >= 0.0) {
            return Err(Error::config("user_max_speed_mps", "must be non-negative"));
        }
        if !(self.collision_distance_m >= 0.0) {
            return Err(Error::config("collision_distance_m", "must be non-negative"));
        }
        if !self.max_tx_power_dbm.is_finite() {
            return Err(Error::config("max_tx_power_dbm", "must be finite"));
        }
        positive("bandwidth_hz", self.bandwidth_hz)?;
        positive("carrier_frequency_hz", self.carrier_frequency_hz)?;
        if !self.noise_psd_dbm_per_hz.is_finite() {
            return Err(Error::config("noise_psd_dbm_per_hz", "must be finite"));
        }
        if !self.ref_channel_gain_db.is_finite() {
            return Err(Error::config("ref_channel_gain_db", "must be finite"));
        }
        positive("sensing_ref_gain", self.sensing_ref_gain)?;
        match &self.target_rcs_m2 {
            Rcs::Uniform(v) => positive("target_rcs_m2", *v)?,
            Rcs::PerTarget(values) => {
                if values.len() != self.target_count {
                    return Err(Error::config(
                        "target_rcs_m2",
                        format!("expected {} values, got {}", self.target_count, values.len()),
                    ));
                }
                for v in values {
                    positive("target_rcs_m2", *v)?;
                }
            }
        }
        if !(self.clutter_coefficient_scale >= 0.0) {
            return Err(Error::config("clutter_coefficient_scale", "must be non-negative"));
        }
        if !(self.clutter_ellipse_slack >= 0.0) {
            return Err(Error::config("clutter_ellipse_slack", "must be non-negative"));
        }
        if !self.sensing_threshold_db.is_finite() {
            return Err(Error::config("sensing_threshold_db", "must be finite"));
        }
        for (field, v) in [
            ("sensing_penalty_weight", self.sensing_penalty_weight),
            ("speed_penalty_weight", self.speed_penalty_weight),
            ("collision_penalty", self.collision_penalty),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(field, "penalty weights must be non-negative"));
            }
        }
        positive("sensing_penalty_cap", self.sensing_penalty_cap)?;
        if self.assoc_interval_slots == 0 {
            return Err(Error::config("assoc_interval_slots", "must be at least 1"));
        }
        if self.episode_length_slots == 0 {
            return Err(Error::config("episode_length_slots", "must be at least 1"));
        }
        if self.mobility_resample_interval_slots == 0 {
            return Err(Error::config("mobility_resample_interval_slots", "must be at least 1"));
        }
        if self.max_uav_load == 0 {
            return Err(Error::config("max_uav_load", "must be at least 1"));
        }
        if self.comm_user_count > self.uav_count * self.max_uav_load {
            return Err(Error::config(
                "max_uav_load",
                format!(
                    "{} UAVs with load {} cannot serve {} users",
                    self.uav_count, self.max_uav_load, self.comm_user_count
                ),
            ));
        }
        positive("max_array_offset_m", self.max_array_offset_m)?;
        positive("min_antenna_spacing_m", self.min_antenna_spacing_m)?;
        if (self.antenna_count as f64 - 1.0) * self.min_antenna_spacing_m > 2.0 * self.max_array_offset_m {
            return Err(Error::config(
                "antenna_count",
                "antennas do not fit on the array segment at the minimum spacing",
            ));
        }
        if !(self.attitude_jitter_deg >= 0.0 && self.attitude_jitter_deg < 90.0) {
            return Err(Error::config("attitude_jitter_deg", "must lie in [0, 90)"));
        }
        if self.hdbscan_min_cluster_size < 2 {
            return Err(Error::config("hdbscan_min_cluster_size", "must be at least 2"));
        }
        if self.hdbscan_min_samples < 1 {
            return Err(Error::config("hdbscan_min_samples", "must be at least 1"));
        }
        if !(self.hdbscan_epsilon_m >= 0.0) {
            return Err(Error::config("hdbscan_epsilon_m", "must be non-negative"));
        }
        if !(self.power_quantization_step >= 0.0 && self.power_quantization_step <= 1.0) {
            return Err(Error::config("power_quantization_step", "must lie in [0, 1]"));
        }
        if !(self.beam_residual_scale >= 0.0 && self.beam_residual_scale.is_finite()) {
            return Err(Error::config("beam_residual_scale", "must be non-negative"));
        }
        Ok(())
    }

    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency_hz
    }

    /// P_max in watts.
    pub fn max_tx_power_w(&self) -> f64 {
        dbm_to_watts(self.max_tx_power_dbm)
    }

    /// Noise power over the whole band, watts.
    pub fn noise_power_w(&self) -> f64 {
        dbm_to_watts(self.noise_psd_dbm_per_hz) * self.bandwidth_hz
    }

    /// β_0, linear.
    pub fn ref_channel_gain(&self) -> f64 {
        db_to_linear(self.ref_channel_gain_db)
    }

    /// Γ_thr, linear.
    pub fn sensing_threshold(&self) -> f64 {
        db_to_linear(self.sensing_threshold_db)
    }

    pub fn target_rcs(&self, target: usize) -> f64 {
        match &self.target_rcs_m2 {
            Rcs::Uniform(v) => *v,
            Rcs::PerTarget(values) => values[target],
        }
    }

    pub fn node_count(&self) -> usize {
        self.comm_user_count + self.target_count
    }

    pub fn array_heading_rad(&self) -> f64 {
        self.array_heading_deg.to_radians().rem_euclid(2.0 * PI)
    }

    pub fn uav_lower_bound(&self) -> Vector3<f64> {
        Vector3::new(self.uav_xy_min_m, self.uav_xy_min_m, self.altitude_min_m)
    }

    pub fn uav_upper_bound(&self) -> Vector3<f64> {
        Vector3::new(self.uav_xy_max_m, self.uav_xy_max_m, self.altitude_max_m)
    }

    /// Commented config file with the current values, loadable by [`load_config`].
    pub fn to_documented_toml(&self) -> String {
        let table = match toml::Table::try_from(self) {
            Ok(t) => t,
            Err(e) => return format!("# failed to serialize config: {e}\n"),
        };
        let mut out = String::from("# Scenario configuration. Units are given per key.\n");
        for (key, doc) in FIELD_DOCS {
            if let Some(value) = table.get(*key) {
                out.push_str(&format!("# {doc}\n{key} = {value}\n"));
            }
        }
        out
    }
}

const FIELD_DOCS: &[(&str, &str)] = &[
    ("area_side_m", "side of the square service area [m]"),
    ("uav_count", "number of UAVs N"),
    ("comm_user_count", "number of communication users K_c"),
    ("target_count", "number of sensing targets K_s"),
    ("antenna_count", "antennas per UAV array M"),
    ("altitude_min_m", "lowest UAV altitude [m]"),
    ("altitude_max_m", "highest UAV altitude [m]"),
    ("uav_xy_min_m", "lower horizontal UAV bound on x and y [m]"),
    ("uav_xy_max_m", "upper horizontal UAV bound on x and y [m]"),
    ("uav_max_speed_mps", "UAV maximum speed V [m/s], one slot = 1 s"),
    ("user_max_speed_mps", "ground node maximum speed [m/s]"),
    ("collision_distance_m", "minimum UAV separation D_0 [m]"),
    ("max_tx_power_dbm", "maximum transmit power P_max [dBm]"),
    ("bandwidth_hz", "bandwidth B [Hz]"),
    ("carrier_frequency_hz", "carrier frequency [Hz]; wavelength = c / f"),
    ("noise_psd_dbm_per_hz", "noise power spectral density [dBm/Hz]"),
    ("ref_channel_gain_db", "channel power gain beta_0 at 1 m [dB]"),
    ("sensing_ref_gain", "bistatic reference gain kappa [linear]"),
    ("target_rcs_m2", "radar cross-section per target [m^2], scalar or list"),
    ("clutter_coefficient_scale", "clutter coefficient drawn from U[0, scale * target gain]"),
    ("clutter_ellipse_slack", "relative slack of the clutter ellipse"),
    ("sensing_threshold_db", "sensing SINR threshold Gamma_thr [dB]"),
    ("sensing_penalty_weight", "penalty weight f_1"),
    ("speed_penalty_weight", "penalty weight f_2"),
    ("collision_penalty", "penalty per UAV pair closer than D_0 per slot"),
    ("sensing_penalty_cap", "cap on Gamma_thr / Gamma in the sensing penalty"),
    ("assoc_interval_slots", "re-clustering interval T_c [slots]"),
    ("episode_length_slots", "episode length T [slots]"),
    ("max_uav_load", "maximum communication users per UAV xi"),
    ("mobility_resample_interval_slots", "ground node speed/heading resampling interval T_u [slots]"),
    ("max_array_offset_m", "maximum element offset D_off [m]"),
    ("min_antenna_spacing_m", "minimum element spacing D_min [m]"),
    ("array_heading_deg", "array heading iota relative to the x axis [deg]"),
    ("attitude_jitter_deg", "per-slot roll/pitch/yaw deviation bound [deg]"),
    ("hdbscan_min_cluster_size", "HDBSCAN min_cluster_size"),
    ("hdbscan_min_samples", "HDBSCAN min_samples"),
    ("hdbscan_epsilon_m", "HDBSCAN cluster selection epsilon [m]"),
    ("total_power_cap", "also cap the sum of squared power ratios per UAV at 1"),
    ("power_quantization_step", "power ratio grid step, 0 = continuous"),
    ("interference_channel", "\"receiver\" or \"literal\" interference channel"),
    ("beam_residual_scale", "scale of the agent's beam correction"),
    ("rng_seed", "base random seed"),
];

fn parse_override_value(raw: &str) -> toml::Value {
    let probe = format!("v = {raw}");
    match probe.parse::<toml::Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| toml::Value::String(raw.to_string())),
        Err(_) => toml::Value::String(raw.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    CommUser,
    SensingTarget,
}

/// A communication user or a sensing target on the ground (z = 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundNode {
    pub id: usize,
    pub kind: NodeKind,
    pub position: Vector3<f64>,
    pub velocity: Vector2<f64>,
    pub heading: f64,
}

impl GroundNode {
    pub fn speed(&self) -> f64 {
        self.velocity.norm()
    }

    pub fn ground(&self) -> Vector2<f64> {
        Vector2::new(self.position.x, self.position.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UavState {
    pub position: Vector3<f64>,
    pub attitude: Attitude,
    pub array: ArrayGeometry,
}

fn draw_velocity<R: Rng + ?Sized>(rng: &mut R, max_speed: f64) -> (Vector2<f64>, f64) {
    let speed = if max_speed > 0.0 {
        rng.random_range(0.0..=max_speed)
    } else {
        0.0
    };
    let heading = rng.random_range(0.0..2.0 * PI);
    (Vector2::new(speed * heading.cos(), speed * heading.sin()), heading)
}

/// Places `K_c` users then `K_s` targets uniformly in the area with random velocities.
pub fn spawn_ground_nodes<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Vec<GroundNode> {
    let side = config.area_side_m;
    (0..config.node_count())
        .map(|id| {
            let kind = if id < config.comm_user_count {
                NodeKind::CommUser
            } else {
                NodeKind::SensingTarget
            };
            let x = rng.random_range(0.0..=side);
            let y = rng.random_range(0.0..=side);
            let (velocity, heading) = draw_velocity(rng, config.user_max_speed_mps);
            GroundNode {
                id,
                kind,
                position: Vector3::new(x, y, 0.0),
                velocity,
                heading,
            }
        })
        .collect()
}

/// Reflects `x` into `[0, side]`, returning whether the motion direction flips.
fn reflect(x: f64, side: f64) -> (f64, bool) {
    if side <= 0.0 {
        return (0.0, false);
    }
    let m = x.rem_euclid(2.0 * side);
    if m <= side {
        (m, false)
    } else {
        (2.0 * side - m, true)
    }
}

/// Advances every node by one slot. Speed and heading are resampled on slots
/// that are positive multiples of `T_u`; nodes bounce off the area edges.
pub fn step_user_mobility<R: Rng + ?Sized>(
    nodes: &mut [GroundNode],
    slot_index: usize,
    config: &ScenarioConfig,
    rng: &mut R,
) {
    let side = config.area_side_m;
    let resample = slot_index > 0 && slot_index % config.mobility_resample_interval_slots == 0;
    for node in nodes.iter_mut() {
        if resample {
            let (velocity, heading) = draw_velocity(rng, config.user_max_speed_mps);
            node.velocity = velocity;
            node.heading = heading;
        }
        let (x, flip_x) = reflect(node.position.x + node.velocity.x, side);
        let (y, flip_y) = reflect(node.position.y + node.velocity.y, side);
        if flip_x {
            node.velocity.x = -node.velocity.x;
        }
        if flip_y {
            node.velocity.y = -node.velocity.y;
        }
        if flip_x || flip_y {
            node.heading = node.velocity.y.atan2(node.velocity.x).rem_euclid(2.0 * PI);
        }
        node.position = Vector3::new(x, y, 0.0);
    }
}

/// Result of one commanded UAV move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionOutcome {
    pub commanded_speed: f64,
    pub executed_speed: f64,
    pub displacement: Vector3<f64>,
}

impl MotionOutcome {
    pub fn overspeed(&self, max_speed: f64) -> bool {
        self.commanded_speed > max_speed
    }
}

/// Moves a UAV by `speed * direction`: speed is clamped to `V`, then the
/// resulting position is clamped into the flight box.
pub fn apply_uav_motion(
    uav: &mut UavState,
    speed: f64,
    direction: Vector3<f64>,
    config: &ScenarioConfig,
) -> Result<MotionOutcome> {
    if !speed.is_finite() || speed < 0.0 {
        return Err(Error::InvalidInput(format!("speed must be finite and non-negative, got {speed}")));
    }
    let norm = direction.norm();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-6 {
        return Err(Error::InvalidInput(format!("direction must be a unit vector, norm = {norm}")));
    }
    let executed = speed.min(config.uav_max_speed_mps);
    let target = uav.position + direction * executed;
    let clamped = clamp_to_box(target, &config.uav_lower_bound(), &config.uav_upper_bound());
    let displacement = clamped - uav.position;
    uav.position = clamped;
    Ok(MotionOutcome {
        commanded_speed: speed,
        executed_speed: displacement.norm(),
        displacement,
    })
}

pub fn clamp_to_box(p: Vector3<f64>, lo: &Vector3<f64>, hi: &Vector3<f64>) -> Vector3<f64> {
    Vector3::new(p.x.clamp(lo.x, hi.x), p.y.clamp(lo.y, hi.y), p.z.clamp(lo.z, hi.z))
}

/// All pairs `(m, n)` with `m < n` closer than `min_distance`.
pub fn check_pairwise_separation(positions: &[Vector3<f64>], min_distance: f64) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for m in 0..positions.len() {
        for n in m + 1..positions.len() {
            if (positions[m] - positions[n]).norm() < min_distance {
                pairs.push((m, n));
            }
        }
    }
    pairs
}

/// Draws a per-slot attitude deviation around the configured array heading.
pub fn sample_attitude<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Attitude {
    let jitter = config.attitude_jitter_deg.to_radians();
    let mut draw = || {
        if jitter > 0.0 {
            rng.random_range(-jitter..=jitter)
        } else {
            0.0
        }
    };
    let roll = draw();
    let pitch = draw();
    let yaw = draw();
    Attitude::new(roll, pitch, yaw, config.array_heading_rad())
}
