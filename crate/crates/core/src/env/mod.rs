//! Slot-level MDP: observation encoding, action decoding, reward and the
//! step loop tying the physical model together.

mod action;
mod reward;
mod trace;

use nalgebra::{Vector2, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use action::{
    decode_action, decode_beam, decode_beams, decode_motion, decode_offsets, ActionLayout, DecodedAction,
    MotionCommand,
};
pub use reward::{compute_reward, sensing_penalty, RewardBreakdown, SlotMetrics};
pub use trace::{read_trace, write_trace, ClusterEvent, SlotRecord};

use crate::array::ArrayGeometry;
use crate::assoc::{AssociationMatrix, AssociationMode, Associator};
use crate::channel::{comm_sinrs, rate, BeamPlan, LinkBudget, LinkTable};
use crate::error::{Error, Result};
use crate::scenario::{
    apply_uav_motion, check_pairwise_separation, sample_attitude, spawn_ground_nodes, step_user_mobility, GroundNode,
    ScenarioConfig, UavState,
};
use crate::sensing::{bistatic_gain, clutter_members, select_receiver, sensing_sinr, ClutterSet, Scatterer, SensingLink};

const STREAM_PLACEMENT: u64 = 1;
const STREAM_MOBILITY: u64 = 2;
const STREAM_ATTITUDE: u64 = 3;
const STREAM_CLUTTER: u64 = 4;
const MAX_PLACEMENT_TRIES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrayMode {
    Movable,
    /// Offsets frozen at the uniform layout; the offset head is ignored.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryMode {
    Learned,
    /// Lawnmower path at mid altitude; the motion head is ignored.
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvOptions {
    pub array: ArrayMode,
    pub association: AssociationMode,
    pub trajectory: TrajectoryMode,
}

impl Default for EnvOptions {
    fn default() -> Self {
        Self {
            array: ArrayMode::Movable,
            association: AssociationMode::Clustering,
            trajectory: TrajectoryMode::Learned,
        }
    }
}

/// Boustrophedon waypoints over one vertical strip of the UAV box per UAV.
#[derive(Debug, Clone, PartialEq)]
pub struct Lawnmower {
    waypoints: Vec<Vector3<f64>>,
    next: usize,
}

impl Lawnmower {
    pub fn for_uav(config: &ScenarioConfig, uav: usize) -> Self {
        let (lo, hi) = (config.uav_xy_min_m, config.uav_xy_max_m);
        let width = (hi - lo) / config.uav_count as f64;
        let x0 = lo + width * uav as f64;
        let (xa, xb) = (x0 + width / 4.0, x0 + 3.0 * width / 4.0);
        let margin = width / 4.0;
        let (ya, yb) = (lo + margin, hi - margin);
        let z = 0.5 * (config.altitude_min_m + config.altitude_max_m);
        let (ya, yb) = if uav % 2 == 0 { (ya, yb) } else { (yb, ya) };
        Self {
            waypoints: vec![
                Vector3::new(xa, ya, z),
                Vector3::new(xa, yb, z),
                Vector3::new(xb, yb, z),
                Vector3::new(xb, ya, z),
            ],
            next: 1,
        }
    }

    pub fn start(&self) -> Vector3<f64> {
        self.waypoints[0]
    }

    pub fn waypoints(&self) -> &[Vector3<f64>] {
        &self.waypoints
    }

    /// Heads for the next waypoint at speed `V`, stopping on it exactly.
    pub fn command(&mut self, position: &Vector3<f64>, max_speed: f64) -> MotionCommand {
        let mut delta = self.waypoints[self.next] - position;
        if delta.norm() < 1e-9 {
            self.next = (self.next + 1) % self.waypoints.len();
            delta = self.waypoints[self.next] - position;
        }
        let dist = delta.norm();
        if dist <= max_speed {
            self.next = (self.next + 1) % self.waypoints.len();
        }
        MotionCommand {
            commanded_speed: dist.min(max_speed),
            direction: (dist > 1e-12).then(|| delta / dist),
        }
    }
}

/// Outcome of one slot.
#[derive(Debug, Clone)]
pub struct StepResult {
    pub observation: Vec<f64>,
    pub reward: RewardBreakdown,
    pub done: bool,
    pub record: SlotRecord,
}

/// Number of observation features for a configuration.
pub fn observation_len(config: &ScenarioConfig) -> usize {
    let (n, k, m) = (config.uav_count, config.node_count(), config.antenna_count);
    2 * n * k * m + config.target_count + 3 * n + 2 * k + n * m + 2 * n + k + 1
}

#[derive(Debug, Clone)]
pub struct Env {
    config: ScenarioConfig,
    options: EnvOptions,
    layout: ActionLayout,
    budget: LinkBudget,
    mobility_rng: ChaCha8Rng,
    attitude_rng: ChaCha8Rng,
    uavs: Vec<UavState>,
    nodes: Vec<GroundNode>,
    associator: Associator,
    lawnmowers: Vec<Lawnmower>,
    clutter_draws: Vec<f64>,
    links: LinkTable,
    slot: usize,
    done: bool,
    seed: u64,
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

fn axes(uavs: &[UavState]) -> Vec<Vector3<f64>> {
    uavs.iter().map(|u| u.attitude.compensated_axis()).collect()
}

impl Env {
    /// Builds the environment and resets it with `config.rng_seed`.
    pub fn new(config: ScenarioConfig, options: EnvOptions) -> Result<Self> {
        config.validate()?;
        let seed = config.rng_seed;
        let layout = ActionLayout::from_config(&config);
        let budget = LinkBudget::from_config(&config);
        let associator = Associator::new(&config, options.association);
        let mut env = Self {
            layout,
            budget,
            mobility_rng: stream(seed, STREAM_MOBILITY),
            attitude_rng: stream(seed, STREAM_ATTITUDE),
            uavs: Vec::new(),
            nodes: Vec::new(),
            associator,
            lawnmowers: Vec::new(),
            clutter_draws: Vec::new(),
            links: LinkTable::compute(&[], &[], &[], 1.0)?,
            slot: 0,
            done: false,
            seed,
            config,
            options,
        };
        env.reset(seed)?;
        Ok(env)
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn options(&self) -> EnvOptions {
        self.options
    }

    pub fn layout(&self) -> &ActionLayout {
        &self.layout
    }

    pub fn action_dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn observation_dim(&self) -> usize {
        observation_len(&self.config)
    }

    pub fn uavs(&self) -> &[UavState] {
        &self.uavs
    }

    pub fn nodes(&self) -> &[GroundNode] {
        &self.nodes
    }

    pub fn slot(&self) -> usize {
        self.slot
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn association(&self) -> &AssociationMatrix {
        self.associator.matrix().expect("association computed on reset")
    }

    pub fn associator(&self) -> &Associator {
        &self.associator
    }

    /// Starts a new episode; every random stream is derived from `seed`.
    pub fn reset(&mut self, seed: u64) -> Result<Vec<f64>> {
        let c = &self.config;
        self.seed = seed;
        let mut placement = stream(seed, STREAM_PLACEMENT);
        self.mobility_rng = stream(seed, STREAM_MOBILITY);
        self.attitude_rng = stream(seed, STREAM_ATTITUDE);
        let mut clutter_rng = stream(seed, STREAM_CLUTTER);

        self.nodes = spawn_ground_nodes(c, &mut placement);
        let positions = match self.options.trajectory {
            TrajectoryMode::Learned => place_uavs(c, &mut placement)?,
            TrajectoryMode::Fixed => {
                self.lawnmowers = (0..c.uav_count).map(|n| Lawnmower::for_uav(c, n)).collect();
                self.lawnmowers.iter().map(Lawnmower::start).collect()
            }
        };
        let base = ArrayGeometry::uniform(c.antenna_count, c.max_array_offset_m, c.min_antenna_spacing_m)?;
        self.uavs = positions
            .into_iter()
            .map(|position| UavState {
                position,
                attitude: sample_attitude(c, &mut self.attitude_rng),
                array: base.clone(),
            })
            .collect();
        self.clutter_draws = (0..c.node_count()).map(|_| clutter_rng.random_range(0.0..=1.0)).collect();
        self.associator = Associator::new(c, self.options.association);
        let positions = self.uav_positions();
        self.associator.maybe_recluster(0, &positions, &self.nodes)?;
        self.links = LinkTable::compute(&self.uavs, &axes(&self.uavs), &self.nodes, c.wavelength_m())?;
        self.slot = 0;
        self.done = false;
        self.observe()
    }

    fn uav_positions(&self) -> Vec<Vector3<f64>> {
        self.uavs.iter().map(|u| u.position).collect()
    }

    /// Sensing link (transmitter = serving UAV) and clutter per target.
    fn sensing_links(&self) -> Result<Vec<(SensingLink, ClutterSet)>> {
        let c = &self.config;
        let assoc = self.association();
        let positions = self.uav_positions();
        let (uav_cluster, sizes) = self.associator.cluster_layout(c.uav_count);
        (0..c.target_count)
            .map(|i| {
                let node = c.comm_user_count + i;
                let target = &self.nodes[node].position;
                let tx = assoc.owner(node)?;
                let rx = select_receiver(tx, target, &positions, &uav_cluster, &sizes)?;
                let gain = bistatic_gain(
                    c.sensing_ref_gain,
                    c.target_rcs(i),
                    self.links.distance(tx, node),
                    self.links.distance(rx, node),
                );
                let link = SensingLink::new(
                    tx,
                    rx,
                    node,
                    gain,
                    self.links.steering(tx, node).to_vec(),
                    self.links.steering(rx, node).to_vec(),
                )?;
                let users = self.nodes[..c.comm_user_count].iter().map(|g| (g.id, &g.position));
                let members = clutter_members(&positions[tx], &positions[rx], node, target, users, c.clutter_ellipse_slack);
                let clutter = ClutterSet {
                    members: members
                        .into_iter()
                        .map(|k| Scatterer {
                            id: k,
                            coefficient: self.clutter_draws[k] * c.clutter_coefficient_scale * gain,
                            a_tx: self.links.steering(tx, k).to_vec(),
                            a_rx: self.links.steering(rx, k).to_vec(),
                        })
                        .collect(),
                };
                Ok((link, clutter))
            })
            .collect()
    }

    fn metrics(&self, beams: &BeamPlan, overspeed: Vec<bool>) -> Result<(SlotMetrics, Vec<SensingLink>)> {
        let c = &self.config;
        let comm_sinr = comm_sinrs(c.comm_user_count, &self.links, beams, self.association(), &self.budget)?;
        let mut sensing = Vec::with_capacity(c.target_count);
        let mut links = Vec::with_capacity(c.target_count);
        for (link, clutter) in self.sensing_links()? {
            let rho = beams.rho(link.tx, link.target);
            let power = rho * rho * self.budget.max_power;
            let g = if power > 0.0 {
                sensing_sinr(&link, beams.beam(link.tx, link.target), power, &clutter, self.budget.noise_power)
            } else {
                0.0
            };
            sensing.push(g);
            links.push(link);
        }
        let metrics = SlotMetrics {
            comm_sinr,
            sensing_sinr: sensing,
            collisions: check_pairwise_separation(&self.uav_positions(), c.collision_distance_m),
            overspeed,
        };
        Ok((metrics, links))
    }

    /// Advances one slot.
    pub fn step(&mut self, raw: &[f64]) -> Result<StepResult> {
        if self.done {
            return Err(Error::EpisodeDone);
        }
        if raw.len() != self.layout.dim() {
            return Err(Error::InvalidInput(format!(
                "action has {} entries, expected {}",
                raw.len(),
                self.layout.dim()
            )));
        }
        let t = self.slot + 1;
        let v_max = self.config.uav_max_speed_mps;

        let commands = match self.options.trajectory {
            TrajectoryMode::Learned => decode_motion(raw, &self.layout, v_max),
            TrajectoryMode::Fixed => self
                .uavs
                .iter()
                .zip(self.lawnmowers.iter_mut())
                .map(|(u, l)| l.command(&u.position, v_max))
                .collect(),
        };
        let mut overspeed = Vec::with_capacity(commands.len());
        for (uav, cmd) in self.uavs.iter_mut().zip(&commands) {
            let (speed, dir) = match cmd.direction {
                Some(d) => (cmd.commanded_speed, d),
                None => (0.0, Vector3::x()),
            };
            let outcome = apply_uav_motion(uav, speed, dir, &self.config)?;
            overspeed.push(outcome.overspeed(v_max));
        }
        if self.options.array == ArrayMode::Movable {
            let geometries = decode_offsets(raw, &self.layout, &self.config)?;
            for (uav, g) in self.uavs.iter_mut().zip(geometries) {
                uav.array = g;
            }
        }
        for uav in &mut self.uavs {
            uav.attitude = sample_attitude(&self.config, &mut self.attitude_rng);
        }
        step_user_mobility(&mut self.nodes, t, &self.config, &mut self.mobility_rng);
        let positions = self.uav_positions();
        let reclustered = self.associator.maybe_recluster(t, &positions, &self.nodes)?;
        self.links = LinkTable::compute(&self.uavs, &axes(&self.uavs), &self.nodes, self.config.wavelength_m())?;
        let beams = decode_beams(
            raw,
            &self.layout,
            self.association(),
            &self.links,
            self.config.comm_user_count,
            &self.config,
        )?;
        let (metrics, sensing_links) = self.metrics(&beams, overspeed)?;
        let reward = compute_reward(&metrics, &self.config);

        self.slot = t;
        self.done = t >= self.config.episode_length_slots;
        let record = self.record(t, &metrics, &sensing_links, &beams, reward, reclustered)?;
        Ok(StepResult {
            observation: self.observe()?,
            reward,
            done: self.done,
            record,
        })
    }

    /// Reward of a decision on the current, frozen world: positions,
    /// attitudes, users and association stay as they are and only the
    /// offset, beam and power heads are applied.
    pub fn evaluate_frozen(&self, raw: &[f64]) -> Result<(RewardBreakdown, SlotMetrics)> {
        if raw.len() != self.layout.dim() {
            return Err(Error::InvalidInput("action length mismatch".into()));
        }
        let mut scratch = self.clone();
        if self.options.array == ArrayMode::Movable {
            for (uav, g) in scratch.uavs.iter_mut().zip(decode_offsets(raw, &self.layout, &self.config)?) {
                uav.array = g;
            }
            scratch.links = LinkTable::compute(&scratch.uavs, &axes(&scratch.uavs), &scratch.nodes, self.config.wavelength_m())?;
        }
        let beams = decode_beams(
            raw,
            &self.layout,
            scratch.association(),
            &scratch.links,
            self.config.comm_user_count,
            &self.config,
        )?;
        let (metrics, _) = scratch.metrics(&beams, vec![false; self.config.uav_count])?;
        Ok((compute_reward(&metrics, &self.config), metrics))
    }

    fn record(
        &self,
        t: usize,
        metrics: &SlotMetrics,
        sensing: &[SensingLink],
        beams: &BeamPlan,
        reward: RewardBreakdown,
        reclustered: bool,
    ) -> Result<SlotRecord> {
        let bandwidth = self.config.bandwidth_hz;
        let rates = metrics
            .comm_sinr
            .iter()
            .map(|&g| rate(g, bandwidth))
            .collect::<Result<Vec<_>>>()?;
        let owners = self.association().owners()?;
        let clusters = match (reclustered, self.associator.assignment()) {
            (true, Some(a)) => Some(ClusterEvent::from_assignment(t, a)),
            _ => None,
        };
        Ok(SlotRecord {
            t,
            uav_positions: self.uavs.iter().map(|u| [u.position.x, u.position.y, u.position.z]).collect(),
            offsets: self.uavs.iter().map(|u| u.array.offsets().to_vec()).collect(),
            user_positions: self.nodes.iter().map(|g| [g.position.x, g.position.y]).collect(),
            owners: owners.clone(),
            sensing_tx: sensing.iter().map(|s| s.tx).collect(),
            sensing_rx: sensing.iter().map(|s| s.rx).collect(),
            sensing_sinr: metrics.sensing_sinr.clone(),
            user_rates_bps: rates,
            power_ratios: owners.iter().enumerate().map(|(k, &n)| beams.rho(n, k)).collect(),
            collisions: metrics.collisions.clone(),
            reward,
            reclustered,
            clusters,
        })
    }

    /// Current observation, every feature in `[-1, 1]`.
    pub fn observe(&self) -> Result<Vec<f64>> {
        let c = &self.config;
        let mut obs = Vec::with_capacity(self.observation_dim());
        let h_scale = c.ref_channel_gain().sqrt() / c.altitude_min_m;
        let amp = |d: f64| (c.ref_channel_gain() / (d * d)).sqrt() / h_scale;
        for n in 0..c.uav_count {
            for k in 0..c.node_count() {
                let a = amp(self.links.distance(n, k));
                for z in self.links.steering(n, k) {
                    obs.push(z.re * a);
                    obs.push(z.im * a);
                }
            }
        }
        let (g_lo, g_hi) = self.sensing_gain_range();
        for (link, _) in self.sensing_links()? {
            let x = (link.gain.ln() - g_lo) / (g_hi - g_lo);
            obs.push((2.0 * x - 1.0).clamp(-1.0, 1.0));
        }
        let (lo, hi) = (c.uav_lower_bound(), c.uav_upper_bound());
        for u in &self.uavs {
            for i in 0..3 {
                obs.push(affine(u.position[i], lo[i], hi[i]));
            }
        }
        let side = c.area_side_m;
        for g in &self.nodes {
            obs.push(affine(g.position.x, 0.0, side));
            obs.push(affine(g.position.y, 0.0, side));
        }
        for u in &self.uavs {
            obs.extend(u.array.offsets().iter().map(|r| r / c.max_array_offset_m));
        }
        let (uav_cluster, _) = self.associator.cluster_layout(c.uav_count);
        let centroids = self.associator.assignment().map(|a| &a.clusters.centroids);
        for cl in &uav_cluster {
            let p = match (cl, centroids) {
                (Some(i), Some(cs)) => cs[*i],
                _ => Vector2::new(side / 2.0, side / 2.0),
            };
            obs.push(affine(p.x, 0.0, side));
            obs.push(affine(p.y, 0.0, side));
        }
        for owner in self.association().owners()? {
            obs.push(affine(owner as f64, 0.0, (c.uav_count - 1) as f64));
        }
        obs.push(affine(self.slot as f64, 0.0, c.episode_length_slots as f64));
        Ok(obs)
    }

    /// Log-gain bounds over all feasible geometries.
    fn sensing_gain_range(&self) -> (f64, f64) {
        let c = &self.config;
        let rcs: Vec<f64> = (0..c.target_count).map(|i| c.target_rcs(i)).collect();
        let rcs_max = rcs.iter().copied().fold(f64::MIN_POSITIVE, f64::max);
        let rcs_min = rcs.iter().copied().fold(f64::INFINITY, f64::min).min(rcs_max);
        let span = c.uav_xy_max_m.max(c.area_side_m) - c.uav_xy_min_m.min(0.0);
        let d_max = (2.0 * span * span + c.altitude_max_m * c.altitude_max_m).sqrt();
        let hi = bistatic_gain(c.sensing_ref_gain, rcs_max, c.altitude_min_m, c.altitude_min_m).ln();
        let lo = bistatic_gain(c.sensing_ref_gain, rcs_min, d_max, d_max).ln();
        (lo, hi)
    }
}

fn affine(x: f64, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        2.0 * (x - lo) / (hi - lo) - 1.0
    } else {
        0.0
    }
}

/// Uniform placement in the UAV box with rejection of pairs closer than `D_0`.
fn place_uavs<R: Rng + ?Sized>(config: &ScenarioConfig, rng: &mut R) -> Result<Vec<Vector3<f64>>> {
    let (lo, hi) = (config.uav_lower_bound(), config.uav_upper_bound());
    let mut placed: Vec<Vector3<f64>> = Vec::with_capacity(config.uav_count);
    let draw = |rng: &mut R, i: usize| {
        if hi[i] > lo[i] {
            rng.random_range(lo[i]..=hi[i])
        } else {
            lo[i]
        }
    };
    for n in 0..config.uav_count {
        let mut ok = false;
        for _ in 0..MAX_PLACEMENT_TRIES {
            let p = Vector3::new(draw(rng, 0), draw(rng, 1), draw(rng, 2));
            if placed.iter().all(|q| (p - q).norm() >= config.collision_distance_m) {
                placed.push(p);
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Infeasible(format!(
                "could not place UAV {n} at least {} m from the others",
                config.collision_distance_m
            )));
        }
    }
    Ok(placed)
}

#[cfg(test)]
mod tests;
