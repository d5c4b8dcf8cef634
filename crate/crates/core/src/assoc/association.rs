use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

use super::hdbscan::{hdbscan_cluster, ClusterResult, HdbscanParams};
use super::hungarian::hungarian_assign;
use crate::error::{Error, Result};
use crate::scenario::{GroundNode, NodeKind, ScenarioConfig};

/// Binary UAV-to-node association `α`, stored UAV-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociationMatrix {
    alpha: Vec<Vec<bool>>,
}

impl AssociationMatrix {
    pub fn empty(uav_count: usize, node_count: usize) -> Self {
        Self {
            alpha: vec![vec![false; node_count]; uav_count],
        }
    }

    pub fn from_owners(uav_count: usize, owners: &[usize]) -> Self {
        let mut m = Self::empty(uav_count, owners.len());
        for (k, &n) in owners.iter().enumerate() {
            m.alpha[n][k] = true;
        }
        m
    }

    /// Wraps an arbitrary matrix without checking uniqueness.
    pub fn from_alpha(alpha: Vec<Vec<bool>>) -> Self {
        Self { alpha }
    }

    pub fn alpha(&self) -> &[Vec<bool>] {
        &self.alpha
    }

    pub fn uav_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn node_count(&self) -> usize {
        self.alpha.first().map_or(0, Vec::len)
    }

    pub fn is_associated(&self, uav: usize, node: usize) -> bool {
        self.alpha[uav][node]
    }

    /// The unique UAV serving `node`.
    pub fn owner(&self, node: usize) -> Result<usize> {
        let mut owners = (0..self.uav_count()).filter(|&n| self.alpha[n][node]);
        match (owners.next(), owners.next()) {
            (Some(n), None) => Ok(n),
            (None, _) => Err(Error::InvalidInput(format!("node {node} has no associated UAV"))),
            (Some(_), Some(_)) => Err(Error::InvalidInput(format!("node {node} is associated with several UAVs"))),
        }
    }

    pub fn owners(&self) -> Result<Vec<usize>> {
        (0..self.node_count()).map(|k| self.owner(k)).collect()
    }

    /// Nodes served by `uav`, ascending.
    pub fn served(&self, uav: usize) -> Vec<usize> {
        (0..self.node_count()).filter(|&k| self.alpha[uav][k]).collect()
    }

    /// Every node has exactly one serving UAV.
    pub fn is_valid(&self) -> bool {
        (0..self.node_count()).all(|k| self.owner(k).is_ok())
    }
}

/// Clusters together with their UAV assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub clusters: ClusterResult,
    /// UAV responsible for each cluster's users.
    pub cluster_owner: Vec<Option<usize>>,
    /// Cluster each UAV flies to; UAVs without a matched cluster take the nearest one.
    pub uav_cluster: Vec<Option<usize>>,
}

impl ClusterAssignment {
    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.clusters.sizes()
    }
}

fn lift(c: &Vector2<f64>) -> Vector3<f64> {
    Vector3::new(c.x, c.y, 0.0)
}

fn ground_distance(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

fn argmin_by<F: Fn(usize) -> f64>(items: impl Iterator<Item = usize>, key: F) -> Option<usize> {
    items.min_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)))
}

/// Matches UAVs to cluster centroids by minimum total 3-D distance.
pub fn assign_clusters(uav_positions: &[Vector3<f64>], clusters: ClusterResult) -> Result<ClusterAssignment> {
    let n = uav_positions.len();
    let u = clusters.clusters.len();
    let mut cluster_owner = vec![None; u];
    let mut uav_cluster = vec![None; n];
    if u > 0 {
        let d = |i: usize, c: usize| (uav_positions[i] - lift(&clusters.centroids[c])).norm();
        if u >= n {
            let cost: Vec<Vec<f64>> = (0..n).map(|i| (0..u).map(|c| d(i, c)).collect()).collect();
            for (i, &c) in hungarian_assign(&cost)?.columns.iter().enumerate() {
                uav_cluster[i] = Some(c);
                cluster_owner[c] = Some(i);
            }
        } else {
            let cost: Vec<Vec<f64>> = (0..u).map(|c| (0..n).map(|i| d(i, c)).collect()).collect();
            for (c, &i) in hungarian_assign(&cost)?.columns.iter().enumerate() {
                uav_cluster[i] = Some(c);
                cluster_owner[c] = Some(i);
            }
            for i in 0..n {
                if uav_cluster[i].is_none() {
                    uav_cluster[i] = argmin_by(0..u, |c| d(i, c));
                }
            }
        }
    }
    Ok(ClusterAssignment {
        clusters,
        cluster_owner,
        uav_cluster,
    })
}

fn check_capacity(uav_count: usize, comm_count: usize, max_load: usize) -> Result<()> {
    if comm_count > uav_count * max_load {
        return Err(Error::Infeasible(format!(
            "{comm_count} users exceed the capacity of {uav_count} UAVs with load {max_load}"
        )));
    }
    Ok(())
}

/// Builds `α` from a cluster assignment.
///
/// Nodes are indexed by id; the cluster labels refer to the communication
/// users in id order. Users of a cluster go to its owner up to `max_load`
/// (farthest evicted first); evicted users, noise and users of unowned
/// clusters go to the nearest UAV with spare capacity. Targets follow the
/// owner of the nearest owned centroid and do not count toward the load.
pub fn update_association(
    uav_positions: &[Vector3<f64>],
    nodes: &[GroundNode],
    assignment: &ClusterAssignment,
    max_load: usize,
) -> Result<AssociationMatrix> {
    let n = uav_positions.len();
    let users: Vec<usize> = nodes
        .iter()
        .filter(|g| g.kind == NodeKind::CommUser)
        .map(|g| g.id)
        .collect();
    check_capacity(n, users.len(), max_load)?;
    if assignment.clusters.labels.len() != users.len() {
        return Err(Error::InvalidInput("cluster labels do not match the user count".into()));
    }
    let mut owner: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut load = vec![0usize; n];
    let mut pending = Vec::new();

    for (c, members) in assignment.clusters.clusters.iter().enumerate() {
        let ids: Vec<usize> = members.iter().map(|&i| users[i]).collect();
        match assignment.cluster_owner[c] {
            Some(uav) => {
                let mut sorted = ids;
                sorted.sort_by(|&a, &b| {
                    let da = (nodes[a].position - uav_positions[uav]).norm();
                    let db = (nodes[b].position - uav_positions[uav]).norm();
                    da.total_cmp(&db).then(a.cmp(&b))
                });
                for (rank, id) in sorted.into_iter().enumerate() {
                    if rank < max_load {
                        owner[id] = Some(uav);
                        load[uav] += 1;
                    } else {
                        pending.push(id);
                    }
                }
            }
            None => pending.extend(ids),
        }
    }
    for (i, label) in assignment.clusters.labels.iter().enumerate() {
        if label.is_none() {
            pending.push(users[i]);
        }
    }
    pending.sort_unstable();
    for id in pending {
        let uav = argmin_by((0..n).filter(|&m| load[m] < max_load), |m| {
            ground_distance(&nodes[id].position, &uav_positions[m])
        })
        .expect("capacity checked above");
        owner[id] = Some(uav);
        load[uav] += 1;
    }

    let owned: Vec<usize> = (0..assignment.cluster_owner.len())
        .filter(|&c| assignment.cluster_owner[c].is_some())
        .collect();
    for g in nodes.iter().filter(|g| g.kind == NodeKind::SensingTarget) {
        let gp = g.ground();
        owner[g.id] = match argmin_by(owned.iter().copied(), |c| (assignment.clusters.centroids[c] - gp).norm()) {
            Some(c) => assignment.cluster_owner[c],
            None => argmin_by(0..n, |m| ground_distance(&g.position, &uav_positions[m])),
        };
    }
    let owners: Vec<usize> = owner.into_iter().map(|o| o.expect("every node assigned")).collect();
    Ok(AssociationMatrix::from_owners(n, &owners))
}

/// Baseline without clustering: greedy nearest-UAV matching by 3-D distance
/// under the load cap; targets take their nearest UAV.
pub fn nearest_association(
    uav_positions: &[Vector3<f64>],
    nodes: &[GroundNode],
    max_load: usize,
) -> Result<AssociationMatrix> {
    let n = uav_positions.len();
    let users: Vec<usize> = nodes
        .iter()
        .filter(|g| g.kind == NodeKind::CommUser)
        .map(|g| g.id)
        .collect();
    check_capacity(n, users.len(), max_load)?;
    let dist = |k: usize, m: usize| (nodes[k].position - uav_positions[m]).norm();
    let mut pairs: Vec<(usize, usize)> = users.iter().flat_map(|&k| (0..n).map(move |m| (k, m))).collect();
    pairs.sort_by(|a, b| dist(a.0, a.1).total_cmp(&dist(b.0, b.1)).then(a.cmp(b)));
    let mut owner: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut load = vec![0usize; n];
    for (k, m) in pairs {
        if owner[k].is_none() && load[m] < max_load {
            owner[k] = Some(m);
            load[m] += 1;
        }
    }
    for g in nodes.iter().filter(|g| g.kind == NodeKind::SensingTarget) {
        owner[g.id] = argmin_by(0..n, |m| dist(g.id, m));
    }
    let owners: Vec<usize> = owner.into_iter().map(|o| o.expect("every node assigned")).collect();
    Ok(AssociationMatrix::from_owners(n, &owners))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssociationMode {
    /// Periodic HDBSCAN clustering with Hungarian UAV assignment.
    Clustering,
    /// Nearest UAV, re-evaluated every slot.
    Nearest,
}

/// Holds the current association and refreshes it on schedule.
#[derive(Debug, Clone)]
pub struct Associator {
    mode: AssociationMode,
    params: HdbscanParams,
    interval: usize,
    max_load: usize,
    assignment: Option<ClusterAssignment>,
    matrix: Option<AssociationMatrix>,
}

impl Associator {
    pub fn new(config: &ScenarioConfig, mode: AssociationMode) -> Self {
        Self {
            mode,
            params: HdbscanParams {
                min_cluster_size: config.hdbscan_min_cluster_size,
                min_samples: config.hdbscan_min_samples,
                epsilon: config.hdbscan_epsilon_m,
            },
            interval: config.assoc_interval_slots,
            max_load: config.max_uav_load,
            assignment: None,
            matrix: None,
        }
    }

    pub fn mode(&self) -> AssociationMode {
        self.mode
    }

    pub fn is_recluster_slot(&self, slot: usize) -> bool {
        slot % self.interval == 0
    }

    /// Runs the clustering pipeline when `slot` is a multiple of the interval
    /// (or nothing has been computed yet) and reports whether it ran. The
    /// nearest-UAV mode refreshes every slot and never reports a recluster.
    pub fn maybe_recluster(&mut self, slot: usize, uav_positions: &[Vector3<f64>], nodes: &[GroundNode]) -> Result<bool> {
        match self.mode {
            AssociationMode::Nearest => {
                self.matrix = Some(nearest_association(uav_positions, nodes, self.max_load)?);
                Ok(false)
            }
            AssociationMode::Clustering => {
                if self.matrix.is_some() && !self.is_recluster_slot(slot) {
                    return Ok(false);
                }
                let points: Vec<Vector2<f64>> = nodes
                    .iter()
                    .filter(|g| g.kind == NodeKind::CommUser)
                    .map(GroundNode::ground)
                    .collect();
                let clusters = if points.is_empty() {
                    ClusterResult {
                        labels: Vec::new(),
                        clusters: Vec::new(),
                        centroids: Vec::new(),
                    }
                } else {
                    hdbscan_cluster(&points, &self.params)?
                };
                let assignment = assign_clusters(uav_positions, clusters)?;
                self.matrix = Some(update_association(uav_positions, nodes, &assignment, self.max_load)?);
                self.assignment = Some(assignment);
                Ok(true)
            }
        }
    }

    pub fn matrix(&self) -> Option<&AssociationMatrix> {
        self.matrix.as_ref()
    }

    pub fn assignment(&self) -> Option<&ClusterAssignment> {
        self.assignment.as_ref()
    }

    /// Cluster per UAV and user count per cluster, for receiver selection.
    pub fn cluster_layout(&self, uav_count: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        match &self.assignment {
            Some(a) if self.mode == AssociationMode::Clustering => (a.uav_cluster.clone(), a.cluster_sizes()),
            _ => (vec![None; uav_count], Vec::new()),
        }
    }
}
