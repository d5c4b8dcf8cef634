//! Bistatic sensing: receiver selection, clutter ellipse and sensing SINR.

use nalgebra::{Vector2, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{inner, norm_sqr};
use crate::error::{Error, Result};

/// Round-trip amplitude `κ √ε / (d_tx d_rx)`.
pub fn bistatic_gain(sensing_ref_gain: f64, rcs: f64, d_tx: f64, d_rx: f64) -> f64 {
    (sensing_ref_gain * sensing_ref_gain * rcs / (d_tx * d_tx * d_rx * d_rx)).sqrt()
}

/// Transmitter/receiver pair illuminating one target.
///
/// The channel matrix is `H = ϱ a_rx a_txᴴ`: rows index receive elements, so
/// `uᴴ H w = ϱ (uᴴ a_rx)(a_txᴴ w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingLink {
    pub tx: usize,
    pub rx: usize,
    pub target: usize,
    pub gain: f64,
    pub a_tx: Vec<Complex64>,
    pub a_rx: Vec<Complex64>,
}

impl SensingLink {
    pub fn new(
        tx: usize,
        rx: usize,
        target: usize,
        gain: f64,
        a_tx: Vec<Complex64>,
        a_rx: Vec<Complex64>,
    ) -> Result<Self> {
        if tx == rx {
            return Err(Error::InvalidInput("sensing transmitter and receiver must differ".into()));
        }
        if a_tx.len() != a_rx.len() {
            return Err(Error::InvalidInput("steering vectors differ in length".into()));
        }
        Ok(Self {
            tx,
            rx,
            target,
            gain,
            a_tx,
            a_rx,
        })
    }

    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.a_rx
            .iter()
            .map(|r| self.a_tx.iter().map(|t| r * t.conj() * self.gain).collect())
            .collect()
    }

    pub fn receive_beam(&self) -> Vec<Complex64> {
        receive_beamformer(&self.a_rx)
    }
}

/// One non-target scatterer inside the bistatic ellipse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scatterer {
    pub id: usize,
    pub coefficient: f64,
    pub a_tx: Vec<Complex64>,
    pub a_rx: Vec<Complex64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClutterSet {
    pub members: Vec<Scatterer>,
}

impl ClutterSet {
    pub fn ids(&self) -> Vec<usize> {
        self.members.iter().map(|s| s.id).collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn ground(p: &Vector3<f64>) -> Vector2<f64> {
    Vector2::new(p.x, p.y)
}

/// Ground range-sum test against the target's bistatic range scaled by `1 + slack`.
pub fn in_clutter_ellipse(
    tx: &Vector3<f64>,
    rx: &Vector3<f64>,
    target: &Vector3<f64>,
    point: &Vector3<f64>,
    slack: f64,
) -> bool {
    let (gt, gr, gk, gp) = (ground(tx), ground(rx), ground(target), ground(point));
    let threshold = ((gt - gk).norm() + (gr - gk).norm()) * (1.0 + slack);
    (gp - gt).norm() + (gp - gr).norm() <= threshold
}

/// Users (id, position) inside the ellipse, excluding `target_id`.
pub fn clutter_members<'a>(
    tx: &Vector3<f64>,
    rx: &Vector3<f64>,
    target_id: usize,
    target: &Vector3<f64>,
    users: impl IntoIterator<Item = (usize, &'a Vector3<f64>)>,
    slack: f64,
) -> Vec<usize> {
    users
        .into_iter()
        .filter(|&(id, p)| id != target_id && in_clutter_ellipse(tx, rx, target, p, slack))
        .map(|(id, _)| id)
        .collect()
}

/// Unit-norm receive combiner matched to the receiver's steering vector.
pub fn receive_beamformer(a_rx: &[Complex64]) -> Vec<Complex64> {
    let n = norm_sqr(a_rx).sqrt();
    a_rx.iter().map(|z| z / n).collect()
}

/// Sensing SINR for a unit-norm beam `w` transmitted at `power` watts.
pub fn sensing_sinr(link: &SensingLink, w: &[Complex64], power: f64, clutter: &ClutterSet, noise: f64) -> f64 {
    let u = link.receive_beam();
    let signal = (inner(&u, &link.a_rx) * inner(&link.a_tx, w) * link.gain).norm_sqr() * power;
    let clutter_power: f64 = clutter
        .members
        .iter()
        .map(|s| (inner(&u, &s.a_rx) * inner(&s.a_tx, w) * s.coefficient).norm_sqr() * power)
        .sum();
    signal / (clutter_power + noise)
}

pub fn sensing_feasible(sinr: f64, threshold: f64) -> bool {
    sinr >= threshold
}

/// Chooses the bistatic receiver for a target served by `tx`.
///
/// `uav_cluster[n]` is the cluster UAV n flies to and `cluster_sizes[c]` its
/// user count. When another UAV shares the transmitter's cluster the nearest
/// other UAV is used; otherwise the candidates are ranked by
/// (cluster user count, distance to the target).
pub fn select_receiver(
    tx: usize,
    target: &Vector3<f64>,
    uav_positions: &[Vector3<f64>],
    uav_cluster: &[Option<usize>],
    cluster_sizes: &[usize],
) -> Result<usize> {
    if uav_positions.len() < 2 {
        return Err(Error::InvalidInput("bistatic sensing needs at least two UAVs".into()));
    }
    let dist = |n: usize| (uav_positions[n] - target).norm();
    let others = (0..uav_positions.len()).filter(|&n| n != tx);
    let shared = uav_cluster[tx].is_some()
        && (0..uav_positions.len()).any(|n| n != tx && uav_cluster[n] == uav_cluster[tx]);
    let pick = if shared {
        others.min_by(|&a, &b| dist(a).total_cmp(&dist(b)).then(a.cmp(&b)))
    } else {
        let load = |n: usize| uav_cluster[n].map_or(0, |c| cluster_sizes[c]);
        others.min_by(|&a, &b| {
            load(a)
                .cmp(&load(b))
                .then(dist(a).total_cmp(&dist(b)))
                .then(a.cmp(&b))
        })
    };
    Ok(pick.expect("at least one candidate"))
}
