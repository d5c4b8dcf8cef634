//! Physics functions checked against straight-line reimplementations.

use maisac_core::array::{ArrayGeometry, Attitude};
use maisac_core::assoc::AssociationMatrix;
use maisac_core::channel::{comm_sinr, comm_sinrs, inner, rate, sum_rate, BeamPlan, LinkBudget, LinkTable};
use maisac_core::scenario::{GroundNode, InterferenceChannel, NodeKind, UavState};
use maisac_core::sensing::{
    clutter_members, in_clutter_ellipse, receive_beamformer, sensing_sinr, ClutterSet, Scatterer, SensingLink,
};
use nalgebra::{Vector2, Vector3};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LAMBDA: f64 = 0.125;

fn node(id: usize, p: Vector3<f64>) -> GroundNode {
    GroundNode {
        id,
        kind: NodeKind::CommUser,
        position: p,
        velocity: Vector2::zeros(),
        heading: 0.0,
    }
}

struct Instance {
    uavs: Vec<UavState>,
    axes: Vec<Vector3<f64>>,
    nodes: Vec<GroundNode>,
    owners: Vec<usize>,
    beams: Vec<Vec<Vec<Complex64>>>,
    rho: Vec<Vec<f64>>,
}

fn random_instance(rng: &mut ChaCha8Rng, n_uav: usize, n_user: usize, m: usize) -> Instance {
    let uavs: Vec<UavState> = (0..n_uav)
        .map(|_| {
            let raw: Vec<f64> = (0..m).map(|_| rng.random_range(-0.6..0.6)).collect();
            UavState {
                position: Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), rng.random_range(80.0..120.0)),
                attitude: Attitude::new(
                    rng.random_range(-0.1..0.1),
                    rng.random_range(-0.1..0.1),
                    rng.random_range(-0.1..0.1),
                    rng.random_range(0.0..6.28),
                ),
                array: maisac_core::array::project_geometry(&raw, 0.625, 0.0625).unwrap(),
            }
        })
        .collect();
    let axes = uavs.iter().map(|u| u.attitude.compensated_axis()).collect();
    let nodes = (0..n_user)
        .map(|k| node(k, Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), 0.0)))
        .collect();
    let owners: Vec<usize> = (0..n_user).map(|_| rng.random_range(0..n_uav)).collect();
    let mut beams = vec![vec![vec![Complex64::new(0.0, 0.0); m]; n_user]; n_uav];
    let mut rho = vec![vec![0.0; n_user]; n_uav];
    for (k, &n) in owners.iter().enumerate() {
        let w: Vec<Complex64> = (0..m)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        beams[n][k] = w.into_iter().map(|z| z / norm).collect();
        rho[n][k] = rng.random_range(0.0..=1.0);
    }
    Instance {
        uavs,
        axes,
        nodes,
        owners,
        beams,
        rho,
    }
}

/// `√(β0/d²)·exp(j 2π/λ r_m cos θ)` evaluated directly.
fn oracle_channel(inst: &Instance, n: usize, k: usize, beta0: f64) -> Vec<Complex64> {
    let u = &inst.uavs[n];
    let diff = inst.nodes[k].position - u.position;
    let d = diff.norm();
    let cos = inst.axes[n].dot(&diff) / d;
    u.array
        .offsets()
        .iter()
        .map(|r| Complex64::from_polar((beta0 / (d * d)).sqrt(), 2.0 * std::f64::consts::PI / LAMBDA * r * cos))
        .collect()
}

fn herm(h: &[Complex64], w: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..h.len() {
        acc += h[i].conj() * w[i];
    }
    acc
}

/// Every signal and interference term enumerated explicitly.
fn oracle_sinr(inst: &Instance, k: usize, budget: &LinkBudget) -> f64 {
    let n = inst.owners[k];
    let p = budget.max_power;
    let h = oracle_channel(inst, n, k, budget.ref_gain);
    let signal = p * (herm(&h, &inst.beams[n][k]) * inst.rho[n][k]).norm_sqr();
    let mut intra = 0.0;
    for l in 0..inst.nodes.len() {
        if l != k {
            let via = if budget.interference == InterferenceChannel::Receiver { k } else { l };
            let h = oracle_channel(inst, n, via, budget.ref_gain);
            intra += p * (herm(&h, &inst.beams[n][l]) * inst.rho[n][l]).norm_sqr();
        }
    }
    let mut cross = 0.0;
    for m in 0..inst.uavs.len() {
        if m == n {
            continue;
        }
        for l in 0..inst.nodes.len() {
            if l != k {
                let via = if budget.interference == InterferenceChannel::Receiver { k } else { l };
                let h = oracle_channel(inst, m, via, budget.ref_gain);
                cross += p * (herm(&h, &inst.beams[m][l]) * inst.rho[m][l]).norm_sqr();
            }
        }
    }
    signal / (intra + cross + budget.noise_power)
}

fn plan(inst: &Instance, m: usize) -> BeamPlan {
    let mut plan = BeamPlan::new(inst.uavs.len(), inst.nodes.len(), m);
    for (k, &n) in inst.owners.iter().enumerate() {
        plan.set(n, k, &inst.beams[n][k], inst.rho[n][k]).unwrap();
    }
    plan
}

fn budget(interference: InterferenceChannel) -> LinkBudget {
    LinkBudget {
        ref_gain: 1e-3,
        max_power: 1.0,
        noise_power: 2e-7,
        bandwidth: 20e6,
        interference,
    }
}

#[test]
fn comm_sinr_matches_term_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for trial in 0..1000 {
        let n_uav = rng.random_range(1..=3);
        let n_user = rng.random_range(1..=4);
        let m = rng.random_range(1..=4);
        let inst = random_instance(&mut rng, n_uav, n_user, m);
        let links = LinkTable::compute(&inst.uavs, &inst.axes, &inst.nodes, LAMBDA).unwrap();
        let assoc = AssociationMatrix::from_owners(n_uav, &inst.owners);
        let plan = plan(&inst, m);
        let mode = if trial % 2 == 0 { InterferenceChannel::Receiver } else { InterferenceChannel::Literal };
        let b = budget(mode);
        for k in 0..n_user {
            let got = comm_sinr(k, n_user, &links, &plan, &assoc, &b).unwrap();
            let want = oracle_sinr(&inst, k, &b);
            assert!((got - want).abs() <= 1e-10 * want.abs().max(1e-300), "trial {trial} user {k}: {got} vs {want}");
        }
    }
}

#[test]
fn two_by_two_instance() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inst = random_instance(&mut rng, 2, 2, 4);
    let links = LinkTable::compute(&inst.uavs, &inst.axes, &inst.nodes, LAMBDA).unwrap();
    let assoc = AssociationMatrix::from_owners(2, &inst.owners);
    let b = budget(InterferenceChannel::Receiver);
    for k in 0..2 {
        let got = comm_sinr(k, 2, &links, &plan(&inst, 4), &assoc, &b).unwrap();
        let want = oracle_sinr(&inst, k, &b);
        assert!((got - want).abs() <= 1e-10 * want);
    }
}

#[test]
fn sum_rate_is_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let inst = random_instance(&mut rng, 2, 3, 4);
    let links = LinkTable::compute(&inst.uavs, &inst.axes, &inst.nodes, LAMBDA).unwrap();
    let assoc = AssociationMatrix::from_owners(2, &inst.owners);
    let b = budget(InterferenceChannel::Receiver);
    let plan = plan(&inst, 4);
    let total = sum_rate(3, &links, &plan, &assoc, &b).unwrap();
    let parts: f64 = (0..3)
        .map(|k| rate(oracle_sinr(&inst, k, &b), b.bandwidth).unwrap())
        .sum();
    assert!((total - parts).abs() <= 1e-9 * parts);
    let sinrs = comm_sinrs(3, &links, &plan, &assoc, &b).unwrap();
    assert_eq!(sinrs.len(), 3);
}

#[test]
fn one_active_user_at_unit_sinr() {
    // Choose the noise so that the single matched-filter link sits at γ = 1.
    let uav = UavState {
        position: Vector3::new(0.0, 0.0, 100.0),
        attitude: Attitude::level(0.0),
        array: ArrayGeometry::uniform(4, 0.625, 0.0625).unwrap(),
    };
    let nodes = [node(0, Vector3::zeros())];
    let links = LinkTable::compute(std::slice::from_ref(&uav), &[Vector3::x()], &nodes, LAMBDA).unwrap();
    let mut plan = BeamPlan::new(1, 1, 4);
    plan.set(0, 0, &links.channel(0, 0, 1e-3).h, 1.0).unwrap();
    let mut b = budget(InterferenceChannel::Receiver);
    b.noise_power = 1e-3 * 4.0 / 1e4;
    let r = sum_rate(1, &links, &plan, &AssociationMatrix::from_owners(1, &[0]), &b).unwrap();
    assert!((r - 2.0e7).abs() < 1e-3);
}

fn phases(rng: &mut ChaCha8Rng, m: usize) -> Vec<Complex64> {
    (0..m).map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..6.3))).collect()
}

/// `|uᴴ H w|²` with the full matrix product.
fn matrix_response(h: &[Vec<Complex64>], u: &[Complex64], w: &[Complex64]) -> f64 {
    let hw: Vec<Complex64> = h.iter().map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum()).collect();
    herm(u, &hw).norm_sqr()
}

#[test]
fn sensing_sinr_matches_term_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let m = rng.random_range(1..=4);
        let gain = rng.random_range(1e-6..1e-3);
        let link = SensingLink::new(0, 1, 0, gain, phases(&mut rng, m), phases(&mut rng, m)).unwrap();
        let members: Vec<Scatterer> = (0..rng.random_range(0..=2))
            .map(|i| Scatterer {
                id: i + 1,
                coefficient: rng.random_range(0.0..0.3) * gain,
                a_tx: phases(&mut rng, m),
                a_rx: phases(&mut rng, m),
            })
            .collect();
        let clutter = ClutterSet { members };
        let w = receive_beamformer(&phases(&mut rng, m));
        let p = rng.random_range(0.1..1.0);
        let noise = 1e-13;
        let u: Vec<Complex64> = {
            let n = link.a_rx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            link.a_rx.iter().map(|z| z / n).collect()
        };
        let signal = p * matrix_response(&link.matrix(), &u, &w);
        let mut denom = noise;
        for s in &clutter.members {
            let h: Vec<Vec<Complex64>> = s
                .a_rx
                .iter()
                .map(|r| s.a_tx.iter().map(|t| r * t.conj() * s.coefficient).collect())
                .collect();
            denom += p * matrix_response(&h, &u, &w);
        }
        let want = signal / denom;
        let got = sensing_sinr(&link, &w, p, &clutter, noise);
        assert!((got - want).abs() <= 1e-10 * want.max(1e-300));
    }
}

#[test]
fn clutter_membership_matches_range_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let tx = Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), 100.0);
        let rx = Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), 90.0);
        let target = Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), 0.0);
        let users: Vec<Vector3<f64>> = (0..9)
            .map(|_| Vector3::new(rng.random_range(0.0..500.0), rng.random_range(0.0..500.0), 0.0))
            .collect();
        let g = |p: &Vector3<f64>| Vector2::new(p.x, p.y);
        let bound = ((g(&tx) - g(&target)).norm() + (g(&rx) - g(&target)).norm()) * 1.1;
        let want: Vec<usize> = (0..9)
            .filter(|&i| (g(&users[i]) - g(&tx)).norm() + (g(&users[i]) - g(&rx)).norm() <= bound)
            .collect();
        let got = clutter_members(&tx, &rx, 99, &target, users.iter().enumerate(), 0.1);
        assert_eq!(got, want);
        assert_eq!(in_clutter_ellipse(&tx, &rx, &target, &target, 0.0), true);
    }
}

proptest! {
    #[test]
    fn sinr_decreases_with_distance(h1 in 80.0..200.0f64, extra in 1.0..300.0f64) {
        let b = budget(InterferenceChannel::Receiver);
        let sinr_at = |z: f64| {
            let uav = UavState {
                position: Vector3::new(0.0, 0.0, z),
                attitude: Attitude::level(0.3),
                array: ArrayGeometry::uniform(4, 0.625, 0.0625).unwrap(),
            };
            let nodes = [node(0, Vector3::zeros())];
            let links = LinkTable::compute(std::slice::from_ref(&uav), &[Vector3::new(0.3f64.cos(), 0.3f64.sin(), 0.0)], &nodes, LAMBDA).unwrap();
            let mut plan = BeamPlan::new(1, 1, 4);
            plan.set(0, 0, &[Complex64::new(1.0, 0.0); 4], 1.0).unwrap();
            comm_sinr(0, 1, &links, &plan, &AssociationMatrix::from_owners(1, &[0]), &b).unwrap()
        };
        // Directly overhead the steering vector is all ones, so only distance changes.
        prop_assert!(sinr_at(h1) > sinr_at(h1 + extra));
    }

    #[test]
    fn beam_gain_bounded_by_channel_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(1..=8);
        let h: Vec<Complex64> = (0..m).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let w = receive_beamformer(&(0..m).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect::<Vec<_>>());
        let hn: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!(inner(&h, &w).norm_sqr() <= hn * (1.0 + 1e-12));
        let matched = receive_beamformer(&h);
        prop_assert!((inner(&h, &matched).norm_sqr() - hn).abs() <= 1e-12 * hn);
    }

    #[test]
    fn common_scaling_of_gain_and_noise(seed in any::<u64>(), factor in 1e-3..1e3f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, 2, 3, 4);
        let links = LinkTable::compute(&inst.uavs, &inst.axes, &inst.nodes, LAMBDA).unwrap();
        let assoc = AssociationMatrix::from_owners(2, &inst.owners);
        let b = budget(InterferenceChannel::Receiver);
        let mut scaled = b;
        scaled.ref_gain *= factor;
        scaled.noise_power *= factor;
        let plan = plan(&inst, 4);
        for k in 0..3 {
            let a = comm_sinr(k, 3, &links, &plan, &assoc, &b).unwrap();
            let c = comm_sinr(k, 3, &links, &plan, &assoc, &scaled).unwrap();
            prop_assert!((a - c).abs() <= 1e-9 * a.max(1e-300));
        }
    }

    #[test]
    fn rank_one_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(1..=6);
        let link = SensingLink::new(0, 1, 0, rng.random_range(1e-5..1.0), phases(&mut rng, m), phases(&mut rng, m)).unwrap();
        let w = receive_beamformer(&phases(&mut rng, m));
        let u = link.receive_beam();
        let lhs = matrix_response(&link.matrix(), &u, &w).sqrt();
        let a_rx_norm = link.a_rx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let rhs = link.gain * a_rx_norm * herm(&link.a_tx, &w).norm();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300));
    }

    #[test]
    fn extra_clutter_never_helps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 4;
        let link = SensingLink::new(0, 1, 0, 1e-4, phases(&mut rng, m), phases(&mut rng, m)).unwrap();
        let w = receive_beamformer(&phases(&mut rng, m));
        let mut clutter = ClutterSet::default();
        let mut last = sensing_sinr(&link, &w, 1.0, &clutter, 1e-12);
        for i in 0..4 {
            clutter.members.push(Scatterer { id: i, coefficient: rng.random_range(0.0..3e-5), a_tx: phases(&mut rng, m), a_rx: phases(&mut rng, m) });
            let g = sensing_sinr(&link, &w, 1.0, &clutter, 1e-12);
            prop_assert!(g <= last);
            last = g;
        }
    }
}
