use super::*;
use crate::array::GEOMETRY_TOL;
use crate::channel::norm_sqr;
use rand::Rng;

fn small(mut f: impl FnMut(&mut ScenarioConfig)) -> ScenarioConfig {
    let mut c = ScenarioConfig::default();
    f(&mut c);
    c
}

fn random_action(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

#[test]
fn table_observation_layout() {
    let c = ScenarioConfig::default();
    assert_eq!(observation_len(&c), 288 + 3 + 9 + 24 + 12 + 6 + 12 + 1);
    let env = Env::new(c, EnvOptions::default()).unwrap();
    assert_eq!(env.observe().unwrap().len(), 355);
    assert_eq!(env.action_dim(), 159);
}

#[test]
fn reset_is_deterministic() {
    let mut a = Env::new(ScenarioConfig::default(), EnvOptions::default()).unwrap();
    let mut b = Env::new(ScenarioConfig::default(), EnvOptions::default()).unwrap();
    assert_eq!(a.reset(17).unwrap(), b.reset(17).unwrap());
    assert_ne!(a.reset(18).unwrap(), b.reset(17).unwrap());
}

#[test]
fn impossible_separation_fails_placement() {
    let c = small(|c| c.collision_distance_m = 1000.0);
    assert!(matches!(Env::new(c, EnvOptions::default()), Err(Error::Infeasible(_))));
}

#[test]
fn done_exactly_at_episode_length() {
    let mut env = Env::new(small(|c| c.episode_length_slots = 5), EnvOptions::default()).unwrap();
    let a = vec![0.0; env.action_dim()];
    for t in 1..=5 {
        let r = env.step(&a).unwrap();
        assert_eq!(r.done, t == 5);
        assert_eq!(r.record.t, t);
    }
    assert!(matches!(env.step(&a), Err(Error::EpisodeDone)));
    assert!(matches!(env.step(&[0.0]), Err(Error::EpisodeDone)));
}

#[test]
fn hover_with_static_world_keeps_rate() {
    let c = small(|c| {
        c.user_max_speed_mps = 0.0;
        c.attitude_jitter_deg = 0.0;
    });
    let mut env = Env::new(c, EnvOptions::default()).unwrap();
    let mut a = vec![0.0; env.action_dim()];
    for n in 0..3 {
        a[env.layout().speed(n)] = -1.0;
    }
    let first = env.step(&a).unwrap();
    for _ in 0..25 {
        let r = env.step(&a).unwrap();
        assert_eq!(r.record.uav_positions, first.record.uav_positions);
        assert!((r.reward.sum_rate_term - first.reward.sum_rate_term).abs() < 1e-9);
    }
}

#[test]
fn random_steps_keep_invariants() {
    let c = ScenarioConfig::default();
    let mut env = Env::new(c.clone(), EnvOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (lo, hi) = (c.uav_lower_bound(), c.uav_upper_bound());
    let mut prev: Vec<_> = env.uavs().iter().map(|u| u.position).collect();
    for step in 0..10_000 {
        if env.is_done() {
            env.reset(step as u64).unwrap();
            prev = env.uavs().iter().map(|u| u.position).collect();
        }
        let a = random_action(&mut rng, env.action_dim());
        let r = env.step(&a).unwrap();
        assert_eq!(r.observation.len(), 355);
        assert!(r.observation.iter().all(|x| x.is_finite() && x.abs() <= 1.0 + 1e-12));
        let b = r.reward;
        assert_eq!(b.total, b.sum_rate_term - (b.sensing_penalty + b.collision_penalty + b.speed_penalty));
        assert!(b.sensing_penalty >= 0.0 && b.collision_penalty >= 0.0 && b.speed_penalty >= 0.0);
        assert!(env.association().is_valid());
        for (u, p) in env.uavs().iter().zip(&prev) {
            assert!((u.position - p).norm() <= c.uav_max_speed_mps + 1e-9);
            for i in 0..3 {
                assert!(u.position[i] >= lo[i] && u.position[i] <= hi[i]);
            }
            assert!(u.array.is_feasible());
        }
        assert_eq!(r.record.collisions.len() as f64 * c.collision_penalty, b.collision_penalty);
        prev = env.uavs().iter().map(|u| u.position).collect();
    }
}

#[test]
fn decoded_actions_are_feasible() {
    let c = ScenarioConfig::default();
    let env = Env::new(c.clone(), EnvOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let a: Vec<f64> = (0..env.action_dim()).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let d = decode_action(&a, env.layout(), env.association(), &env.links, c.comm_user_count, &c).unwrap();
        for g in &d.geometries {
            let r = g.offsets();
            assert!(r.iter().all(|x| x.abs() <= c.max_array_offset_m + GEOMETRY_TOL));
            assert!(r.windows(2).all(|p| p[1] - p[0] >= c.min_antenna_spacing_m - GEOMETRY_TOL));
        }
        assert!(d.beams.max_link_power(c.max_tx_power_w()) <= c.max_tx_power_w() * (1.0 + 1e-12));
        for n in 0..c.uav_count {
            for k in 0..c.node_count() {
                let rho = d.beams.rho(n, k);
                assert!((0.0..=1.0).contains(&rho));
                if env.association().is_associated(n, k) {
                    assert!((norm_sqr(d.beams.beam(n, k)) - 1.0).abs() < 1e-12);
                } else {
                    assert_eq!(rho, 0.0);
                }
            }
        }
        for m in &d.motions {
            assert!(m.commanded_speed <= c.uav_max_speed_mps);
        }
    }
}

#[test]
fn zero_penalty_weights_leave_rate() {
    let c = small(|c| {
        c.sensing_penalty_weight = 0.0;
        c.speed_penalty_weight = 0.0;
        c.collision_distance_m = 0.0;
    });
    let mut env = Env::new(c, EnvOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let r = env.step(&random_action(&mut rng, 159)).unwrap();
        assert_eq!(r.reward.total, r.reward.sum_rate_term);
    }
}

fn rollout(options: EnvOptions, seed: u64, steps: usize) -> Vec<SlotRecord> {
    let mut env = Env::new(ScenarioConfig::default(), options).unwrap();
    env.reset(seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
    (0..steps)
        .map(|_| env.step(&random_action(&mut rng, 159)).unwrap().record)
        .collect()
}

#[test]
fn reward_trace_is_reproducible() {
    let a = rollout(EnvOptions::default(), 3, 60);
    let b = rollout(EnvOptions::default(), 3, 60);
    assert_eq!(a, b);
    let mut buf = Vec::new();
    write_trace(&mut buf, &a).unwrap();
    assert_eq!(read_trace(buf.as_slice()).unwrap(), a);
}

#[test]
fn recluster_events_follow_interval() {
    let records = rollout(EnvOptions::default(), 5, 35);
    let events: Vec<usize> = records.iter().filter(|r| r.reclustered).map(|r| r.t).collect();
    assert_eq!(events, vec![10, 20, 30]);
    assert!(records.iter().filter(|r| r.reclustered).all(|r| r.clusters.is_some()));
}

#[test]
fn fixed_schemes_freeze_heads() {
    let options = EnvOptions {
        array: ArrayMode::Fixed,
        association: AssociationMode::Nearest,
        trajectory: TrajectoryMode::Fixed,
    };
    let records = rollout(options, 1, 120);
    let uniform = ArrayGeometry::uniform(4, 0.625, 0.0625).unwrap();
    for r in &records {
        assert!(r.offsets.iter().all(|o| o == uniform.offsets()));
        assert!(!r.reclustered);
        for p in &r.uav_positions {
            assert_eq!(p[2], 100.0);
        }
    }
    for w in records.windows(2) {
        for (a, b) in w[0].uav_positions.iter().zip(&w[1].uav_positions) {
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
            assert!(d <= 4.0 + 1e-9);
        }
    }
}

#[test]
fn schemes_share_user_traces() {
    let movable = rollout(EnvOptions::default(), 11, 40);
    let fixed = rollout(
        EnvOptions {
            array: ArrayMode::Fixed,
            ..EnvOptions::default()
        },
        11,
        40,
    );
    for (a, b) in movable.iter().zip(&fixed) {
        assert_eq!(a.user_positions, b.user_positions);
        assert_eq!(a.uav_positions, b.uav_positions);
    }
}

#[test]
fn frozen_evaluation_leaves_env_untouched() {
    let env = Env::new(ScenarioConfig::default(), EnvOptions::default()).unwrap();
    let before = env.observe().unwrap();
    let (r, m) = env.evaluate_frozen(&vec![0.3; 159]).unwrap();
    assert_eq!(m.comm_sinr.len(), 9);
    assert!(r.total.is_finite());
    assert_eq!(env.observe().unwrap(), before);
}

#[test]
fn lawnmower_visits_waypoints_in_order() {
    let c = ScenarioConfig::default();
    let mut l = Lawnmower::for_uav(&c, 0);
    let mut p = l.start();
    let target = l.waypoints()[1];
    for _ in 0..200 {
        let cmd = l.command(&p, 4.0);
        p += cmd.direction.unwrap() * cmd.commanded_speed;
        if (p - target).norm() < 1e-9 {
            return;
        }
    }
    panic!("waypoint not reached");
}
