//! Movable-antenna geometry, attitude rotation with active compensation, and
//! far-field steering vectors.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack used when checking spacing constraints on projected geometries.
pub const GEOMETRY_TOL: f64 = 1e-12;

/// Element offsets along a one-dimensional segment centred on the UAV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrayGeometry {
    offsets: Vec<f64>,
    max_offset: f64,
    min_spacing: f64,
}

impl ArrayGeometry {
    /// Validates a strictly increasing offset list against `D_off` and `D_min`.
    pub fn new(offsets: Vec<f64>, max_offset: f64, min_spacing: f64) -> Result<Self> {
        check_feasible_config(offsets.len(), max_offset, min_spacing)?;
        for (m, r) in offsets.iter().enumerate() {
            if !r.is_finite() || r.abs() > max_offset + GEOMETRY_TOL {
                return Err(Error::InvalidInput(format!("offset {m} = {r} outside ±{max_offset}")));
            }
        }
        for (m, pair) in offsets.windows(2).enumerate() {
            if pair[1] - pair[0] < min_spacing - GEOMETRY_TOL {
                return Err(Error::InvalidInput(format!(
                    "elements {m} and {} closer than {min_spacing}",
                    m + 1
                )));
            }
        }
        Ok(Self {
            offsets,
            max_offset,
            min_spacing,
        })
    }

    /// Fixed-position layout: uniform spacing spanning `[-D_off, D_off]`.
    pub fn uniform(count: usize, max_offset: f64, min_spacing: f64) -> Result<Self> {
        check_feasible_config(count, max_offset, min_spacing)?;
        let offsets = if count == 1 {
            vec![0.0]
        } else {
            let step = 2.0 * max_offset / (count as f64 - 1.0);
            (0..count).map(|m| -max_offset + step * m as f64).collect()
        };
        Ok(Self {
            offsets,
            max_offset,
            min_spacing,
        })
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn max_offset(&self) -> f64 {
        self.max_offset
    }

    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }

    /// True when both the extent and the spacing constraint hold.
    pub fn is_feasible(&self) -> bool {
        self.offsets.iter().all(|r| r.abs() <= self.max_offset + GEOMETRY_TOL)
            && self
                .offsets
                .windows(2)
                .all(|p| p[1] - p[0] >= self.min_spacing - GEOMETRY_TOL)
    }
}

fn check_feasible_config(count: usize, max_offset: f64, min_spacing: f64) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidInput("array needs at least one element".into()));
    }
    if !(max_offset >= 0.0) || !(min_spacing > 0.0) {
        return Err(Error::InvalidInput("max offset and min spacing must be positive".into()));
    }
    if (count as f64 - 1.0) * min_spacing > 2.0 * max_offset {
        return Err(Error::Infeasible(format!(
            "{count} elements need {} m but the segment is {} m long",
            (count as f64 - 1.0) * min_spacing,
            2.0 * max_offset
        )));
    }
    Ok(())
}

/// Maps arbitrary real offsets to the nearest-in-spirit feasible geometry.
///
/// Offsets are clipped to the segment and sorted, then a forward pass pushes
/// elements right until they respect `D_min` and a backward pass pulls them
/// back inside `D_off`. Feasible input is returned unchanged.
pub fn project_geometry(raw: &[f64], max_offset: f64, min_spacing: f64) -> Result<ArrayGeometry> {
    check_feasible_config(raw.len(), max_offset, min_spacing)?;
    let mut r: Vec<f64> = raw
        .iter()
        .map(|x| if x.is_finite() { x.clamp(-max_offset, max_offset) } else { 0.0 })
        .collect();
    r.sort_by(|a, b| a.total_cmp(b));
    for m in 1..r.len() {
        if r[m] - r[m - 1] < min_spacing {
            r[m] = r[m - 1] + min_spacing;
        }
    }
    let last = r.len() - 1;
    r[last] = r[last].min(max_offset);
    for m in (0..last).rev() {
        if r[m + 1] - r[m] < min_spacing {
            r[m] = r[m + 1] - min_spacing;
        }
    }
    Ok(ArrayGeometry {
        offsets: r,
        max_offset,
        min_spacing,
    })
}

/// Attitude deviation of a UAV plus the hovering heading ι of its array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Attitude {
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
    pub base_heading: f64,
}

impl Attitude {
    pub fn new(roll: f64, pitch: f64, yaw: f64, base_heading: f64) -> Self {
        Self {
            roll,
            pitch,
            yaw,
            base_heading: base_heading.rem_euclid(2.0 * PI),
        }
    }

    pub fn level(base_heading: f64) -> Self {
        Self::new(0.0, 0.0, 0.0, base_heading)
    }

    /// Array axis after the UAV's attitude and the active compensation.
    pub fn compensated_axis(&self) -> Vector3<f64> {
        let r = rotation_matrix(self);
        let (p, q) = compensation_inputs(&r, self.base_heading);
        let comp = compensation_angle(p, q);
        compensated_axis(&r, self.base_heading, comp.mu)
    }
}

/// `R = R_z(yaw) · R_y(pitch) · R_x(roll)`, written out entry by entry.
pub fn rotation_matrix(att: &Attitude) -> Matrix3<f64> {
    let (sf, cf) = att.roll.sin_cos();
    let (sp, cp) = att.pitch.sin_cos();
    let (sy, cy) = att.yaw.sin_cos();
    Matrix3::new(
        cp * cy,
        cy * sp * sf - sy * cf,
        cy * sp * cf + sy * sf,
        cp * sy,
        sy * sp * sf + cy * cf,
        sy * sp * cf - cy * sf,
        -sp,
        sf * cp,
        cf * cp,
    )
}

fn hover_axis(heading: f64) -> Vector3<f64> {
    Vector3::new(heading.cos(), heading.sin(), 0.0)
}

/// `P = -(R v)·e_z` and `Q = ((R l) × (R v))·e_z` with `v` the hovering array
/// direction and `l = e_z` the rotation axis of the segment.
pub fn compensation_inputs(rot: &Matrix3<f64>, heading: f64) -> (f64, f64) {
    let rv = rot * hover_axis(heading);
    let rl = rot * Vector3::z();
    (-rv.z, rl.cross(&rv).z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Compensation {
    pub mu: f64,
    /// Set when `P = Q = 0`; the array is already level and `mu` is 0.
    pub degenerate: bool,
}

/// Piecewise arctangent of `P/Q` selecting the quadrant from the signs.
pub fn compensation_angle(p: f64, q: f64) -> Compensation {
    let mu = if q > 0.0 {
        (p / q).atan()
    } else if q < 0.0 && p >= 0.0 {
        (p / q).atan() + PI
    } else if q < 0.0 {
        (p / q).atan() - PI
    } else if p > 0.0 {
        PI / 2.0
    } else if p < 0.0 {
        -PI / 2.0
    } else {
        return Compensation {
            mu: 0.0,
            degenerate: true,
        };
    };
    Compensation { mu, degenerate: false }
}

/// Rotates `R v` by `mu` about `R e_z` (Rodrigues; the axis is orthogonal to
/// the vector so the parallel term vanishes).
pub fn compensated_axis(rot: &Matrix3<f64>, heading: f64, mu: f64) -> Vector3<f64> {
    let x = rot * hover_axis(heading);
    let k = rot * Vector3::z();
    let (s, c) = mu.sin_cos();
    let along = k * k.dot(&x);
    x * c + k.cross(&x) * s + along * (1.0 - c)
}

/// Angle between the array axis and the line of sight to `node`, in `[0, π]`.
pub fn steering_angle(uav: &Vector3<f64>, axis: &Vector3<f64>, node: &Vector3<f64>) -> Result<f64> {
    let los = node - uav;
    let dist = los.norm();
    if !(dist > 0.0) {
        return Err(Error::InvalidInput("UAV and node positions coincide".into()));
    }
    let cos = (axis.dot(&los) / (dist * axis.norm())).clamp(-1.0, 1.0);
    Ok(cos.acos())
}

/// Per-element phase response `exp(j 2π/λ r_m cos θ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector(pub Vec<Complex64>);

impl SteeringVector {
    pub fn entries(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }
}

pub fn steering_vector(geometry: &ArrayGeometry, theta: f64, wavelength: f64) -> SteeringVector {
    steering_vector_cos(geometry.offsets(), theta.cos(), wavelength)
}

pub(crate) fn steering_vector_cos(offsets: &[f64], cos_theta: f64, wavelength: f64) -> SteeringVector {
    let k = 2.0 * PI / wavelength;
    SteeringVector(
        offsets
            .iter()
            .map(|r| Complex64::from_polar(1.0, k * r * cos_theta))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rx(a: f64) -> Matrix3<f64> {
        Matrix3::new(1.0, 0.0, 0.0, 0.0, a.cos(), -a.sin(), 0.0, a.sin(), a.cos())
    }
    fn ry(a: f64) -> Matrix3<f64> {
        Matrix3::new(a.cos(), 0.0, a.sin(), 0.0, 1.0, 0.0, -a.sin(), 0.0, a.cos())
    }
    fn rz(a: f64) -> Matrix3<f64> {
        Matrix3::new(a.cos(), -a.sin(), 0.0, a.sin(), a.cos(), 0.0, 0.0, 0.0, 1.0)
    }

    #[test]
    fn zero_attitude_is_identity() {
        assert_eq!(rotation_matrix(&Attitude::level(0.3)), Matrix3::identity());
    }

    #[test]
    fn pure_yaw_rotates_x_to_y() {
        let r = rotation_matrix(&Attitude::new(0.0, 0.0, PI / 2.0, 0.0));
        let v = r * Vector3::x();
        assert_relative_eq!(v, Vector3::y(), epsilon = 1e-15);
    }

    #[test]
    fn matches_elementary_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (f, p, y) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI));
            let r = rotation_matrix(&Attitude::new(f, p, y, 0.0));
            assert_relative_eq!(r, rz(y) * ry(p) * rx(f), epsilon = 1e-14);
        }
    }

    #[test]
    fn compensation_inputs_identity_and_yaw() {
        assert_eq!(compensation_inputs(&Matrix3::identity(), 1.1), (-0.0, 0.0));
        let (p, q) = compensation_inputs(&rotation_matrix(&Attitude::new(0.0, 0.0, 0.7, 0.0)), 0.4);
        assert!(p.abs() < 1e-15 && q.abs() < 1e-15);
    }

    #[test]
    fn compensation_inputs_pure_roll() {
        // R_x(30°) lifts v = e_y to (0, cos30, sin30) and maps l × v = -e_x to itself.
        let r = rotation_matrix(&Attitude::new(30f64.to_radians(), 0.0, 0.0, 0.0));
        let (p, q) = compensation_inputs(&r, PI / 2.0);
        assert_relative_eq!(p, -0.5, epsilon = 1e-15);
        assert_relative_eq!(q, 0.0, epsilon = 1e-15);
        // Same roll with the array along x: v stays level, l × v = e_y tilts up.
        let (p, q) = compensation_inputs(&r, 0.0);
        assert_relative_eq!(p, 0.0, epsilon = 1e-15);
        assert_relative_eq!(q, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn compensation_angle_cases() {
        assert_eq!(compensation_angle(1.0, 0.0).mu, PI / 2.0);
        assert_eq!(compensation_angle(-1.0, 0.0).mu, -PI / 2.0);
        assert_eq!(compensation_angle(0.0, 2.0).mu, 0.0);
        assert_relative_eq!(compensation_angle(1.0, -1.0).mu, 3.0 * PI / 4.0, epsilon = 1e-15);
        assert_relative_eq!(compensation_angle(-1.0, -1.0).mu, -3.0 * PI / 4.0, epsilon = 1e-15);
        let d = compensation_angle(0.0, 0.0);
        assert!(d.degenerate);
        assert_eq!(d.mu, 0.0);
    }

    #[test]
    fn compensation_angle_is_atan2() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let (p, q) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            assert_relative_eq!(compensation_angle(p, q).mu, p.atan2(q), epsilon = 1e-14);
        }
    }

    #[test]
    fn identity_axis_is_hover_direction() {
        let axis = Attitude::level(0.8).compensated_axis();
        assert_relative_eq!(axis, Vector3::new(0.8f64.cos(), 0.8f64.sin(), 0.0), epsilon = 1e-15);
    }

    #[test]
    fn roll_compensation_levels_axis() {
        let att = Attitude::new(30f64.to_radians(), 0.0, 0.0, PI / 2.0);
        let r = rotation_matrix(&att);
        let (p, q) = compensation_inputs(&r, att.base_heading);
        let mu = compensation_angle(p, q).mu;
        // The z component of the rotated axis is -P cos μ + Q sin μ.
        assert!((-p * mu.cos() + q * mu.sin()).abs() < 1e-15);
        let axis = compensated_axis(&r, att.base_heading, mu);
        assert!(axis.z.abs() < 1e-9);
        assert_relative_eq!(axis.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn steering_angle_cases() {
        let uav = Vector3::new(0.0, 0.0, 100.0);
        let axis = Vector3::x();
        assert_relative_eq!(steering_angle(&uav, &axis, &Vector3::new(50.0, 0.0, 100.0)).unwrap(), 0.0);
        assert_relative_eq!(
            steering_angle(&uav, &axis, &Vector3::new(0.0, 0.0, 0.0)).unwrap(),
            PI / 2.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            steering_angle(&uav, &axis, &Vector3::new(100.0, 0.0, 0.0)).unwrap(),
            PI / 4.0,
            epsilon = 1e-12
        );
        assert!(steering_angle(&uav, &axis, &uav).is_err());
    }

    #[test]
    fn steering_vector_cases() {
        let lambda = 0.125;
        let zeros = ArrayGeometry {
            offsets: vec![0.0; 4],
            max_offset: 0.625,
            min_spacing: 0.0,
        };
        for e in steering_vector(&zeros, 0.3, lambda).entries() {
            assert_relative_eq!(e.re, 1.0);
            assert_relative_eq!(e.im, 0.0);
        }
        let fa = ArrayGeometry::uniform(4, 0.625, 0.0625).unwrap();
        for e in steering_vector(&fa, PI / 2.0, lambda).entries() {
            assert_relative_eq!(e.re, 1.0, epsilon = 1e-12);
        }
        let two = ArrayGeometry::new(vec![0.0, lambda / 2.0], 0.625, 0.0625).unwrap();
        let a = steering_vector(&two, 0.0, lambda);
        assert_relative_eq!(a.0[0].re, 1.0);
        assert_relative_eq!(a.0[1].re, -1.0, epsilon = 1e-15);
        assert!(a.0[1].im.abs() < 1e-15);
    }

    #[test]
    fn uniform_layout_spans_segment() {
        let g = ArrayGeometry::uniform(4, 0.625, 0.0625).unwrap();
        assert_eq!(g.offsets().first(), Some(&-0.625));
        assert_relative_eq!(*g.offsets().last().unwrap(), 0.625);
        assert!(g.is_feasible());
        assert_eq!(ArrayGeometry::uniform(1, 0.625, 0.0625).unwrap().offsets(), &[0.0]);
    }

    #[test]
    fn geometry_validation() {
        assert!(ArrayGeometry::new(vec![0.0, 0.01], 0.625, 0.0625).is_err());
        assert!(ArrayGeometry::new(vec![0.0, 0.7], 0.625, 0.0625).is_err());
        assert!(ArrayGeometry::new(vec![-0.5, 0.0, 0.5], 0.625, 0.0625).is_ok());
    }

    #[test]
    fn projection_feasible_input_unchanged() {
        let input = [-0.5, -0.1, 0.2, 0.6];
        let g = project_geometry(&input, 0.625, 0.0625).unwrap();
        assert_eq!(g.offsets(), &input);
    }

    #[test]
    fn projection_all_zero_table_values() {
        let g = project_geometry(&[0.0; 4], 0.625, 0.0625).unwrap();
        assert!(g.is_feasible());
        for p in g.offsets().windows(2) {
            assert!(p[1] - p[0] >= 0.0625 - GEOMETRY_TOL);
        }
        for r in g.offsets() {
            assert!(r.abs() <= 0.625);
        }
    }

    #[test]
    fn projection_infeasible_count() {
        // 21 gaps of 0.0625 m exceed the 1.25 m segment; 20 gaps fit exactly.
        assert!(matches!(project_geometry(&[0.0; 22], 0.625, 0.0625), Err(Error::Infeasible(_))));
        let g = project_geometry(&[0.0; 21], 0.625, 0.0625).unwrap();
        assert!(g.is_feasible());
    }

    #[test]
    fn projection_packs_against_upper_edge() {
        let g = project_geometry(&[0.625, 0.625, 0.625], 0.625, 0.0625).unwrap();
        assert_relative_eq!(g.offsets()[2], 0.625);
        assert_relative_eq!(g.offsets()[0], 0.5);
    }
}
