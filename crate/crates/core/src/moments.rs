//! Gaussian moment propagation for collective spin and Stokes vectors.
//!
//! Both the atomic pseudospin `F = (F_x, F_y, F_z)` and the light Stokes
//! vector `S = (S_x, S_y, S_z)` are carried as a mean vector plus a 3x3
//! covariance matrix. Probe interactions act as small rotations about `z`
//! whose angle is itself an operator: a constant offset plus a linear
//! combination of the conjugate system's components. To lowest order the
//! mean rotates by the mean angle while the angle's variance feeds the
//! covariance through the rotation generator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 3x3 matrix as nested arrays, row major.
pub type Mat3 = [[f64; 3]; 3];

/// 3-vector.
pub type Vec3 = [f64; 3];

/// Mean vector and covariance matrix of one collective variable triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentState {
    /// First moments `(x, y, z)`.
    pub mean: Vec3,
    /// Symmetric second moments about the mean.
    pub cov: Mat3,
}

fn mat_vec(m: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    out
}

fn mat_mat(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

fn transpose(m: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i];
        }
    }
    out
}

impl MomentState {
    /// State with given mean and diagonal covariance.
    pub fn with_diagonal(mean: Vec3, var: Vec3) -> Self {
        MomentState {
            mean,
            cov: [[var[0], 0.0, 0.0], [0.0, var[1], 0.0], [0.0, 0.0, var[2]]],
        }
    }

    /// Variance of one component (diagonal covariance entry).
    pub fn variance(&self, axis: usize) -> f64 {
        self.cov[axis][axis]
    }

    /// Apply an exact linear map `v -> M v`: mean -> `M mean`,
    /// covariance -> `M cov M^T`.
    pub fn linear_map(&self, m: &Mat3) -> MomentState {
        MomentState {
            mean: mat_vec(m, &self.mean),
            cov: mat_mat(&mat_mat(m, &self.cov), &transpose(m)),
        }
    }
}

/// Coherent state of the collective pseudospin, polarised along `+x`:
/// `<F> = (N/2, 0, 0)`, transverse variances `N/4`.
pub fn coherent_spin_state(n_atoms: f64) -> MomentState {
    MomentState::with_diagonal(
        [0.5 * n_atoms, 0.0, 0.0],
        [0.0, 0.25 * n_atoms, 0.25 * n_atoms],
    )
}

/// Coherent probe pulse polarised along `+x` in Stokes space:
/// `<S> = (N_ph/2, 0, 0)`, transverse variances `N_ph/4`.
pub fn coherent_light_state(n_photons: f64) -> MomentState {
    coherent_spin_state(n_photons)
}

/// A stochastic small rotation angle about `z`:
/// `theta = offset + sum_i coeffs[i] * v_i`, with `v` the conjugate
/// system's variable triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationAngle {
    /// Deterministic part of the angle, rad.
    pub offset: f64,
    /// Linear coupling to the conjugate system's components.
    pub coeffs: Vec3,
}

impl RotationAngle {
    /// Mean angle given the conjugate system's state.
    pub fn mean(&self, driver: &MomentState) -> f64 {
        self.offset
            + self.coeffs[0] * driver.mean[0]
            + self.coeffs[1] * driver.mean[1]
            + self.coeffs[2] * driver.mean[2]
    }

    /// Angle variance: the quadratic form `c^T Cov c` of the conjugate
    /// system's covariance.
    pub fn variance(&self, driver: &MomentState) -> f64 {
        let c = &self.coeffs;
        let cv = mat_vec(&driver.cov, c);
        c[0] * cv[0] + c[1] * cv[1] + c[2] * cv[2]
    }
}

fn rotation_z(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

/// Rotate `state` about `z` by a stochastic angle with the given mean and
/// variance. The mean rotates the state exactly; the angle's variance adds
/// rank-one noise along the generator direction evaluated at the rotated
/// mean, `G R(theta) mean = (-mean_y', mean_x', 0)`.
pub fn rotate_z_by_moments(state: &MomentState, mean_angle: f64, var_angle: f64) -> MomentState {
    let rotated = state.linear_map(&rotation_z(mean_angle));
    let g = [-rotated.mean[1], rotated.mean[0], 0.0];
    let mut cov = rotated.cov;
    for i in 0..3 {
        for j in 0..3 {
            cov[i][j] += var_angle * g[i] * g[j];
        }
    }
    MomentState {
        mean: rotated.mean,
        cov,
    }
}

/// Rotate `state` about `z` by the stochastic angle `angle` driven by
/// `driver`.
pub fn rotate_z(state: &MomentState, angle: &RotationAngle, driver: &MomentState) -> MomentState {
    rotate_z_by_moments(state, angle.mean(driver), angle.variance(driver))
}

/// Fixed change of Stokes basis applied by the detection beamsplitter:
/// `(S_x, S_y, S_z) -> (S_z, -S_x, -S_y)`. Orthogonal, so it maps moments
/// exactly.
pub fn output_beamsplitter(state: &MomentState) -> MomentState {
    const M: Mat3 = [[0.0, 0.0, 1.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0]];
    state.linear_map(&M)
}

/// Validate that a covariance matrix is symmetric with non-negative
/// diagonal (cheap sanity check for user-supplied states).
pub fn validate_covariance(cov: &Mat3) -> Result<()> {
    for i in 0..3 {
        if cov[i][i] < 0.0 {
            return Err(Error::InvalidInput(format!(
                "covariance diagonal entry {i} is negative: {}",
                cov[i][i]
            )));
        }
        for j in (i + 1)..3 {
            let asym = (cov[i][j] - cov[j][i]).abs();
            let scale = cov[i][i].abs().max(cov[j][j].abs()).max(1.0);
            if asym > 1.0e-9 * scale {
                return Err(Error::InvalidInput(format!(
                    "covariance is not symmetric at ({i},{j}): {} vs {}",
                    cov[i][j], cov[j][i]
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn coherent_states_have_projection_noise() {
        let f = coherent_spin_state(1.0e6);
        assert_eq!(f.mean, [5.0e5, 0.0, 0.0]);
        assert_eq!(f.variance(1), 2.5e5);
        assert_eq!(f.variance(2), 2.5e5);
        assert_eq!(f.variance(0), 0.0);
    }

    #[test]
    fn deterministic_rotation_moves_mean_and_preserves_trace() {
        let s = coherent_light_state(4.0e4);
        let angle = RotationAngle {
            offset: 0.3,
            coeffs: [0.0, 0.0, 0.0],
        };
        let out = rotate_z(&s, &angle, &coherent_spin_state(1.0)); // driver unused
        assert_relative_eq!(out.mean[0], 2.0e4 * 0.3_f64.cos(), max_relative = 1.0e-14);
        assert_relative_eq!(out.mean[1], 2.0e4 * 0.3_f64.sin(), max_relative = 1.0e-14);
        let tr_in: f64 = (0..3).map(|i| s.cov[i][i]).sum();
        let tr_out: f64 = (0..3).map(|i| out.cov[i][i]).sum();
        assert_relative_eq!(tr_in, tr_out, max_relative = 1.0e-12);
    }

    #[test]
    fn stochastic_angle_adds_rank_one_noise() {
        // Light rotated by theta = c * F_z picks up variance
        // c^2 Var(F_z) <S_x>^2 in S_y.
        let n_ph = 1.0e8;
        let n_at = 1.0e6;
        let light = coherent_light_state(n_ph);
        let atoms = coherent_spin_state(n_at);
        let c = 3.0e-8;
        let angle = RotationAngle {
            offset: 0.0,
            coeffs: [0.0, 0.0, c],
        };
        let out = rotate_z(&light, &angle, &atoms);
        let expected = 0.25 * n_ph + c * c * 0.25 * n_at * (0.5 * n_ph) * (0.5 * n_ph);
        assert_relative_eq!(out.variance(1), expected, max_relative = 1.0e-12);
        // Mean unchanged: the driver is centred.
        assert_abs_diff_eq!(out.mean[1], 0.0);
        assert_relative_eq!(out.mean[0], 0.5 * n_ph, max_relative = 1.0e-14);
    }

    #[test]
    fn angle_variance_is_quadratic_form() {
        let mut driver = coherent_spin_state(400.0);
        driver.cov[1][2] = 7.0;
        driver.cov[2][1] = 7.0;
        let angle = RotationAngle {
            offset: 0.1,
            coeffs: [0.0, 2.0, -1.0],
        };
        // c^T Cov c = 4*100 + 1*100 + 2*2*(-1)*7.
        assert_relative_eq!(
            angle.variance(&driver),
            400.0 + 100.0 - 28.0,
            max_relative = 1.0e-14
        );
        assert_relative_eq!(angle.mean(&driver), 0.1, max_relative = 1.0e-14);
    }

    #[test]
    fn beamsplitter_permutes_components() {
        let mut s = coherent_light_state(100.0);
        s.mean = [1.0, 2.0, 3.0];
        let out = output_beamsplitter(&s);
        assert_eq!(out.mean, [3.0, -1.0, -2.0]);
        // Applying the map three times with alternating signs returns the
        // original variances (orthogonality).
        let tr_in: f64 = (0..3).map(|i| s.cov[i][i]).sum();
        let tr_out: f64 = (0..3).map(|i| out.cov[i][i]).sum();
        assert_eq!(tr_in, tr_out);
    }

    #[test]
    fn covariance_validation() {
        let good = coherent_spin_state(10.0).cov;
        validate_covariance(&good).unwrap();
        let mut bad = good;
        bad[0][1] = 1.0;
        assert!(validate_covariance(&bad).is_err());
        let mut neg = good;
        neg[1][1] = -0.5;
        assert!(validate_covariance(&neg).is_err());
    }

    proptest! {
        #[test]
        fn rotation_preserves_covariance_trace_and_mean_norm(
            theta in -1.0f64..1.0,
            n in 1.0e2f64..1.0e8,
        ) {
            let s = coherent_spin_state(n);
            let angle = RotationAngle { offset: theta, coeffs: [0.0, 0.0, 0.0] };
            let out = rotate_z(&s, &angle, &coherent_light_state(1.0));
            let norm_in = s.mean.iter().map(|v| v * v).sum::<f64>().sqrt();
            let norm_out = out.mean.iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!((norm_in - norm_out).abs() <= 1.0e-9 * norm_in);
            let tr_in: f64 = (0..3).map(|i| s.cov[i][i]).sum();
            let tr_out: f64 = (0..3).map(|i| out.cov[i][i]).sum();
            prop_assert!((tr_in - tr_out).abs() <= 1.0e-9 * tr_in);
        }

        #[test]
        fn stochastic_noise_is_positive_semidefinite_on_diagonal(
            c in -1.0e-3f64..1.0e-3,
            n_at in 1.0e2f64..1.0e6,
            n_ph in 1.0e2f64..1.0e6,
        ) {
            let light = coherent_light_state(n_ph);
            let atoms = coherent_spin_state(n_at);
            let angle = RotationAngle { offset: 0.0, coeffs: [0.0, 0.0, c] };
            let out = rotate_z(&light, &angle, &atoms);
            for i in 0..3 {
                prop_assert!(out.cov[i][i] >= -1.0e-12);
            }
            // Variance never decreases under an uncertain rotation.
            prop_assert!(out.variance(1) + 1.0e-12 >= light.variance(1));
        }
    }
}
