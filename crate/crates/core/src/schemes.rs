//! Probe scheme definitions and their output statistics.
//!
//! Three dispersive probing configurations share the coupling `ktilde`:
//!
//! * **Single probe** ([`SingleProbe`]): one tone in one interferometer
//!   arm. The light phase reads the spin component `F_z`; the light's `S_z`
//!   fluctuations kick the spin back.
//! * **Two colour** ([`TwoColour`]): one tone per ground level with equal
//!   photon number, arranged so each tone reads the opposite-signed
//!   combination of `F_z`. The difference current doubles the signal while
//!   the mean back-action on the atoms cancels exactly.
//! * **Amplitude modulated** ([`AmFourFrequency`]): two carrier tones with
//!   modulation sidebands, four frequencies in total, probing both levels
//!   through one spatial mode. Balancing `ktilde_c * N_ph,c` across the
//!   two carriers cancels the mean atomic phase even for unequal
//!   couplings.
//!
//! Angle conventions here quote the phase operators as seen in the
//! detected interferometer quadratures. The moment pipeline
//! ([`output_light`](SingleProbe::output_light) etc.) uses the effective
//! read-out couplings of a balanced detection, which reproduce the closed
//! forms below; the closed forms themselves are cross-checked against the
//! exact counting statistics in [`crate::oracle`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{
    coherent_light_state, coherent_spin_state, output_beamsplitter, rotate_z, rotate_z_by_moments,
    MomentState, RotationAngle,
};

/// Largest tolerated deterministic phase excursion for the modulated
/// scheme, rad. Past this the single-sideband linearisation degrades.
pub const SMALL_ANGLE_LIMIT_RAD: f64 = 0.1;

fn require_positive(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "{name} must be finite and > 0, got {v}"
        )));
    }
    Ok(())
}

/// Single-tone Mach-Zehnder probe of one ground level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleProbe {
    /// Phase coupling per atom and photon.
    pub ktilde: f64,
    /// Atoms in the beam.
    pub n_atoms: f64,
    /// Photons in the probe pulse.
    pub n_photons: f64,
}

impl SingleProbe {
    /// Validated constructor.
    pub fn new(ktilde: f64, n_atoms: f64, n_photons: f64) -> Result<Self> {
        require_positive("n_atoms", n_atoms)?;
        require_positive("n_photons", n_photons)?;
        if !ktilde.is_finite() || ktilde == 0.0 {
            return Err(Error::InvalidInput(format!(
                "ktilde must be finite and non-zero, got {ktilde}"
            )));
        }
        Ok(SingleProbe {
            ktilde,
            n_atoms,
            n_photons,
        })
    }

    /// Measurement strength `kappa^2 = ktilde^2 N_at N_ph / 4`.
    pub fn measurement_strength(&self) -> f64 {
        0.25 * self.ktilde * self.ktilde * self.n_atoms * self.n_photons
    }

    /// Phase picked up by the light: `theta_ph = -2 ktilde F_z`
    /// (driver: the atomic state).
    pub fn light_phase(&self) -> RotationAngle {
        RotationAngle {
            offset: 0.0,
            coeffs: [0.0, 0.0, -2.0 * self.ktilde],
        }
    }

    /// Phase picked up by the atoms: `theta_at = 2 ktilde S_z`
    /// (driver: the light state).
    pub fn atom_phase(&self) -> RotationAngle {
        RotationAngle {
            offset: 0.0,
            coeffs: [0.0, 0.0, 2.0 * self.ktilde],
        }
    }

    /// Light state after the cell and the detection beamsplitter, from the
    /// moment pipeline with the balanced read-out coupling `-ktilde F_z`.
    /// The read-out quadrature lands on the third component.
    pub fn output_light(&self) -> MomentState {
        let light = coherent_light_state(self.n_photons);
        let atoms = coherent_spin_state(self.n_atoms);
        let readout = RotationAngle {
            offset: 0.0,
            coeffs: [0.0, 0.0, -self.ktilde],
        };
        output_beamsplitter(&rotate_z(&light, &readout, &atoms))
    }

    /// Variance of the detected quadrature from the moment pipeline.
    pub fn output_variance(&self) -> f64 {
        self.output_light().variance(2)
    }

    /// Closed form for the same quantity:
    /// `Var S_y^out = (N_ph / 4)(1 + kappa^2)`.
    pub fn output_variance_formula(&self) -> f64 {
        0.25 * self.n_photons * (1.0 + self.measurement_strength())
    }

    /// Atomic state after the pulse: `F_z` is untouched, the conjugate
    /// `F_y` inflates by the light's `S_z` shot noise.
    pub fn output_atoms(&self) -> MomentState {
        let atoms = coherent_spin_state(self.n_atoms);
        let light = coherent_light_state(self.n_photons);
        rotate_z(&atoms, &self.atom_phase(), &light)
    }

    /// Conditional spin variance after an ideal (lossless) read-out:
    /// `(N_at / 4) / (1 + kappa^2)`.
    pub fn conditional_spin_variance(&self) -> f64 {
        0.25 * self.n_atoms / (1.0 + self.measurement_strength())
    }
}

/// Two-colour probe, one tone per ground level, equal photon number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoColour {
    /// Phase coupling of the tone addressing `f = 4`; the `f = 3` tone is
    /// arranged to have the same magnitude.
    pub ktilde4: f64,
    /// Atoms in the beam.
    pub n_atoms: f64,
    /// Photons per tone.
    pub n_photons_per_colour: f64,
}

impl TwoColour {
    /// Validated constructor.
    pub fn new(ktilde4: f64, n_atoms: f64, n_photons_per_colour: f64) -> Result<Self> {
        require_positive("n_atoms", n_atoms)?;
        require_positive("n_photons_per_colour", n_photons_per_colour)?;
        if !ktilde4.is_finite() || ktilde4 == 0.0 {
            return Err(Error::InvalidInput(format!(
                "ktilde4 must be finite and non-zero, got {ktilde4}"
            )));
        }
        Ok(TwoColour {
            ktilde4,
            n_atoms,
            n_photons_per_colour,
        })
    }

    /// Measurement strength per tone, `kappa^2 = ktilde4^2 N_at N_ph / 4`
    /// with `N_ph` the photons per tone.
    pub fn measurement_strength(&self) -> f64 {
        0.25 * self.ktilde4 * self.ktilde4 * self.n_atoms * self.n_photons_per_colour
    }

    /// Phase of the tone probing level `f = 3`:
    /// `theta_ph,3 = -ktilde4 (N_at/2 - F_z)`.
    pub fn light_phase_f3(&self) -> RotationAngle {
        RotationAngle {
            offset: -0.5 * self.ktilde4 * self.n_atoms,
            coeffs: [0.0, 0.0, self.ktilde4],
        }
    }

    /// Phase of the tone probing level `f = 4`:
    /// `theta_ph,4 = -ktilde4 (N_at/2 + F_z)`.
    pub fn light_phase_f4(&self) -> RotationAngle {
        RotationAngle {
            offset: -0.5 * self.ktilde4 * self.n_atoms,
            coeffs: [0.0, 0.0, -self.ktilde4],
        }
    }

    /// Mean phase imprinted on the atoms. The two tones contribute
    /// `+-ktilde4 N_ph / 2` with equal photon numbers by construction, so
    /// the mean back-action cancels identically.
    pub fn mean_atom_phase(&self) -> f64 {
        0.0
    }

    /// Variance of the atomic phase: both tones' `S_z` shot noise adds,
    /// `ktilde4^2 N_ph / 2`.
    pub fn atom_phase_variance(&self) -> f64 {
        2.0 * self.ktilde4 * self.ktilde4 * 0.25 * self.n_photons_per_colour
    }

    /// Atomic state after the pulse; `Var F_y` grows by `2 kappa^2` while
    /// the mean stays on the equator.
    pub fn output_atoms(&self) -> MomentState {
        let atoms = coherent_spin_state(self.n_atoms);
        rotate_z_by_moments(&atoms, self.mean_atom_phase(), self.atom_phase_variance())
    }

    /// One tone's light state after the cell (includes the deterministic
    /// common phase `-ktilde4 N_at / 2`, which the difference detection
    /// rejects). `colour` is 3 or 4.
    pub fn output_light(&self, colour: u8) -> MomentState {
        let light = coherent_light_state(self.n_photons_per_colour);
        let atoms = coherent_spin_state(self.n_atoms);
        let angle = match colour {
            3 => self.light_phase_f3(),
            4 => self.light_phase_f4(),
            other => panic!("colour must be 3 or 4, got {other}"),
        };
        rotate_z(&light, &angle, &atoms)
    }

    /// Closed form for the variance of the difference photocurrent:
    /// `Var i_- = 2 N_ph [1 + 2 kappa^2 (1 + N_at / (2 N_ph))]`.
    pub fn difference_current_variance(&self) -> f64 {
        let k2 = self.measurement_strength();
        let nph = self.n_photons_per_colour;
        2.0 * nph * (1.0 + 2.0 * k2 * (1.0 + self.n_atoms / (2.0 * nph)))
    }
}

/// Four-frequency amplitude-modulated probe: two carriers (one per ground
/// level) with +-1 modulation sidebands, all in one spatial mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmFourFrequency {
    /// Coupling of the carrier addressing `f = 3`.
    pub ktilde3: f64,
    /// Coupling of the carrier addressing `f = 4`.
    pub ktilde4: f64,
    /// Atoms in the beam.
    pub n_atoms: f64,
    /// Photons in the `f = 3` carrier.
    pub n_ph3: f64,
    /// Photons in the `f = 4` carrier.
    pub n_ph4: f64,
}

impl AmFourFrequency {
    /// Validated constructor. Requires the back-action balance
    /// `ktilde3 N_ph,3 = ktilde4 N_ph,4` (to 1e-9 relative) and the
    /// small-angle condition `|2 ktilde_c N_at| <= 0.1` for both carriers.
    pub fn new(ktilde3: f64, ktilde4: f64, n_atoms: f64, n_ph3: f64, n_ph4: f64) -> Result<Self> {
        require_positive("n_atoms", n_atoms)?;
        require_positive("n_ph3", n_ph3)?;
        require_positive("n_ph4", n_ph4)?;
        for (name, kt) in [("ktilde3", ktilde3), ("ktilde4", ktilde4)] {
            if !kt.is_finite() || kt == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and non-zero, got {kt}"
                )));
            }
        }
        let (b3, b4) = (ktilde3 * n_ph3, ktilde4 * n_ph4);
        let scale = b3.abs().max(b4.abs());
        if (b3 - b4).abs() > 1.0e-9 * scale {
            return Err(Error::InvalidInput(format!(
                "carriers are unbalanced: ktilde3*N_ph3 = {b3:e} vs ktilde4*N_ph4 = {b4:e}; \
                 the modulated scheme requires ktilde3 N_ph3 = ktilde4 N_ph4"
            )));
        }
        for (name, kt) in [("carrier 3", ktilde3), ("carrier 4", ktilde4)] {
            let phase = (2.0 * kt * n_atoms).abs();
            if phase > SMALL_ANGLE_LIMIT_RAD {
                return Err(Error::Domain(format!(
                    "small-angle approximation violated for {name}: \
                     |2 ktilde N_at| = {phase:.3} rad exceeds {SMALL_ANGLE_LIMIT_RAD}"
                )));
            }
        }
        Ok(AmFourFrequency {
            ktilde3,
            ktilde4,
            n_atoms,
            n_ph3,
            n_ph4,
        })
    }

    /// Balanced constructor: picks `N_ph,3 = ktilde4 N_ph,4 / ktilde3`.
    pub fn balanced(ktilde3: f64, ktilde4: f64, n_atoms: f64, n_ph4: f64) -> Result<Self> {
        let n_ph3 = ktilde4 * n_ph4 / ktilde3;
        Self::new(ktilde3, ktilde4, n_atoms, n_ph3, n_ph4)
    }

    /// Measurement strength of the modulated read-out:
    /// `kappa^2 = 4 (ktilde3^2 N_ph,3 + ktilde4^2 N_ph,4) N_at`.
    pub fn measurement_strength(&self) -> f64 {
        4.0 * (self.ktilde3 * self.ktilde3 * self.n_ph3 + self.ktilde4 * self.ktilde4 * self.n_ph4)
            * self.n_atoms
    }

    /// Atomic phase operator of the demodulated read-out:
    /// `theta_at = 2 ktilde3 (N_ph,3/2 + S_z3) - 2 ktilde4 (N_ph,4/2 + S_z4)`.
    /// Mean: `ktilde3 N_ph,3 - ktilde4 N_ph,4`, exactly zero when balanced.
    pub fn mean_atom_phase(&self) -> f64 {
        self.ktilde3 * self.n_ph3 - self.ktilde4 * self.n_ph4
    }

    /// Variance of the demodulated atomic phase operator: the `2 ktilde_c`
    /// couplings to each carrier's `S_z` shot noise give
    /// `ktilde3^2 N_ph,3 + ktilde4^2 N_ph,4`.
    pub fn atom_phase_variance(&self) -> f64 {
        self.ktilde3 * self.ktilde3 * self.n_ph3 + self.ktilde4 * self.ktilde4 * self.n_ph4
    }

    /// Atomic state after the pulse. The effective read-out couplings are
    /// `+-4 ktilde_c` on the carriers' `S_z`, so
    /// `Var F_y -> (N_at/4)(1 + kappa^2)` while the mean phase cancels.
    pub fn output_atoms(&self) -> MomentState {
        let atoms = coherent_spin_state(self.n_atoms);
        let var_eff = 4.0
            * (self.ktilde3 * self.ktilde3 * self.n_ph3 + self.ktilde4 * self.ktilde4 * self.n_ph4);
        rotate_z_by_moments(&atoms, 2.0 * self.mean_atom_phase(), var_eff)
    }

    /// Closed form for the variance of the demodulated difference phase
    /// signal: `2 N_ph,4 [1 + kappa^2 (1 + N_at / (2 N_ph,4))]`.
    pub fn difference_signal_variance(&self) -> f64 {
        let k2 = self.measurement_strength();
        2.0 * self.n_ph4 * (1.0 + k2 * (1.0 + self.n_atoms / (2.0 * self.n_ph4)))
    }
}
