//! Dispersive atom-light coupling for far-detuned probing.
//!
//! Central quantity: the single-atom, single-photon phase coupling
//!
//! ```text
//! ktilde(delta) = (sigma0 / A) * x / (1 + x^2),    x = 2 delta / gamma,
//! ```
//!
//! with `sigma0 = lambda^2 / 2 pi` and `A` the effective beam area. From it
//! derive the measurement strength `kappa^2 = ktilde^2 N_at N_ph / 4`, the
//! spontaneous-scattering probability `eta`, refractive-index profiles and
//! probe-induced level shifts. Full spectra sum the coupling over the four
//! hyperfine components; a guard window around each component rejects
//! evaluations where the dispersive model does not hold.

use serde::{Deserialize, Serialize};

use crate::constants::TransitionLine;
use crate::error::{Error, Result};
use crate::units::{HBAR, TWO_PI};

/// Sum of pi-component strengths seen from either ground level; also the
/// level-population fraction of a balanced ensemble.
pub const LEVEL_STRENGTH: f64 = 0.5;

/// Half-width of the guard window around each component, in units of the
/// natural linewidth. Evaluations closer than this to a resonance are
/// rejected as outside the dispersive model's domain.
pub const RESONANCE_GUARD_LINEWIDTHS: f64 = 1.0e-3;

/// Probe beam geometry. The effective interaction area of a Gaussian beam
/// of waist `w` (1/e^2 intensity radius) is `A = pi w^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamGeometry {
    /// Beam waist, metres.
    pub waist_m: f64,
}

impl BeamGeometry {
    /// Construct from a waist in metres.
    pub fn new(waist_m: f64) -> Result<Self> {
        if !waist_m.is_finite() || waist_m <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "beam waist must be finite and > 0, got {waist_m}"
            )));
        }
        Ok(BeamGeometry { waist_m })
    }

    /// Effective beam area `pi w^2`, m^2.
    pub fn effective_area_m2(&self) -> f64 {
        std::f64::consts::PI * self.waist_m * self.waist_m
    }
}

/// Atomic ensemble inside the probe beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ensemble {
    /// Number of atoms inside the beam.
    pub n_atoms: f64,
    /// Length of the illuminated column, metres.
    pub length_m: f64,
    /// Optional number density, m^-3. When present it must be consistent
    /// with `n_atoms = density * area * length`.
    pub density_per_m3: Option<f64>,
}

impl Ensemble {
    /// Build an ensemble from an explicit atom number.
    pub fn from_atom_number(n_atoms: f64, length_m: f64) -> Result<Self> {
        let e = Ensemble {
            n_atoms,
            length_m,
            density_per_m3: None,
        };
        e.validate_basic()?;
        Ok(e)
    }

    /// Build an ensemble from a density, deriving the atom number.
    pub fn from_density(density_per_m3: f64, length_m: f64, geom: &BeamGeometry) -> Result<Self> {
        if !density_per_m3.is_finite() || density_per_m3 <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "density must be finite and > 0, got {density_per_m3}"
            )));
        }
        let n_atoms = density_per_m3 * geom.effective_area_m2() * length_m;
        let e = Ensemble {
            n_atoms,
            length_m,
            density_per_m3: Some(density_per_m3),
        };
        e.validate_basic()?;
        Ok(e)
    }

    fn validate_basic(&self) -> Result<()> {
        if !self.n_atoms.is_finite() || self.n_atoms <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "atom number must be finite and > 0, got {}",
                self.n_atoms
            )));
        }
        if !self.length_m.is_finite() || self.length_m <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "column length must be finite and > 0, got {}",
                self.length_m
            )));
        }
        Ok(())
    }

    /// Check internal consistency, including `n = density * A * l` when a
    /// density is present (to 0.1% relative).
    pub fn validate(&self, geom: &BeamGeometry) -> Result<()> {
        self.validate_basic()?;
        if let Some(n) = self.density_per_m3 {
            let expected = n * geom.effective_area_m2() * self.length_m;
            let rel = (self.n_atoms - expected).abs() / expected;
            if rel > 1.0e-3 {
                return Err(Error::InvalidInput(format!(
                    "atom number {} disagrees with density * area * length = {expected:.6e} \
                     (relative error {rel:.2e})",
                    self.n_atoms
                )));
            }
        }
        Ok(())
    }
}

/// Normalised dispersive line shape `x / (1 + x^2)`; peaks at +-1/2 for
/// `x = +-1` and falls off as `1/x` far from resonance.
#[inline]
pub fn dispersive_response(x: f64) -> f64 {
    x / (1.0 + x * x)
}

/// Single-component phase coupling per atom and photon at detuning
/// `delta` (rad/s) from that component.
pub fn coupling_constant(line: &TransitionLine, geom: &BeamGeometry, delta_rad_s: f64) -> f64 {
    let x = 2.0 * delta_rad_s / line.linewidth_rad_s;
    line.resonant_cross_section() / geom.effective_area_m2() * dispersive_response(x)
}

/// Largest attainable `|ktilde|`, reached at `|delta| = gamma / 2`:
/// `lambda^2 / (4 pi A)`.
pub fn coupling_peak(line: &TransitionLine, geom: &BeamGeometry) -> f64 {
    0.5 * line.resonant_cross_section() / geom.effective_area_m2()
}

/// Resonant optical depth `d = sigma0 N_at / A` of the ensemble.
pub fn optical_depth(line: &TransitionLine, geom: &BeamGeometry, n_atoms: f64) -> f64 {
    line.resonant_cross_section() * n_atoms / geom.effective_area_m2()
}

/// Spontaneous-scattering probability per atom for a pulse of `n_photons`
/// at detuning `delta` from the probed component:
/// `eta = N_ph (sigma0 / A) * S / (1 + x^2)` with `S = 1/2` the summed
/// strength seen from one ground level. Values above 0.5 are outside the
/// perturbative regime and logged as a warning.
pub fn scattering_probability(
    line: &TransitionLine,
    geom: &BeamGeometry,
    n_photons: f64,
    delta_rad_s: f64,
) -> f64 {
    let x = 2.0 * delta_rad_s / line.linewidth_rad_s;
    let eta = n_photons * line.resonant_cross_section() / geom.effective_area_m2() * LEVEL_STRENGTH
        / (1.0 + x * x);
    if eta > 0.5 {
        log::warn!("scattering probability eta = {eta:.3} exceeds 0.5; results are perturbative");
    }
    eta
}

/// Measurement strength `kappa^2 = ktilde^2 N_at N_ph / 4` of a single
/// probe at detuning `delta`.
pub fn measurement_strength(
    line: &TransitionLine,
    geom: &BeamGeometry,
    n_atoms: f64,
    n_photons: f64,
    delta_rad_s: f64,
) -> f64 {
    let kt = coupling_constant(line, geom, delta_rad_s);
    0.25 * kt * kt * n_atoms * n_photons
}

/// Phase coupling of one ground level at probe frequency `omega_rel`
/// (relative to the clock-pair midpoint), summed over that level's two
/// components with their strengths. Fails inside the resonance guard
/// window of any component with non-zero strength.
pub fn level_coupling(
    line: &TransitionLine,
    geom: &BeamGeometry,
    omega_rel: f64,
    ground_f: u8,
) -> Result<f64> {
    guard_resonances(line, omega_rel)?;
    Ok(level_coupling_unguarded(line, geom, omega_rel, ground_f))
}

fn level_coupling_unguarded(
    line: &TransitionLine,
    geom: &BeamGeometry,
    omega_rel: f64,
    ground_f: u8,
) -> f64 {
    let prefactor = line.resonant_cross_section() / geom.effective_area_m2();
    line.components_of_level(ground_f)
        .iter()
        .map(|c| {
            let x = 2.0 * (omega_rel - c.omega_rel) / line.linewidth_rad_s;
            c.strength * dispersive_response(x)
        })
        .sum::<f64>()
        * prefactor
}

/// Error if `omega_rel` lies within the guard window of any component with
/// non-zero strength.
pub fn guard_resonances(line: &TransitionLine, omega_rel: f64) -> Result<()> {
    let window = RESONANCE_GUARD_LINEWIDTHS * line.linewidth_rad_s;
    for c in line.components() {
        if c.strength > 0.0 && (omega_rel - c.omega_rel).abs() < window {
            return Err(Error::Domain(format!(
                "probe frequency within {RESONANCE_GUARD_LINEWIDTHS} linewidths of the \
                 {} -> {}' component",
                c.ground_f, c.excited_f
            )));
        }
    }
    Ok(())
}

/// Refractive index seen by a probe at the operating point, retaining only
/// the part driven by the population imbalance `2 <F_z> = N_4 - N_3`:
/// `n = 1 - (lambda / 2 pi l) * 2 <F_z> * ktilde(delta34)` with `delta34`
/// the detuning from the highest (3 -> 4') component. A balanced ensemble
/// (`<F_z> = 0`) has index exactly 1 here.
pub fn refractive_index(
    line: &TransitionLine,
    geom: &BeamGeometry,
    ensemble: &Ensemble,
    omega_rel: f64,
    mean_fz: f64,
) -> f64 {
    let delta34 = omega_rel - line.half_span_rad_s();
    let kt = coupling_constant(line, geom, delta34);
    1.0 - line.wavelength_m / (TWO_PI * ensemble.length_m) * 2.0 * mean_fz * kt
}

/// Refractive index of a balanced ensemble (`N_4 = N_3 = N/2`) summing all
/// four components: `n = 1 - (lambda / 2 pi l) (N/2)(kt_4 + kt_3)`.
pub fn balanced_index(
    line: &TransitionLine,
    geom: &BeamGeometry,
    ensemble: &Ensemble,
    omega_rel: f64,
) -> Result<f64> {
    let kt4 = level_coupling(line, geom, omega_rel, 4)?;
    let kt3 = level_coupling(line, geom, omega_rel, 3)?;
    let half_n = 0.5 * ensemble.n_atoms;
    Ok(1.0 - line.wavelength_m / (TWO_PI * ensemble.length_m) * half_n * (kt4 + kt3))
}

/// `n - 1` of a balanced vapour of number density `rho` (m^-3); the column
/// geometry cancels: `n - 1 = -(lambda / 2 pi) rho sigma0 sum_g f_g D_g`.
pub fn balanced_index_from_density(
    line: &TransitionLine,
    density_per_m3: f64,
    omega_rel: f64,
) -> Result<f64> {
    guard_resonances(line, omega_rel)?;
    let sum: f64 = line
        .components()
        .iter()
        .map(|c| {
            let x = 2.0 * (omega_rel - c.omega_rel) / line.linewidth_rad_s;
            c.strength * dispersive_response(x)
        })
        .sum();
    Ok(-line.wavelength_m / TWO_PI
        * density_per_m3
        * line.resonant_cross_section()
        * LEVEL_STRENGTH
        * sum)
}

/// Frequency (relative to the clock-pair midpoint) at which the balanced
/// four-component index crosses 1, found by bisection between the two
/// inner components. Deterministic: fixed 200 iterations.
pub fn zero_index_frequency(line: &TransitionLine, geom: &BeamGeometry) -> Result<f64> {
    let comps = line.components();
    let window = 10.0 * RESONANCE_GUARD_LINEWIDTHS * line.linewidth_rad_s;
    let lo = comps[1].omega_rel + window;
    let hi = comps[2].omega_rel - window;
    let sum_kt = |w: f64| -> f64 {
        level_coupling_unguarded(line, geom, w, 4) + level_coupling_unguarded(line, geom, w, 3)
    };
    crate::optimize::bisect_root(sum_kt, lo, hi, 200)
}

/// Probe-induced shift of one ground level, rad/s, for beam power `power_w`
/// at frequency `omega_rel`: `shift_g = (R_ph / 2) ktilde_g` with
/// `R_ph = P / (hbar omega_opt)` the photon flux.
pub fn level_shift(
    line: &TransitionLine,
    geom: &BeamGeometry,
    power_w: f64,
    omega_rel: f64,
    ground_f: u8,
) -> Result<f64> {
    let flux = power_w / (HBAR * line.optical_frequency_rad_s());
    Ok(0.5 * flux * level_coupling(line, geom, omega_rel, ground_f)?)
}

/// Differential shift of the ground doublet, `shift_4 - shift_3`, rad/s.
pub fn differential_light_shift(
    line: &TransitionLine,
    geom: &BeamGeometry,
    power_w: f64,
    omega_rel: f64,
) -> Result<f64> {
    Ok(level_shift(line, geom, power_w, omega_rel, 4)?
        - level_shift(line, geom, power_w, omega_rel, 3)?)
}
