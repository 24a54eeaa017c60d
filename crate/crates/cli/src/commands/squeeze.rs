//! `squeeze`: squeezing estimate for one probing scenario.

use std::path::Path;

use serde::Serialize;
use spinsqueeze::units::{cm_to_m, mhz_to_rad_s, per_cm3_to_per_m3, um_to_m};
use spinsqueeze::{
    coupling_constant, optical_depth, scattering_probability, xi_squared, AmFourFrequency,
    BeamGeometry, Ensemble, SingleProbe, SqueezingFormula, TwoColour,
};

use crate::commands::CliError;
use crate::config::{load_json, load_line, ScenarioConfig, SchemeKind};
use crate::output::emit;

/// Single-line JSON report; field order is the output order.
#[derive(Serialize)]
struct SqueezeReport {
    scheme: &'static str,
    formula: &'static str,
    n_atoms: f64,
    n_photons_per_tone: f64,
    detuning_mhz: f64,
    waist_um: f64,
    optical_depth: f64,
    ktilde: f64,
    eta: f64,
    kappa_sq: f64,
    xi_squared: f64,
    mean_atom_phase: f64,
    atom_phase_variance: f64,
    /// Variance of the detected read-out signal (quadrature, difference
    /// current or demodulated difference, depending on the scheme).
    signal_variance: f64,
    /// Conditional spin variance after an ideal read-out (single tone only).
    #[serde(skip_serializing_if = "Option::is_none")]
    conditional_spin_variance: Option<f64>,
}

pub fn run(
    config: &Path,
    out: Option<&Path>,
    scheme_override: Option<SchemeKind>,
    formula_override: Option<&str>,
) -> Result<(), CliError> {
    let cfg: ScenarioConfig = load_json(config)?;
    let scheme = scheme_override.unwrap_or(cfg.scheme);
    let line = load_line(cfg.line_file.as_deref())?;
    let geom = BeamGeometry::new(um_to_m(cfg.waist_um))?;
    let length_m = cm_to_m(cfg.length_cm.unwrap_or(1.0));
    let mut ensemble = Ensemble::from_atom_number(cfg.n_atoms, length_m)?;
    if let Some(rho_cm3) = cfg.density_per_cm3 {
        ensemble.density_per_m3 = Some(per_cm3_to_per_m3(rho_cm3));
        ensemble.validate(&geom)?;
    }

    let delta = mhz_to_rad_s(cfg.detuning_mhz);
    let ktilde = coupling_constant(&line, &geom, delta);
    let depth = optical_depth(&line, &geom, cfg.n_atoms);
    let eta = scattering_probability(&line, &geom, cfg.n_photons, delta);
    let formula = match formula_override {
        Some(name) => SqueezingFormula::parse(name)?,
        None => match scheme {
            SchemeKind::Mz1 => SqueezingFormula::SingleD1,
            SchemeKind::Mz2 | SchemeKind::Am => SqueezingFormula::TwoColourD1,
        },
    };
    let xi2 = xi_squared(formula, depth, eta)?;

    let report = match scheme {
        SchemeKind::Mz1 => {
            let probe = SingleProbe::new(ktilde, cfg.n_atoms, cfg.n_photons)?;
            SqueezeReport {
                scheme: scheme.name(),
                formula: formula.name(),
                n_atoms: cfg.n_atoms,
                n_photons_per_tone: cfg.n_photons,
                detuning_mhz: cfg.detuning_mhz,
                waist_um: cfg.waist_um,
                optical_depth: depth,
                ktilde,
                eta,
                kappa_sq: probe.measurement_strength(),
                xi_squared: xi2,
                mean_atom_phase: 0.0,
                atom_phase_variance: ktilde * ktilde * cfg.n_photons,
                signal_variance: probe.output_variance(),
                conditional_spin_variance: Some(probe.conditional_spin_variance()),
            }
        }
        SchemeKind::Mz2 => {
            let probe = TwoColour::new(ktilde, cfg.n_atoms, cfg.n_photons)?;
            SqueezeReport {
                scheme: scheme.name(),
                formula: formula.name(),
                n_atoms: cfg.n_atoms,
                n_photons_per_tone: cfg.n_photons,
                detuning_mhz: cfg.detuning_mhz,
                waist_um: cfg.waist_um,
                optical_depth: depth,
                ktilde,
                eta,
                kappa_sq: probe.measurement_strength(),
                xi_squared: xi2,
                mean_atom_phase: probe.mean_atom_phase(),
                atom_phase_variance: probe.atom_phase_variance(),
                signal_variance: probe.difference_current_variance(),
                conditional_spin_variance: None,
            }
        }
        SchemeKind::Am => {
            // Symmetric carriers: equal couplings and photon numbers per
            // tone satisfy the balance condition identically.
            let probe =
                AmFourFrequency::new(ktilde, ktilde, cfg.n_atoms, cfg.n_photons, cfg.n_photons)?;
            SqueezeReport {
                scheme: scheme.name(),
                formula: formula.name(),
                n_atoms: cfg.n_atoms,
                n_photons_per_tone: cfg.n_photons,
                detuning_mhz: cfg.detuning_mhz,
                waist_um: cfg.waist_um,
                optical_depth: depth,
                ktilde,
                eta,
                kappa_sq: probe.measurement_strength(),
                xi_squared: xi2,
                mean_atom_phase: probe.mean_atom_phase(),
                atom_phase_variance: probe.atom_phase_variance(),
                signal_variance: probe.difference_signal_variance(),
                conditional_spin_variance: None,
            }
        }
    };

    let mut text = serde_json::to_string(&report).expect("serializable report");
    text.push('\n');
    emit(out, &text)
}
