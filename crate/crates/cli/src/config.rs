//! On-disk JSON configuration schemas and loaders.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use spinsqueeze::TransitionLine;

use crate::commands::CliError;

/// Inclusive frequency grid, MHz relative to the clock-pair midpoint.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start_mhz: f64,
    pub stop_mhz: f64,
    pub points: usize,
}

impl GridSpec {
    /// Materialise the grid values. A single point collapses to the start.
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        if self.points == 0 {
            return Err(CliError::Usage("grid needs at least one point".to_string()));
        }
        if !self.start_mhz.is_finite() || !self.stop_mhz.is_finite() {
            return Err(CliError::Usage("grid endpoints must be finite".to_string()));
        }
        if self.points == 1 {
            return Ok(vec![self.start_mhz]);
        }
        if self.stop_mhz <= self.start_mhz {
            return Err(CliError::Usage(format!(
                "grid endpoints must satisfy start < stop, got [{}, {}]",
                self.start_mhz, self.stop_mhz
            )));
        }
        let step = (self.stop_mhz - self.start_mhz) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| self.start_mhz + step * i as f64)
            .collect())
    }
}

/// Input for `spectrum`: a balanced vapour column and a probe beam.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    /// 1/e^2 beam waist, micrometres.
    pub waist_um: f64,
    /// Vapour column length, centimetres.
    pub length_cm: f64,
    /// Number density, cm^-3.
    pub density_per_cm3: f64,
    /// Probe beam power, microwatts.
    pub power_uw: f64,
    /// Frequency grid, MHz relative to the clock-pair midpoint.
    pub grid: GridSpec,
    /// Optional transition-line JSON; defaults to the built-in caesium D1.
    #[serde(default)]
    pub line_file: Option<PathBuf>,
}

/// Probing scheme selector, shared between scenario files and `--scheme`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    /// Single-tone Mach-Zehnder probe of one ground level.
    Mz1,
    /// Two-colour probe, one tone per ground level.
    Mz2,
    /// Four-frequency amplitude-modulated probe.
    Am,
}

impl SchemeKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::Mz1 => "mz1",
            SchemeKind::Mz2 => "mz2",
            SchemeKind::Am => "am",
        }
    }
}

/// Input for `squeeze`: one probing scenario.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Probing scheme.
    pub scheme: SchemeKind,
    /// 1/e^2 beam waist, micrometres.
    pub waist_um: f64,
    /// Atoms in the beam.
    pub n_atoms: f64,
    /// Photons per probe tone.
    pub n_photons: f64,
    /// Probe detuning from the addressed resonance, MHz.
    pub detuning_mhz: f64,
    /// Optional column length, centimetres (default 1 cm; only used for
    /// the density cross-check).
    #[serde(default)]
    pub length_cm: Option<f64>,
    /// Optional number density, cm^-3, cross-checked against `n_atoms`.
    #[serde(default)]
    pub density_per_cm3: Option<f64>,
    /// Optional transition-line JSON; defaults to the built-in caesium D1.
    #[serde(default)]
    pub line_file: Option<PathBuf>,
}

/// Read and decode a JSON config file.
pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

/// Load a transition line table, falling back to the built-in caesium D1.
pub fn load_line(file: Option<&Path>) -> Result<TransitionLine, CliError> {
    match file {
        None => Ok(TransitionLine::cs_d1()),
        Some(path) => Ok(TransitionLine::from_json_file(path)?),
    }
}
