//! Atomic line data for dispersive probing of an alkali D1-type line.
//!
//! The model covers a ground doublet (hyperfine levels `f = i - 1/2 = 3`
//! and `f = i + 1/2 = 4` for caesium) coupled to an excited doublet
//! (`f' = 3, 4`) by four linearly polarised components. Frequencies are
//! tracked relative to the midpoint of the two "clock" components
//! (4 -> 3' and 3 -> 4'), which are the outermost lines of the quartet.
//!
//! The built-in table is the caesium D1 line at 894.6 nm. Alternative
//! tables with the same shape can be loaded from JSON at run time.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::TWO_PI;

/// Relative oscillator strengths of the four pi components, normalised so
/// that each ground level's couplings sum to 1/2:
/// `s33 + s34 = s43 + s44 = 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperfineStrengths {
    /// Strength of the 3 -> 3' component.
    pub s33: f64,
    /// Strength of the 3 -> 4' component.
    pub s34: f64,
    /// Strength of the 4 -> 3' component.
    pub s43: f64,
    /// Strength of the 4 -> 4' component.
    pub s44: f64,
}

/// One hyperfine component of the quartet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineComponent {
    /// Ground-level hyperfine quantum number f.
    pub ground_f: u8,
    /// Excited-level hyperfine quantum number f'.
    pub excited_f: u8,
    /// Position relative to the clock-pair midpoint, rad/s.
    pub omega_rel: f64,
    /// Relative strength (see [`HyperfineStrengths`]).
    pub strength: f64,
}

/// Optical and hyperfine parameters of one probing line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionLine {
    /// Short identifier, e.g. `"cs-d1"`.
    pub label: String,
    /// Vacuum wavelength, metres.
    pub wavelength_m: f64,
    /// Natural linewidth (FWHM) as an angular frequency, rad/s.
    pub linewidth_rad_s: f64,
    /// Ground-state hyperfine splitting, rad/s.
    pub ground_splitting_rad_s: f64,
    /// Excited-state hyperfine splitting, rad/s.
    pub excited_splitting_rad_s: f64,
    /// Relative strengths of the four pi components.
    pub strengths: HyperfineStrengths,
}

impl TransitionLine {
    /// Built-in caesium D1 table (6S1/2 -> 6P1/2 at 894.6 nm).
    pub fn cs_d1() -> Self {
        TransitionLine {
            label: "cs-d1".to_string(),
            wavelength_m: 8.9459295986e-7,
            linewidth_rad_s: 2.8743e7,
            ground_splitting_rad_s: TWO_PI * 9.192631770e9,
            excited_splitting_rad_s: TWO_PI * 1.167680e9,
            strengths: HyperfineStrengths {
                s33: 1.0 / 8.0,
                s34: 3.0 / 8.0,
                s43: 7.0 / 24.0,
                s44: 5.0 / 24.0,
            },
        }
    }

    /// Load a line table from a JSON file with the same schema as
    /// `constants/cs_d1.json`.
    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::DataFile(format!("{}: {e}", path.display())))?;
        let line: TransitionLine = serde_json::from_str(&text)
            .map_err(|e| Error::DataFile(format!("{}: {e}", path.display())))?;
        line.validate()?;
        Ok(line)
    }

    /// Check positivity and the per-level strength normalisation.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("wavelength_m", self.wavelength_m),
            ("linewidth_rad_s", self.linewidth_rad_s),
            ("ground_splitting_rad_s", self.ground_splitting_rad_s),
            ("excited_splitting_rad_s", self.excited_splitting_rad_s),
        ];
        for (name, v) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "line {}: {name} must be finite and > 0, got {v}",
                    self.label
                )));
            }
        }
        let s = &self.strengths;
        for (name, v) in [
            ("s33", s.s33),
            ("s34", s.s34),
            ("s43", s.s43),
            ("s44", s.s44),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "line {}: strength {name} must be finite and >= 0, got {v}",
                    self.label
                )));
            }
        }
        for (level, sum) in [(3, s.s33 + s.s34), (4, s.s43 + s.s44)] {
            if (sum - 0.5).abs() > 1.0e-9 {
                return Err(Error::InvalidInput(format!(
                    "line {}: strengths from f={level} must sum to 0.5, got {sum}",
                    self.label
                )));
            }
        }
        if self.excited_splitting_rad_s >= self.ground_splitting_rad_s {
            return Err(Error::InvalidInput(format!(
                "line {}: excited splitting must be smaller than ground splitting",
                self.label
            )));
        }
        Ok(())
    }

    /// On-resonance unit-strength cross-section `sigma0 = lambda^2 / 2 pi`, m^2.
    pub fn resonant_cross_section(&self) -> f64 {
        self.wavelength_m * self.wavelength_m / TWO_PI
    }

    /// Optical carrier frequency `2 pi c / lambda`, rad/s.
    pub fn optical_frequency_rad_s(&self) -> f64 {
        TWO_PI * crate::units::SPEED_OF_LIGHT / self.wavelength_m
    }

    /// Half of the clock-pair span: the distance from the midpoint to each
    /// of the outermost (clock) components, rad/s.
    pub fn half_span_rad_s(&self) -> f64 {
        0.5 * (self.ground_splitting_rad_s + self.excited_splitting_rad_s)
    }

    /// The four components ordered by frequency:
    /// 4 -> 3' (lowest), 4 -> 4', 3 -> 3', 3 -> 4' (highest).
    /// Positions are relative to the clock-pair midpoint.
    pub fn components(&self) -> [LineComponent; 4] {
        let half = self.half_span_rad_s();
        let we = self.excited_splitting_rad_s;
        let s = &self.strengths;
        [
            LineComponent {
                ground_f: 4,
                excited_f: 3,
                omega_rel: -half,
                strength: s.s43,
            },
            LineComponent {
                ground_f: 4,
                excited_f: 4,
                omega_rel: -half + we,
                strength: s.s44,
            },
            LineComponent {
                ground_f: 3,
                excited_f: 3,
                omega_rel: half - we,
                strength: s.s33,
            },
            LineComponent {
                ground_f: 3,
                excited_f: 4,
                omega_rel: half,
                strength: s.s34,
            },
        ]
    }

    /// Components attached to one ground level (`ground_f` = 3 or 4).
    pub fn components_of_level(&self, ground_f: u8) -> [LineComponent; 2] {
        let all = self.components();
        match ground_f {
            4 => [all[0], all[1]],
            3 => [all[2], all[3]],
            other => panic!("ground_f must be 3 or 4, got {other}"),
        }
    }
}
