//! Squeezing degradation from spontaneous scattering.
//!
//! Each probing scheme trades measurement strength (`kappa^2 = d eta / 2`
//! far from resonance, with `d` the resonant optical depth) against probe
//! decoherence parameterised by the per-atom scattering probability `eta`.
//! The achievable Wineland squeezing parameter `xi^2` for each read-out /
//! level-structure combination is a closed-form function of `(d, eta)`;
//! minimising over `eta` at fixed depth yields the scheme's fundamental
//! scaling with `d`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::log_scan_golden_min;

/// Read-out / level-structure combination for the squeezing estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SqueezingFormula {
    /// Single probe tone on the open (multi-level) line.
    SingleD1,
    /// Idealised closed cycling transition.
    Cycling,
    /// Two-colour back-action-evading probe on the open line.
    TwoColourD1,
}

impl SqueezingFormula {
    /// Stable identifier used by the CLI (`single-d1`, `cycling`,
    /// `two-colour-d1`).
    pub fn name(&self) -> &'static str {
        match self {
            SqueezingFormula::SingleD1 => "single-d1",
            SqueezingFormula::Cycling => "cycling",
            SqueezingFormula::TwoColourD1 => "two-colour-d1",
        }
    }

    /// Parse the CLI identifier.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "single-d1" => Ok(SqueezingFormula::SingleD1),
            "cycling" => Ok(SqueezingFormula::Cycling),
            "two-colour-d1" => Ok(SqueezingFormula::TwoColourD1),
            other => Err(Error::InvalidInput(format!(
                "unknown squeezing formula '{other}' (expected single-d1, cycling or \
                 two-colour-d1)"
            ))),
        }
    }
}

fn check_d_eta(d: f64, eta: f64) -> Result<()> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "optical depth must be finite and > 0, got {d}"
        )));
    }
    if !eta.is_finite() || !(0.0..1.0).contains(&eta) {
        return Err(Error::InvalidInput(format!(
            "scattering probability must lie in [0, 1), got {eta}"
        )));
    }
    Ok(())
}

/// Squeezing for a single probe tone on the open line:
///
/// ```text
/// xi^2 = (1 - 2 eta / 3) / (1 + d eta / 2)
///      + (4 eta / 3)(1 - 2 eta / 3)(1 - 3 eta / 4) / (1 - eta)^2
/// ```
pub fn xi_squared_single_d1(d: f64, eta: f64) -> Result<f64> {
    check_d_eta(d, eta)?;
    let coh = 1.0 - 2.0 * eta / 3.0;
    let first = coh / (1.0 + 0.5 * d * eta);
    let second = (4.0 * eta / 3.0) * coh * (1.0 - 0.75 * eta) / ((1.0 - eta) * (1.0 - eta));
    Ok(first + second)
}

/// Squeezing for an idealised cycling transition:
/// `xi^2 = 1 / [(1 - eta)^2 (1 + d eta)]`.
pub fn xi_squared_cycling(d: f64, eta: f64) -> Result<f64> {
    check_d_eta(d, eta)?;
    Ok(1.0 / ((1.0 - eta) * (1.0 - eta) * (1.0 + d * eta)))
}

/// Squeezing for the two-colour back-action-evading probe on the open
/// line:
///
/// ```text
/// xi^2 = (1 - 2 eta / 3)^3 / [(1 - eta)^2 (1 + d eta)]
///      + (2 eta / 3)(1 - 2 eta / 3)^2 / (1 - eta)^2
/// ```
pub fn xi_squared_two_colour_d1(d: f64, eta: f64) -> Result<f64> {
    check_d_eta(d, eta)?;
    let coh = 1.0 - 2.0 * eta / 3.0;
    let loss = (1.0 - eta) * (1.0 - eta);
    let first = coh * coh * coh / (loss * (1.0 + d * eta));
    let second = (2.0 * eta / 3.0) * coh * coh / loss;
    Ok(first + second)
}

/// Evaluate the chosen formula.
pub fn xi_squared(formula: SqueezingFormula, d: f64, eta: f64) -> Result<f64> {
    match formula {
        SqueezingFormula::SingleD1 => xi_squared_single_d1(d, eta),
        SqueezingFormula::Cycling => xi_squared_cycling(d, eta),
        SqueezingFormula::TwoColourD1 => xi_squared_two_colour_d1(d, eta),
    }
}

/// Closed-form optimal scattering probability for the cycling formula:
/// `eta_opt = (d - 2) / (3 d)`, clamped to 0 for shallow ensembles
/// (`d <= 2`), where no scattering is affordable.
pub fn eta_opt_cycling(d: f64) -> f64 {
    ((d - 2.0) / (3.0 * d)).max(0.0)
}

/// Search bounds for the numerical eta optimisation.
pub const ETA_SEARCH_LO: f64 = 1.0e-6;
/// Upper search bound; beyond this the perturbative loss model is invalid
/// anyway.
pub const ETA_SEARCH_HI: f64 = 0.9;

/// Result of minimising `xi^2` over `eta` at fixed depth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaOptimum {
    /// Optical depth the optimisation was run at.
    pub depth: f64,
    /// Minimising scattering probability.
    pub eta_opt: f64,
    /// Minimal squeezing parameter.
    pub xi_squared_min: f64,
}

/// Minimise `xi^2(d, eta)` over `eta in [1e-6, 0.9]` at fixed `d`:
/// log-spaced coarse scan plus golden-section refinement, converged to an
/// absolute eta tolerance of 1e-8.
pub fn optimize_eta(formula: SqueezingFormula, d: f64) -> Result<EtaOptimum> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "optical depth must be finite and > 0, got {d}"
        )));
    }
    let objective = |eta: f64| {
        // Inside the validated bounds this cannot fail.
        xi_squared(formula, d, eta).expect("eta within search bounds")
    };
    let (eta_opt, xi2) = log_scan_golden_min(objective, ETA_SEARCH_LO, ETA_SEARCH_HI, 48, 1.0e-8)?;
    Ok(EtaOptimum {
        depth: d,
        eta_opt,
        xi_squared_min: xi2,
    })
}

/// Large-depth envelope of the optimised squeezing, where one exists in
/// closed form: `27 / (4 d)` for the cycling formula and
/// `sqrt(32 / (3 d))` for the single-probe formula. The two-colour
/// formula's envelope is left numerical (`None`).
pub fn xi_squared_asymptote(formula: SqueezingFormula, d: f64) -> Option<f64> {
    match formula {
        SqueezingFormula::Cycling => Some(27.0 / (4.0 * d)),
        SqueezingFormula::SingleD1 => Some((32.0 / (3.0 * d)).sqrt()),
        SqueezingFormula::TwoColourD1 => None,
    }
}

/// One row of a depth sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// Optical depth.
    pub d: f64,
    /// Optimal scattering probability at this depth.
    pub eta_opt: f64,
    /// Optimised squeezing parameter.
    pub xi_squared_min: f64,
    /// Closed-form large-depth envelope, when available.
    pub xi_squared_asymptote: Option<f64>,
}

/// Optimise over a log-spaced grid of depths (inclusive endpoints).
pub fn sweep_depth(
    formula: SqueezingFormula,
    d_min: f64,
    d_max: f64,
    points: usize,
) -> Result<Vec<SweepRow>> {
    if points < 2 {
        return Err(Error::InvalidInput(format!(
            "sweep needs at least 2 points, got {points}"
        )));
    }
    if d_min.is_nan() || d_max.is_nan() || d_min <= 0.0 || d_max <= d_min {
        return Err(Error::InvalidInput(format!(
            "sweep depths must satisfy 0 < d_min < d_max, got [{d_min}, {d_max}]"
        )));
    }
    let (llo, lhi) = (d_min.ln(), d_max.ln());
    (0..points)
        .map(|i| {
            let d = (llo + (lhi - llo) * i as f64 / (points - 1) as f64).exp();
            let opt = optimize_eta(formula, d)?;
            Ok(SweepRow {
                d,
                eta_opt: opt.eta_opt,
                xi_squared_min: opt.xi_squared_min,
                xi_squared_asymptote: xi_squared_asymptote(formula, d),
            })
        })
        .collect()
}

/// Per-event loss budget of a probing scheme: named decoherence channels
/// whose probabilities sum to the total scattering probability `eta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossBudget {
    /// Total per-atom scattering probability.
    pub eta: f64,
    /// Channel name and probability, in fixed order.
    pub channels: Vec<(String, f64)>,
}

impl LossBudget {
    /// Sum of all channel probabilities.
    pub fn total(&self) -> f64 {
        self.channels.iter().map(|(_, p)| p).sum()
    }
}

/// Loss budget of the single-probe scheme: scattering either transfers the
/// atom out of the probed level (`2 eta / 3`) or flips the probed spin
/// (`eta / 3`).
pub fn single_probe_budget(eta: f64) -> LossBudget {
    LossBudget {
        eta,
        channels: vec![
            ("transfer-out".to_string(), 2.0 * eta / 3.0),
            ("spin-flip".to_string(), eta / 3.0),
        ],
    }
}

/// Loss budget of the two-colour scheme: each tone contributes half of
/// `eta`, split per tone into one elastic channel (`eta / 6`), two Raman
/// spin-flip channels (`eta / 16` each) and two hyperfine-transfer
/// channels (`5 eta / 48` each) - ten channels in total.
pub fn two_colour_budget(eta: f64) -> LossBudget {
    let mut channels = Vec::with_capacity(10);
    for tone in ["f3", "f4"] {
        channels.push((format!("{tone}:elastic"), eta / 6.0));
        channels.push((format!("{tone}:raman-plus"), eta / 16.0));
        channels.push((format!("{tone}:raman-minus"), eta / 16.0));
        channels.push((format!("{tone}:transfer-a"), 5.0 * eta / 48.0));
        channels.push((format!("{tone}:transfer-b"), 5.0 * eta / 48.0));
    }
    LossBudget { eta, channels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn reference_values() {
        assert_abs_diff_eq!(
            xi_squared_single_d1(22.0, 0.15).unwrap(),
            0.5607299079,
            epsilon = 1.0e-9
        );
        assert_abs_diff_eq!(
            xi_squared_two_colour_d1(22.0, 0.17).unwrap(),
            0.3428116406,
            epsilon = 1.0e-9
        );
        assert_abs_diff_eq!(
            xi_squared_two_colour_d1(100.0, 0.10).unwrap(),
            0.1629463358,
            epsilon = 1.0e-9
        );
    }

    #[test]
    fn no_scattering_means_no_squeezing_and_no_loss() {
        for f in [
            SqueezingFormula::SingleD1,
            SqueezingFormula::Cycling,
            SqueezingFormula::TwoColourD1,
        ] {
            assert_relative_eq!(
                xi_squared(f, 30.0, 0.0).unwrap(),
                1.0,
                max_relative = 1.0e-14
            );
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(xi_squared_cycling(10.0, 1.0).is_err());
        assert!(xi_squared_cycling(10.0, -0.1).is_err());
        assert!(xi_squared_cycling(-2.0, 0.1).is_err());
        assert!(xi_squared_single_d1(10.0, f64::NAN).is_err());
    }

    #[test]
    fn cycling_optimum_matches_closed_form() {
        for d in [3.0, 10.0, 250.0, 1.0e4] {
            let opt = optimize_eta(SqueezingFormula::Cycling, d).unwrap();
            assert_abs_diff_eq!(opt.eta_opt, eta_opt_cycling(d), epsilon = 1.0e-7);
        }
        // Shallow ensembles: closed form clamps at zero.
        assert_eq!(eta_opt_cycling(1.5), 0.0);
    }

    #[test]
    fn single_probe_optimum_reference() {
        let opt = optimize_eta(SqueezingFormula::SingleD1, 100.0).unwrap();
        assert_abs_diff_eq!(opt.eta_opt, 0.095817, epsilon = 1.0e-4);
        assert_abs_diff_eq!(opt.xi_squared_min, 0.297428, epsilon = 1.0e-4);
    }

    #[test]
    fn two_colour_optimum_reference() {
        let opt = optimize_eta(SqueezingFormula::TwoColourD1, 100.0).unwrap();
        assert_abs_diff_eq!(opt.eta_opt, 0.103081, epsilon = 1.0e-4);
        assert_abs_diff_eq!(opt.xi_squared_min, 0.162873, epsilon = 1.0e-4);
    }

    #[test]
    fn cycling_envelope_tracks_optimum_at_depth() {
        let d = 1.0e3;
        let opt = optimize_eta(SqueezingFormula::Cycling, d).unwrap();
        let env = xi_squared_asymptote(SqueezingFormula::Cycling, d).unwrap();
        assert!((opt.xi_squared_min - env).abs() / env < 5.0e-2);
    }

    #[test]
    fn sweep_shape_and_monotonicity() {
        let rows = sweep_depth(SqueezingFormula::TwoColourD1, 10.0, 1.0e3, 7).unwrap();
        assert_eq!(rows.len(), 7);
        assert_relative_eq!(rows[0].d, 10.0, max_relative = 1.0e-12);
        assert_relative_eq!(rows[6].d, 1.0e3, max_relative = 1.0e-12);
        assert!(rows
            .windows(2)
            .all(|w| w[1].xi_squared_min < w[0].xi_squared_min));
        assert!(rows.iter().all(|r| r.xi_squared_asymptote.is_none()));
    }

    #[test]
    fn budgets_sum_to_eta() {
        for &eta in &[0.01, 0.15, 0.3] {
            let b1 = single_probe_budget(eta);
            assert!((b1.total() - eta).abs() <= 1.0e-12 * eta.max(1.0));
            let b2 = two_colour_budget(eta);
            assert_eq!(b2.channels.len(), 10);
            assert!((b2.total() - eta).abs() <= 1.0e-12 * eta.max(1.0));
        }
    }

    #[test]
    fn two_colour_budget_pattern() {
        let eta = 0.24;
        let b = two_colour_budget(eta);
        let mut counts = std::collections::BTreeMap::new();
        for (_, p) in &b.channels {
            *counts.entry(p.to_bits()).or_insert(0) += 1;
        }
        assert_eq!(counts.get(&(eta / 6.0).to_bits()), Some(&2));
        assert_eq!(counts.get(&(eta / 16.0).to_bits()), Some(&4));
        assert_eq!(counts.get(&(5.0 * eta / 48.0).to_bits()), Some(&4));
    }
}
