//! `oracle-check`: exact counting-statistics verification battery.
//!
//! Each check recomputes a detected-signal statistic from exact photon
//! and spin counting distributions (no sampling) and compares it with the
//! linearised formula the rest of the crate uses. One NDJSON row per
//! check; any failure exits with code 1.

use std::path::Path;

use serde::Serialize;
use spinsqueeze::{
    exact_output_variance, exact_two_colour_variance, posterior_conditional_variance, SingleProbe,
    TwoColour,
};

use crate::commands::CliError;
use crate::output::emit;

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    computed: f64,
    reference: f64,
    rel_err: f64,
    tolerance: f64,
    pass: bool,
}

impl CheckRow {
    fn new(check: &'static str, computed: f64, reference: f64, tolerance: f64) -> Self {
        let rel_err = ((computed - reference) / reference).abs();
        CheckRow {
            check,
            computed,
            reference,
            rel_err,
            tolerance,
            pass: rel_err <= tolerance,
        }
    }
}

pub fn run(out: Option<&Path>) -> Result<(), CliError> {
    let mut rows = Vec::new();

    // Single tone at kappa^2 = 0.25: exact variance of the detected
    // quadrature against (N_ph/4)(1 + kappa^2).
    let (n_atoms, n_photons, ktilde) = (100_u64, 1.0e4, 1.0e-3);
    let probe = SingleProbe::new(ktilde, n_atoms as f64, n_photons)?;
    let exact = exact_output_variance(n_atoms, n_photons, ktilde)?;
    rows.push(CheckRow::new(
        "single-tone-variance",
        exact,
        probe.output_variance_formula(),
        1.0e-2,
    ));

    // The residual against the quadratic formula is quartic in the phase:
    // halving ktilde must shrink it by about 16.
    let residual = |kt: f64| -> Result<f64, CliError> {
        let p = SingleProbe::new(kt, n_atoms as f64, n_photons)?;
        Ok((exact_output_variance(n_atoms, n_photons, kt)? - p.output_variance_formula()).abs())
    };
    let ratio = residual(ktilde)? / residual(0.5 * ktilde)?;
    rows.push(CheckRow::new(
        "single-tone-residual-ratio",
        ratio,
        16.0,
        0.25,
    ));

    // Two-colour difference current against
    // 2 N_ph [1 + 2 kappa^2 (1 + N_at / 2 N_ph)].
    let two = TwoColour::new(ktilde, n_atoms as f64, n_photons)?;
    let exact_two = exact_two_colour_variance(n_atoms, n_photons, ktilde)?;
    rows.push(CheckRow::new(
        "two-colour-variance",
        exact_two,
        two.difference_current_variance(),
        1.0e-2,
    ));

    // Bayesian posterior spin variance against the Gaussian limit
    // (N_at/4)/(1 + kappa^2) at kappa^2 = 1 and 3.
    let post1 = posterior_conditional_variance(10_000, 1.0e4, 1.0)?;
    rows.push(CheckRow::new(
        "posterior-kappa-1",
        post1.expected_posterior_variance,
        post1.gaussian_reference,
        0.02,
    ));
    let post3 = posterior_conditional_variance(10_000, 1.0e4, 3.0)?;
    rows.push(CheckRow::new(
        "posterior-kappa-3",
        post3.expected_posterior_variance,
        post3.gaussian_reference,
        0.03,
    ));

    let mut text = String::new();
    for row in &rows {
        text.push_str(&serde_json::to_string(row).expect("serializable row"));
        text.push('\n');
    }
    emit(out, &text)?;

    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(CliError::Compute(format!(
            "{failed} of {} oracle checks failed",
            rows.len()
        )));
    }
    Ok(())
}
