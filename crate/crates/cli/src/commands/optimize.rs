//! `optimize`: minimise xi^2 over the scattering probability at fixed depth.

use std::path::Path;

use serde::Serialize;
use spinsqueeze::{optimize_eta, xi_squared_asymptote, SqueezingFormula};

use crate::commands::CliError;
use crate::output::emit;

#[derive(Serialize)]
struct OptimizeReport {
    formula: &'static str,
    depth: f64,
    eta_opt: f64,
    xi_squared_min: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi_squared_asymptote: Option<f64>,
}

pub fn run(formula_name: &str, depth: f64, out: Option<&Path>) -> Result<(), CliError> {
    let formula = SqueezingFormula::parse(formula_name)?;
    let optimum = optimize_eta(formula, depth)?;
    let report = OptimizeReport {
        formula: formula.name(),
        depth: optimum.depth,
        eta_opt: optimum.eta_opt,
        xi_squared_min: optimum.xi_squared_min,
        xi_squared_asymptote: xi_squared_asymptote(formula, depth),
    };
    let mut text = serde_json::to_string(&report).expect("serializable report");
    text.push('\n');
    emit(out, &text)
}
