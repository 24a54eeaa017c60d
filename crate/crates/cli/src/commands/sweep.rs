//! `sweep`: optimised squeezing across a span of optical depths.

use std::path::Path;

use spinsqueeze::{sweep_depth, SqueezingFormula};

use crate::cli::OutputFormat;
use crate::commands::CliError;
use crate::output::{emit, fmt_g};

pub fn run(
    formula_name: &str,
    d_min: f64,
    d_max: f64,
    points: usize,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let formula = SqueezingFormula::parse(formula_name)?;
    let rows = sweep_depth(formula, d_min, d_max, points)?;

    let text = match format {
        OutputFormat::Csv => {
            let mut csv = String::new();
            csv.push_str(&format!("# spinsqueeze sweep formula={}\n", formula.name()));
            csv.push_str("d,eta_opt,xi2_min,xi2_asymptote\n");
            for row in &rows {
                let asym = row.xi_squared_asymptote.map(fmt_g).unwrap_or_default();
                csv.push_str(&format!(
                    "{},{},{},{asym}\n",
                    fmt_g(row.d),
                    fmt_g(row.eta_opt),
                    fmt_g(row.xi_squared_min)
                ));
            }
            csv
        }
        OutputFormat::Json => {
            let mut ndjson = String::new();
            for row in &rows {
                ndjson.push_str(&serde_json::to_string(row).expect("serializable row"));
                ndjson.push('\n');
            }
            ndjson
        }
    };
    emit(out, &text)
}
