//! Deterministic text output helpers.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::commands::CliError;

/// Format with up to 10 significant digits, trailing zeros trimmed, using
/// e-notation below 1e-4 and at 1e10 and above (printf `%g` style).
/// Identical inputs always produce identical strings.
pub fn fmt_g(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let sci = format!("{value:.9e}");
    let (mantissa, exp_str) = sci.split_once('e').expect("e-notation always present");
    let exp: i32 = exp_str.parse().expect("exponent is an integer");
    if !(-4..10).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    } else {
        let decimals = (9 - exp).max(0) as usize;
        let fixed = format!("{value:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

/// Write `content` to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
    }
}
