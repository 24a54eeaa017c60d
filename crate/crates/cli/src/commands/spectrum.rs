//! `spectrum`: refractive index and differential light shift on a grid.

use std::path::Path;

use serde::Serialize;
use spinsqueeze::units::{
    cm_to_m, mhz_to_rad_s, per_cm3_to_per_m3, rad_s_to_hz, rad_s_to_mhz, um_to_m, uw_to_w,
};
use spinsqueeze::{
    balanced_index, differential_light_shift, guard_resonances, zero_index_frequency, BeamGeometry,
    Ensemble,
};

use crate::cli::OutputFormat;
use crate::commands::CliError;
use crate::config::{load_json, load_line, SpectrumConfig};
use crate::output::{emit, fmt_g};

#[derive(Serialize)]
struct HeaderRow {
    zero_index_freq_mhz_rel: f64,
}

#[derive(Serialize)]
struct ValueRow {
    freq_mhz_rel: f64,
    n_refractive: f64,
    light_shift_hz: f64,
}

#[derive(Serialize)]
struct PoleRow {
    freq_mhz_rel: f64,
    pole: bool,
}

pub fn run(config: &Path, out: Option<&Path>, format: OutputFormat) -> Result<(), CliError> {
    let cfg: SpectrumConfig = load_json(config)?;
    let line = load_line(cfg.line_file.as_deref())?;
    let geom = BeamGeometry::new(um_to_m(cfg.waist_um))?;
    let ensemble = Ensemble::from_density(
        per_cm3_to_per_m3(cfg.density_per_cm3),
        cm_to_m(cfg.length_cm),
        &geom,
    )?;
    let power_w = uw_to_w(cfg.power_uw);
    if !power_w.is_finite() || power_w <= 0.0 {
        return Err(CliError::Usage(format!(
            "beam power must be finite and > 0, got {} uW",
            cfg.power_uw
        )));
    }
    let grid = cfg.grid.values()?;
    let zero_mhz = rad_s_to_mhz(zero_index_frequency(&line, &geom)?);

    let mut csv = String::new();
    let mut ndjson = String::new();
    match format {
        OutputFormat::Csv => {
            csv.push_str("# spinsqueeze spectrum\n");
            csv.push_str(&format!(
                "# zero_index_freq_mhz_rel = {}\n",
                fmt_g(zero_mhz)
            ));
            csv.push_str("freq_mhz_rel,n_refractive,light_shift_hz\n");
        }
        OutputFormat::Json => {
            let header = HeaderRow {
                zero_index_freq_mhz_rel: zero_mhz,
            };
            ndjson.push_str(&serde_json::to_string(&header).expect("serializable header"));
            ndjson.push('\n');
        }
    }

    for &freq_mhz in &grid {
        let omega = mhz_to_rad_s(freq_mhz);
        // Grid points inside a resonance guard window become `pole` rows;
        // the scan continues.
        if guard_resonances(&line, omega).is_err() {
            match format {
                OutputFormat::Csv => csv.push_str(&format!("{},pole,pole\n", fmt_g(freq_mhz))),
                OutputFormat::Json => {
                    let row = PoleRow {
                        freq_mhz_rel: freq_mhz,
                        pole: true,
                    };
                    ndjson.push_str(&serde_json::to_string(&row).expect("serializable row"));
                    ndjson.push('\n');
                }
            }
            continue;
        }
        let n = balanced_index(&line, &geom, &ensemble, omega)?;
        let shift_hz = rad_s_to_hz(differential_light_shift(&line, &geom, power_w, omega)?);
        match format {
            OutputFormat::Csv => csv.push_str(&format!(
                "{},{},{}\n",
                fmt_g(freq_mhz),
                fmt_g(n),
                fmt_g(shift_hz)
            )),
            OutputFormat::Json => {
                let row = ValueRow {
                    freq_mhz_rel: freq_mhz,
                    n_refractive: n,
                    light_shift_hz: shift_hz,
                };
                ndjson.push_str(&serde_json::to_string(&row).expect("serializable row"));
                ndjson.push('\n');
            }
        }
    }

    match format {
        OutputFormat::Csv => emit(out, &csv),
        OutputFormat::Json => emit(out, &ndjson),
    }
}
