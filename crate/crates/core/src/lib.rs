//! Spin-squeezing estimates for dispersive optical probing of alkali
//! ensembles.
//!
//! The crate models a collective atomic pseudospin measured through the
//! phase shift it imprints on far-detuned probe light:
//!
//! * [`constants`]: hyperfine line tables (built-in caesium D1).
//! * [`atomic`]: phase couplings, scattering probabilities, refractive
//!   index and light-shift spectra, optical depth.
//! * [`moments`]: Gaussian moment propagation of spin and Stokes vectors
//!   under stochastic rotations.
//! * [`schemes`]: single-tone, two-colour and amplitude-modulated probe
//!   configurations with their measurement strengths and back-action.
//! * [`decoherence`]: achievable squeezing versus optical depth and
//!   scattering, with per-channel loss budgets and optimisers.
//! * [`oracle`]: exact counting-statistics cross-checks for the
//!   linearised formulas (no sampling, fully deterministic).
//! * [`optimize`]: the scalar search primitives used above.
//!
//! All physical interfaces use SI units with angular frequencies in
//! rad/s; see [`units`] for the conversion helpers.

pub mod atomic;
pub mod constants;
pub mod decoherence;
pub mod error;
pub mod moments;
pub mod optimize;
pub mod oracle;
pub mod schemes;
pub mod units;

pub use atomic::{
    balanced_index, balanced_index_from_density, coupling_constant, coupling_peak,
    differential_light_shift, dispersive_response, guard_resonances, level_coupling, level_shift,
    measurement_strength, optical_depth, refractive_index, scattering_probability,
    zero_index_frequency, BeamGeometry, Ensemble,
};
pub use constants::{HyperfineStrengths, LineComponent, TransitionLine};
pub use decoherence::{
    eta_opt_cycling, optimize_eta, single_probe_budget, sweep_depth, two_colour_budget, xi_squared,
    xi_squared_asymptote, xi_squared_cycling, xi_squared_single_d1, xi_squared_two_colour_d1,
    EtaOptimum, LossBudget, SqueezingFormula, SweepRow,
};
pub use error::{Error, Result};
pub use moments::{
    coherent_light_state, coherent_spin_state, output_beamsplitter, rotate_z, rotate_z_by_moments,
    MomentState, RotationAngle,
};
pub use oracle::{
    closed_form_output_variance, exact_output_variance, exact_two_colour_variance,
    posterior_conditional_variance, PosteriorReport,
};
pub use schemes::{AmFourFrequency, SingleProbe, TwoColour};
