//! Independent statistical oracles for the linearised scheme formulas.
//!
//! Everything here avoids the Gaussian moment pipeline on purpose: output
//! statistics are computed from exact photon-counting distributions
//! averaged over the exact binomial distribution of the spin projection
//! `m` (`m = k - N/2` with `k ~ Binomial(N, 1/2)`). No sampling is used,
//! so results are deterministic to the last bit.
//!
//! * [`exact_output_variance`]: exact detected-quadrature variance of the
//!   single-tone interferometer. Per `m` the interferometer phase is
//!   `ktilde * m`; the photon shot noise adds `N_ph / 4`.
//! * [`exact_two_colour_variance`]: exact difference-current variance of
//!   the two-tone read-out, whose conditional mean is
//!   `2 N_ph cos(ktilde N/2) sin(ktilde m)` on top of `2 N_ph` shot noise.
//! * [`posterior_conditional_variance`]: full Bayesian update of the
//!   binomial prior from one difference-count outcome `D = n1 - n2` with
//!   `n_i ~ Poisson(mu_i(m))`, `mu_{1,2} = (N_ph/2)(1 +- sin(ktilde m))`,
//!   i.e. a Skellam likelihood. Reports the outcome-averaged posterior
//!   variance, the quantity the Gaussian conditional formula
//!   `(N/4)/(1 + kappa^2)` approximates.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Guard rails for the exact-variance oracles: largest atom number,
/// photon number and accumulated phase for which the exactness claims and
/// runtime bounds are validated.
pub const EXACT_MAX_ATOMS: u64 = 200;
/// See [`EXACT_MAX_ATOMS`].
pub const EXACT_MAX_PHOTONS: f64 = 1.0e4;
/// See [`EXACT_MAX_ATOMS`].
pub const EXACT_MAX_PHASE: f64 = 0.3;

/// Compensated (Neumaier) accumulator: the running error term rescues
/// cancellation-heavy sums without arbitrary-precision arithmetic.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln C(n, k) - n ln 2`: log-probability of `k` in a symmetric binomial.
fn ln_binomial_weight(n: u64, k: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
        - ln_gamma(k as f64 + 1.0)
        - ln_gamma((n - k) as f64 + 1.0)
        - n as f64 * std::f64::consts::LN_2
}

fn check_exact_inputs(n_atoms: u64, n_photons: f64, ktilde: f64) -> Result<()> {
    if n_atoms > EXACT_MAX_ATOMS {
        return Err(Error::Domain(format!(
            "exact oracle capped at {EXACT_MAX_ATOMS} atoms, got {n_atoms}"
        )));
    }
    if n_photons.is_nan() || n_photons <= 0.0 || n_photons > EXACT_MAX_PHOTONS {
        return Err(Error::Domain(format!(
            "exact oracle needs 0 < N_ph <= {EXACT_MAX_PHOTONS:e}, got {n_photons}"
        )));
    }
    if !ktilde.is_finite() {
        return Err(Error::InvalidInput(format!(
            "ktilde must be finite, got {ktilde}"
        )));
    }
    let phase = ktilde.abs() * n_atoms as f64;
    if phase >= EXACT_MAX_PHASE {
        return Err(Error::Domain(format!(
            "accumulated phase |ktilde| N_at = {phase:.3} exceeds {EXACT_MAX_PHASE}"
        )));
    }
    Ok(())
}

/// Mean and variance of `g(m)` under the symmetric binomial spin
/// distribution, `m = k - N/2`.
fn binomial_moments<G: Fn(f64) -> f64>(n_atoms: u64, g: G) -> (f64, f64) {
    let half = n_atoms as f64 / 2.0;
    let mut e1 = Neumaier::default();
    let mut e2 = Neumaier::default();
    for k in 0..=n_atoms {
        let w = ln_binomial_weight(n_atoms, k).exp();
        let v = g(k as f64 - half);
        e1.add(w * v);
        e2.add(w * v * v);
    }
    let mean = e1.value();
    (mean, e2.value() - mean * mean)
}

/// Exact variance of the single-tone detected quadrature: photon shot
/// noise plus the spread of the conditional mean `(N_ph/2) sin(ktilde m)`
/// over the binomial spin distribution.
pub fn exact_output_variance(n_atoms: u64, n_photons: f64, ktilde: f64) -> Result<f64> {
    check_exact_inputs(n_atoms, n_photons, ktilde)?;
    let amp = 0.5 * n_photons;
    let (_, var) = binomial_moments(n_atoms, |m| amp * (ktilde * m).sin());
    Ok(0.25 * n_photons + var)
}

/// Closed form of [`exact_output_variance`] via the binomial
/// characteristic function `E[cos(2 ktilde m)] = cos(ktilde)^N`:
/// `N_ph/4 + (N_ph^2/8)(1 - cos(ktilde)^N)`. The parenthesis is evaluated
/// as `-expm1(N ln1p(-2 sin^2(ktilde/2)))` to avoid cancellation at small
/// phases.
pub fn closed_form_output_variance(n_atoms: u64, n_photons: f64, ktilde: f64) -> f64 {
    let cos_minus_one = -2.0 * (0.5 * ktilde).sin().powi(2);
    let one_minus_cos_pow = -(n_atoms as f64 * cos_minus_one.ln_1p()).exp_m1();
    0.25 * n_photons + n_photons * n_photons / 8.0 * one_minus_cos_pow
}

/// Exact variance of the two-tone difference current. Conditioned on `m`
/// the two detector ports stay Poissonian with total `2 N_ph`, while the
/// conditional mean is `2 N_ph cos(ktilde4 N/2) sin(ktilde4 m)`.
pub fn exact_two_colour_variance(n_atoms: u64, n_ph4: f64, ktilde4: f64) -> Result<f64> {
    check_exact_inputs(n_atoms, n_ph4, ktilde4)?;
    let amp = 2.0 * n_ph4 * (0.5 * ktilde4 * n_atoms as f64).cos();
    let (_, var) = binomial_moments(n_atoms, |m| amp * (ktilde4 * m).sin());
    Ok(2.0 * n_ph4 + var)
}

/// `ln I_k(z)` for `k = 0..=k_max`, `z > 0`.
///
/// Ratios `I_{k+1}/I_k` come from the downward continued-fraction
/// recurrence seeded past `k_max`; the absolute scale is anchored at
/// `ln I_0(z)` via the uniform asymptotic series for large `z` and the
/// ascending power series for small `z`.
fn ln_bessel_i_array(z: f64, k_max: usize) -> Vec<f64> {
    debug_assert!(z > 0.0);
    const PAD: usize = 200;
    let top = k_max + PAD;
    // r[k] = I_{k+1}(z) / I_k(z), downward:
    // r_k = 1 / (2(k+1)/z + r_{k+1}).
    let mut r = vec![0.0_f64; top + 1];
    for k in (0..top).rev() {
        r[k] = 1.0 / (2.0 * (k as f64 + 1.0) / z + r[k + 1]);
    }
    let ln_i0 = if z >= 400.0 {
        // ln I_0 = z - ln(2 pi z)/2 + ln(1 + sum_k a_k / z^k) with the
        // uniform asymptotic coefficients a_k = ((2k-1)!!)^2 / (k! 8^k);
        // six terms leave a relative error below 1e-15 for z >= 400. The
        // coefficients are exact dyadic rationals, written out in full.
        let zi = 1.0 / z;
        #[allow(clippy::excessive_precision)]
        let tail = zi
            * (0.125
                + zi * (0.0703125
                    + zi * (0.0732421875 + zi * (0.112152099609375 + zi * 0.227108001708984375))));
        z - 0.5 * (std::f64::consts::TAU * z).ln() + tail.ln_1p()
    } else {
        // I_0(z) = sum_j (z^2/4)^j / (j!)^2; all terms are positive, the
        // sum stays below f64 overflow for z < 400, and convergence is
        // reached once terms fall under the accumulated total's ulp.
        let q = 0.25 * z * z;
        let mut term = 1.0_f64;
        let mut acc = Neumaier::default();
        acc.add(1.0);
        for j in 1..2000 {
            term *= q / ((j as f64) * (j as f64));
            acc.add(term);
            if term < 1.0e-18 * acc.value() {
                break;
            }
        }
        acc.value().ln()
    };
    let mut out = Vec::with_capacity(k_max + 1);
    let mut acc = Neumaier::default();
    acc.add(ln_i0);
    out.push(acc.value());
    for ratio in r.iter().take(k_max) {
        acc.add(ratio.ln());
        out.push(acc.value());
    }
    out
}

/// `ln P(D)` of a Skellam difference `D = n1 - n2`,
/// `n_i ~ Poisson(mu_i)`, given precomputed `ln I_k(2 sqrt(mu1 mu2))`:
/// `-(mu1 + mu2) + (D/2) ln(mu1/mu2) + ln I_|D|`.
fn skellam_ln_pmf(d: i64, mu_sum: f64, half_ln_ratio: f64, ln_i: &[f64]) -> f64 {
    -mu_sum + d as f64 * half_ln_ratio + ln_i[d.unsigned_abs() as usize]
}

/// Outcome-averaged posterior variance of the spin projection after one
/// difference-count measurement, with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorReport {
    /// Phase coupling implied by the requested measurement strength.
    pub ktilde: f64,
    /// Variance of the (truncated, renormalised) binomial prior.
    pub prior_variance: f64,
    /// `E_D[Var(m | D)]`, the expected posterior variance.
    pub expected_posterior_variance: f64,
    /// Gaussian-limit reference `(N_at / 4) / (1 + kappa^2)`.
    pub gaussian_reference: f64,
    /// Total probability captured by the finite outcome grid.
    pub outcome_coverage: f64,
    /// Number of spin grid points used.
    pub n_prior_points: usize,
    /// Number of outcome grid points used.
    pub n_outcomes: usize,
}

/// Bayesian posterior oracle. Priors: `m = k - N/2`,
/// `k ~ Binomial(N, 1/2)` truncated at +-8 sigma. Likelihood: Skellam
/// difference counts with per-port means `(N_ph/2)(1 +- sin(ktilde m))`.
/// Outcomes span +-6 sigma of the marginal. Deterministic; no sampling.
pub fn posterior_conditional_variance(
    n_atoms: u64,
    n_photons: f64,
    kappa_sq: f64,
) -> Result<PosteriorReport> {
    if !(4..=2_000_000).contains(&n_atoms) {
        return Err(Error::Domain(format!(
            "posterior oracle supports 4 <= N_at <= 2e6, got {n_atoms}"
        )));
    }
    if n_photons.is_nan() || !(100.0..=1.0e8).contains(&n_photons) {
        return Err(Error::Domain(format!(
            "posterior oracle supports 1e2 <= N_ph <= 1e8, got {n_photons}"
        )));
    }
    if kappa_sq.is_nan() || !(0.0..=100.0).contains(&kappa_sq) {
        return Err(Error::Domain(format!(
            "posterior oracle supports 0 <= kappa^2 <= 100, got {kappa_sq}"
        )));
    }
    let n = n_atoms as f64;
    let ktilde = (4.0 * kappa_sq / (n * n_photons)).sqrt();

    // Truncated, renormalised binomial prior on the spin grid.
    let sigma_m = 0.5 * n.sqrt();
    let half = 0.5 * n;
    let k_lo = ((half - 8.0 * sigma_m).floor().max(0.0)) as u64;
    let k_hi = ((half + 8.0 * sigma_m).ceil().min(n)) as u64;
    let ms: Vec<f64> = (k_lo..=k_hi).map(|k| k as f64 - half).collect();
    let ln_w: Vec<f64> = (k_lo..=k_hi)
        .map(|k| ln_binomial_weight(n_atoms, k))
        .collect();
    let w_max = ln_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut norm = Neumaier::default();
    let mut w: Vec<f64> = ln_w.iter().map(|lw| (lw - w_max).exp()).collect();
    for &v in &w {
        norm.add(v);
    }
    let norm = norm.value();
    for v in &mut w {
        *v /= norm;
    }
    let prior_var = {
        let mut e1 = Neumaier::default();
        let mut e2 = Neumaier::default();
        for (wi, mi) in w.iter().zip(&ms) {
            e1.add(wi * mi);
            e2.add(wi * mi * mi);
        }
        let mu = e1.value();
        e2.value() - mu * mu
    };

    // The accumulated phase must stay in the monotonic branch of sin.
    let max_phase = ktilde * ms.last().unwrap().abs().max(ms[0].abs());
    if max_phase > 1.0 {
        return Err(Error::Domain(format!(
            "phase ktilde * m_max = {max_phase:.3} rad leaves the monotonic branch; \
             reduce kappa^2 or increase N_ph"
        )));
    }

    // Zero measurement strength: the posterior is the prior, exactly.
    if kappa_sq == 0.0 {
        return Ok(PosteriorReport {
            ktilde,
            prior_variance: prior_var,
            expected_posterior_variance: prior_var,
            gaussian_reference: 0.25 * n,
            outcome_coverage: 1.0,
            n_prior_points: ms.len(),
            n_outcomes: 0,
        });
    }

    // Outcome grid covering +-6 sigma of the marginal difference count.
    let sigma_d = (n_photons * (1.0 + kappa_sq)).sqrt();
    let d_max = (6.0 * sigma_d).ceil() as i64;
    let n_outcomes = (2 * d_max + 1) as usize;

    // Per-m Skellam log-likelihood tables over all outcomes.
    let mut ln_like: Vec<Vec<f64>> = Vec::with_capacity(ms.len());
    for &m in &ms {
        let s = (ktilde * m).sin();
        let z = n_photons * (ktilde * m).cos();
        let half_ln_ratio = 0.5 * ((1.0 + s).ln() - (1.0 - s).ln());
        let ln_i = ln_bessel_i_array(z, d_max as usize);
        let mut row = Vec::with_capacity(n_outcomes);
        for d in -d_max..=d_max {
            row.push(skellam_ln_pmf(d, n_photons, half_ln_ratio, &ln_i));
        }
        ln_like.push(row);
    }

    // For each outcome: posterior moments by shifted exponentials. The
    // outcome index walks columns of the row-major likelihood tables.
    let mut coverage = Neumaier::default();
    let mut expected_var = Neumaier::default();
    #[allow(clippy::needless_range_loop)]
    for di in 0..n_outcomes {
        let mut lmax = f64::NEG_INFINITY;
        for (lw, row) in ln_w.iter().zip(&ln_like) {
            let v = lw + row[di];
            if v > lmax {
                lmax = v;
            }
        }
        let mut s0 = Neumaier::default();
        let mut s1 = Neumaier::default();
        let mut s2 = Neumaier::default();
        for ((lw, row), m) in ln_w.iter().zip(&ln_like).zip(&ms) {
            let p = (lw + row[di] - lmax).exp();
            s0.add(p);
            s1.add(p * m);
            s2.add(p * m * m);
        }
        let z0 = s0.value();
        let mean = s1.value() / z0;
        let var = s2.value() / z0 - mean * mean;
        // P(D) = sum_i prior_i * like_i with the truncated prior
        // normalised by W = norm * exp(w_max); the loop above summed
        // exp(ln w + ln like - lmax), so scale back by exp(lmax) / W.
        let p_outcome = z0 * (lmax - w_max).exp() / norm;
        coverage.add(p_outcome);
        expected_var.add(p_outcome * var);
    }
    let coverage = coverage.value();
    if coverage < 0.99 {
        return Err(Error::Numerical(format!(
            "outcome grid captured only {coverage:.4} of the probability mass"
        )));
    }
    Ok(PosteriorReport {
        ktilde,
        prior_variance: prior_var,
        expected_posterior_variance: expected_var.value() / coverage,
        gaussian_reference: 0.25 * n / (1.0 + kappa_sq),
        outcome_coverage: coverage,
        n_prior_points: ms.len(),
        n_outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn direct_sum_matches_characteristic_function_form() {
        for &(n, nph, kt) in &[
            (100_u64, 1.0e4, 1.0e-3),
            (57, 3.0e3, 2.0e-3),
            (4, 100.0, 5.0e-2),
        ] {
            let exact = exact_output_variance(n, nph, kt).unwrap();
            let closed = closed_form_output_variance(n, nph, kt);
            assert_relative_eq!(exact, closed, max_relative = 1.0e-12);
        }
    }

    #[test]
    fn no_atoms_means_pure_shot_noise() {
        assert_eq!(exact_output_variance(0, 400.0, 1.0e-3).unwrap(), 100.0);
        assert_eq!(exact_two_colour_variance(0, 400.0, 1.0e-3).unwrap(), 800.0);
    }

    #[test]
    fn guard_rails() {
        assert!(exact_output_variance(201, 100.0, 1.0e-6).is_err());
        assert!(exact_output_variance(100, 1.0e5, 1.0e-6).is_err());
        assert!(exact_output_variance(100, 100.0, 0.01).is_err()); // phase 1.0
    }

    #[test]
    fn two_colour_variance_near_linearised_form() {
        // kappa^2 = 0.25 at N = 100, N_ph = 1e4.
        let kt = 1.0e-3;
        let exact = exact_two_colour_variance(100, 1.0e4, kt).unwrap();
        let formula = 2.0e4 * (1.0 + 2.0 * 0.25 * (1.0 + 100.0 / 2.0e4));
        assert_relative_eq!(exact, formula, max_relative = 1.0e-2);
    }

    /// Brute-force Skellam pmf by truncated Poisson convolution.
    fn skellam_pmf_brute(d: i64, mu1: f64, mu2: f64) -> f64 {
        let pois = |k: i64, mu: f64| -> f64 {
            if k < 0 {
                0.0
            } else {
                (-mu + k as f64 * mu.ln() - ln_gamma(k as f64 + 1.0)).exp()
            }
        };
        (0..200).map(|n| pois(n + d, mu1) * pois(n, mu2)).sum()
    }

    #[test]
    fn skellam_matches_poisson_convolution() {
        let (mu1, mu2): (f64, f64) = (3.2, 1.7);
        let z = 2.0 * (mu1 * mu2).sqrt();
        let half_ln_ratio = 0.5 * (mu1 / mu2).ln();
        let ln_i = ln_bessel_i_array(z, 16);
        for d in -10_i64..=16 {
            let via_bessel = skellam_ln_pmf(d, mu1 + mu2, half_ln_ratio, &ln_i).exp();
            let brute = skellam_pmf_brute(d, mu1, mu2);
            assert_relative_eq!(via_bessel, brute, max_relative = 1.0e-12);
        }
    }

    #[test]
    fn bessel_recurrence_identity_on_both_anchor_branches() {
        // I_{k-1} - I_{k+1} = (2k/z) I_k, checked in ratio space so it
        // works at z = 1e4 where I_k itself overflows. Straddles the
        // series/asymptotic anchor switch at z = 400. At large z the
        // stored logarithms are ~z, so reconstructing the near-unity
        // ratios loses ~z * ulp; scale the tolerance accordingly.
        for &z in &[5.0, 399.0, 401.0, 1.0e4] {
            let tol = if z > 1.0e3 { 1.0e-7 } else { 1.0e-10 };
            let ln_i = ln_bessel_i_array(z, 8);
            for k in 1..7_usize {
                let up = (ln_i[k - 1] - ln_i[k]).exp();
                let down = (ln_i[k + 1] - ln_i[k]).exp();
                assert_relative_eq!(up - down, 2.0 * k as f64 / z, max_relative = tol);
            }
        }
    }

    #[test]
    fn posterior_reduces_to_prior_without_coupling() {
        let rep = posterior_conditional_variance(400, 1.0e3, 0.0).unwrap();
        assert_eq!(rep.expected_posterior_variance, rep.prior_variance);
        assert_abs_diff_eq!(rep.prior_variance, 100.0, epsilon = 1.0e-6);
    }

    #[test]
    fn posterior_matches_gaussian_limit() {
        let rep = posterior_conditional_variance(2500, 2500.0, 1.0).unwrap();
        let reference = 2500.0 / 8.0;
        let rel = (rep.expected_posterior_variance - reference).abs() / reference;
        assert!(rel < 0.01, "rel = {rel:.4}, report = {rep:?}");
        assert!(rep.outcome_coverage > 0.999);
    }

    #[test]
    fn posterior_guard_rails() {
        assert!(posterior_conditional_variance(2, 1.0e4, 1.0).is_err());
        assert!(posterior_conditional_variance(100, 10.0, 1.0).is_err());
        assert!(posterior_conditional_variance(100, 1.0e4, 200.0).is_err());
    }
}
