//! Closed-form models of the honest channel, detectors, and every directly
//! observable statistic.
//!
//! Conventions:
//! - Both parties send coherent pulses of mean photon number mu toward an
//!   untrusted midpoint; the total fiber loss splits evenly between the two
//!   arms, so a quoted loss of L dB gives each arm `10^(-L/20)` transmittance.
//! - Detector efficiency multiplies into the per-arm transmittance eta.
//! - In code mode the interfered intensity `2*eta*mu` lands on the
//!   phase-matched detector; misalignment routes a fraction `e_M` of it to
//!   the other detector instead.
//! - Dark counts fire independently on each detector with probability `p_d`
//!   per trial.

use crate::error::{Error, Result};

/// Terms of a Poisson series are accumulated until the remaining tail mass
/// drops below this value.
pub const POISSON_TAIL_TOL: f64 = 1e-12;

/// Hard cap on the photon number considered in truncated Poisson series.
pub const POISSON_HARD_CAP: u32 = 80;

/// Code-mode observables: the gain `Q_mu` and the raw-bit error rate `e_mu`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodeModeStats {
    /// Probability per code-mode trial that a raw key bit is produced.
    pub gain: f64,
    /// Error probability of a produced raw key bit.
    pub error_rate: f64,
}

/// Poisson probability `e^-nu * nu^k / k!`.
///
/// Evaluated in log space so large `k` stays finite; `nu = 0` degenerates to
/// the deterministic vacuum.
pub fn poisson_pmf(nu: f64, k: u32) -> Result<f64> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::Domain(format!(
            "poisson intensity must be finite and >= 0, got {nu}"
        )));
    }
    if nu == 0.0 {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    let kf = f64::from(k);
    Ok((kf * nu.ln() - nu - ln_factorial(k)).exp())
}

/// First `k_max + 1` Poisson probabilities for intensity `nu`, by the stable
/// upward recurrence `P_k = P_{k-1} * nu / k`.
pub fn poisson_pmf_table(nu: f64, k_max: u32) -> Result<Vec<f64>> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::Domain(format!(
            "poisson intensity must be finite and >= 0, got {nu}"
        )));
    }
    let mut table = Vec::with_capacity(k_max as usize + 1);
    let mut p = (-nu).exp();
    table.push(p);
    for k in 1..=k_max {
        p *= nu / f64::from(k);
        table.push(p);
    }
    Ok(table)
}

fn ln_factorial(k: u32) -> f64 {
    (2..=u64::from(k)).map(|i| (i as f64).ln()).sum()
}

/// Effective per-arm transmittance: detector efficiency times half the total
/// fiber loss, `eta = eta_d * 10^(-loss_db / 20)`.
pub fn effective_transmittance(fiber_loss_db: f64, detector_efficiency: f64) -> f64 {
    detector_efficiency * 10f64.powf(-fiber_loss_db / 20.0)
}

/// Code-mode gain and error rate for the honest channel.
///
/// With zero misalignment these are exactly
///
/// ```text
/// Q_mu = (1 - p_d) * [1 - (1 - p_d) e^(-2 eta mu)] + (1 - p_d) e^(-2 eta mu) p_d
/// e_mu = e^(-2 eta mu) p_d / [1 - (1 - 2 p_d) e^(-2 eta mu)]
/// ```
///
/// With misalignment `e_M > 0` the interfered intensity splits as
/// `2 eta mu (1 - e_M)` onto the matched detector and `2 eta mu e_M` onto the
/// other one, and the same single-click accounting applies: a trial counts as
/// correct when only the matched detector clicks and as an error when only
/// the other one does.
pub fn code_mode_stats(
    eta: f64,
    signal_intensity: f64,
    dark_count_rate: f64,
    misalignment: f64,
) -> CodeModeStats {
    let p_d = dark_count_rate;
    let two_eta_mu = 2.0 * eta * signal_intensity;
    if misalignment == 0.0 {
        // Literal closed forms, kept as separate arithmetic so the zero
        // misalignment case is reproduced expression-for-expression.
        let e = (-two_eta_mu).exp();
        let gain = (1.0 - p_d) * (1.0 - (1.0 - p_d) * e) + (1.0 - p_d) * e * p_d;
        let error_rate = if gain > 0.0 {
            e * p_d / (1.0 - (1.0 - 2.0 * p_d) * e)
        } else {
            0.0
        };
        return CodeModeStats { gain, error_rate };
    }

    let matched = two_eta_mu * (1.0 - misalignment);
    let wrong = two_eta_mu * misalignment;
    // Click probability per detector: signal or dark count.
    let click_matched = 1.0 - (1.0 - p_d) * (-matched).exp();
    let click_wrong = 1.0 - (1.0 - p_d) * (-wrong).exp();
    let p_correct = click_matched * (1.0 - click_wrong);
    let p_error = click_wrong * (1.0 - click_matched);
    let gain = p_correct + p_error;
    let error_rate = if gain > 0.0 { p_error / gain } else { 0.0 };
    CodeModeStats { gain, error_rate }
}

/// Yield of the honest channel for an (n, m) photon pair:
/// `Y_{n,m} = 1 - (1 - p_d)^2 (1 - eta)^(n + m)`.
///
/// Double clicks are absorbed by the random L/R assignment, so any click
/// counts as a success announcement.
pub fn honest_yield(n: u32, m: u32, eta: f64, dark_count_rate: f64) -> f64 {
    let survive_none = (1.0 - eta).powi((n + m) as i32);
    1.0 - (1.0 - dark_count_rate) * (1.0 - dark_count_rate) * survive_none
}

/// Closed-form decoy gain `Q_d^{nu_a,nu_b} = 1 - (1 - p_d)^2 e^(-eta (nu_a + nu_b))`,
/// the Poisson average of [`honest_yield`] over both sources.
///
/// # Example
///
/// ```
/// use tfqkd_core::photonics::{honest_decoy_gain, honest_decoy_gain_series};
///
/// let closed = honest_decoy_gain(0.1, 0.1, 0.004585, 8e-8);
/// let series = honest_decoy_gain_series(0.1, 0.1, 0.004585, 8e-8, 20).unwrap();
/// assert!((closed - series).abs() < 1e-12);
/// ```
pub fn honest_decoy_gain(nu_a: f64, nu_b: f64, eta: f64, dark_count_rate: f64) -> f64 {
    let no_click = (1.0 - dark_count_rate) * (1.0 - dark_count_rate);
    1.0 - no_click * (-eta * (nu_a + nu_b)).exp()
}

/// Series evaluation of the decoy gain, truncated at total photon number
/// `n + m <= max_total`. Agrees with [`honest_decoy_gain`] to within the
/// neglected Poisson tail.
pub fn honest_decoy_gain_series(
    nu_a: f64,
    nu_b: f64,
    eta: f64,
    dark_count_rate: f64,
    max_total: u32,
) -> Result<f64> {
    let pa = poisson_pmf_table(nu_a, max_total)?;
    let pb = poisson_pmf_table(nu_b, max_total)?;
    let mut sum = 0.0;
    for n in 0..=max_total {
        for m in 0..=(max_total - n) {
            sum += pa[n as usize] * pb[m as usize] * honest_yield(n, m, eta, dark_count_rate);
        }
    }
    // The neglected (n, m) cells all have yield <= 1, so the series is exact
    // up to the missing Poisson product mass.
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    const REF_PD: f64 = 8e-8;
    const REF_ETA_D: f64 = 0.145;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected:e}, got {actual:e} (tol {tol:e})"
        );
    }

    #[test]
    fn poisson_vacuum_is_deterministic() {
        assert_eq!(poisson_pmf(0.0, 0).unwrap(), 1.0);
        assert_eq!(poisson_pmf(0.0, 3).unwrap(), 0.0);
    }

    #[test]
    fn poisson_matches_definition() {
        assert_close(poisson_pmf(1.0, 0).unwrap(), (-1f64).exp(), 1e-15);
        // P(2, 2) = 2 e^-2, cross-checked below by summing the pmf to 1.
        assert_close(poisson_pmf(2.0, 2).unwrap(), 2.0 * (-2f64).exp(), 1e-15);
        let total: f64 = (0..=50).map(|k| poisson_pmf(2.0, k).unwrap()).sum();
        assert_close(total, 1.0, 1e-12);
    }

    #[test]
    fn poisson_rejects_negative_intensity() {
        assert!(poisson_pmf(-0.1, 0).is_err());
        assert!(poisson_pmf_table(f64::NAN, 4).is_err());
    }

    #[test]
    fn poisson_partial_sums_monotone_to_one() {
        for &nu in &[0.05, 0.3, 1.0] {
            let mut prev = 0.0;
            let mut sum = 0.0;
            for k in 0..=POISSON_HARD_CAP {
                sum += poisson_pmf(nu, k).unwrap();
                assert!(sum >= prev);
                assert!(sum <= 1.0 + 1e-12);
                prev = sum;
            }
            assert_close(sum, 1.0, 1e-12);
        }
    }

    #[test]
    fn poisson_table_matches_log_space_eval() {
        let table = poisson_pmf_table(0.7, 60).unwrap();
        for k in (0..=60).step_by(10) {
            let direct = poisson_pmf(0.7, k).unwrap();
            assert_close(table[k as usize], direct, 1e-15 + direct * 1e-12);
        }
    }

    #[test]
    fn transmittance_reference_points() {
        assert_close(effective_transmittance(0.0, 1.0), 1.0, 1e-15);
        // Half of 20 dB is 10 dB per arm.
        assert_close(effective_transmittance(20.0, 1.0), 0.1, 1e-15);
        assert_close(
            effective_transmittance(30.0, REF_ETA_D),
            4.58530261e-3,
            1e-10,
        );
    }

    #[test]
    fn code_mode_without_dark_counts_has_no_errors() {
        for &(eta, mu) in &[(0.1, 0.05), (0.5, 0.3), (1.0, 1.0)] {
            let stats = code_mode_stats(eta, mu, 0.0, 0.0);
            assert_close(stats.gain, 1.0 - (-2.0 * eta * mu).exp(), 1e-15);
            assert_eq!(stats.error_rate, 0.0);
        }
    }

    #[test]
    fn code_mode_reference_values_at_30_db() {
        let eta = effective_transmittance(30.0, REF_ETA_D);
        let stats = code_mode_stats(eta, 0.1, REF_PD, 0.0);
        // Frozen from a direct evaluation of the closed forms.
        assert_close(stats.gain, 9.1680e-4, 2e-8);
        assert_close(stats.error_rate, 8.7180e-5, 2e-9);
    }

    #[test]
    fn code_mode_zero_misalignment_matches_literal_formulas_bitwise() {
        let eta = effective_transmittance(40.0, REF_ETA_D);
        let mu = 0.07;
        let p_d = REF_PD;
        let e = (-2.0 * eta * mu).exp();
        let q = (1.0 - p_d) * (1.0 - (1.0 - p_d) * e) + (1.0 - p_d) * e * p_d;
        let e_mu = e * p_d / (1.0 - (1.0 - 2.0 * p_d) * e);
        let stats = code_mode_stats(eta, mu, p_d, 0.0);
        assert_eq!(stats.gain.to_bits(), q.to_bits());
        assert_eq!(stats.error_rate.to_bits(), e_mu.to_bits());
    }

    #[test]
    fn misalignment_reduces_to_zero_case_continuously() {
        let eta = effective_transmittance(30.0, REF_ETA_D);
        let at_zero = code_mode_stats(eta, 0.1, REF_PD, 0.0);
        let tiny = code_mode_stats(eta, 0.1, REF_PD, 1e-12);
        assert_close(tiny.gain, at_zero.gain, 1e-12);
        assert_close(tiny.error_rate, at_zero.error_rate, 1e-6);
        // A visible misalignment produces real errors.
        let vis = code_mode_stats(eta, 0.1, REF_PD, 0.00375);
        assert!(vis.error_rate > at_zero.error_rate);
        assert!(vis.error_rate < 0.5);
    }

    #[test]
    fn gain_monotone_in_intensity_and_transmittance() {
        let mut prev = 0.0;
        for i in 1..=20 {
            let mu = 0.05 * f64::from(i);
            let q = code_mode_stats(0.01, mu, REF_PD, 0.0).gain;
            assert!(q > prev);
            prev = q;
        }
        let mut prev_q = 0.0;
        let mut prev_e = f64::INFINITY;
        for i in 1..=20 {
            let eta = 0.05 * f64::from(i);
            let stats = code_mode_stats(eta, 0.1, REF_PD, 0.0);
            assert!(stats.gain > prev_q);
            assert!(stats.error_rate <= prev_e);
            prev_q = stats.gain;
            prev_e = stats.error_rate;
        }
    }

    #[test]
    fn honest_yield_reference_points() {
        assert_eq!(honest_yield(0, 0, 0.3, 0.0), 0.0);
        assert_eq!(honest_yield(1, 0, 1.0, 0.0), 1.0);
        assert_close(honest_yield(1, 0, 0.1, 0.0), 0.1, 1e-15);
    }

    #[test]
    fn honest_yield_monotone_and_bounded() {
        for &p_d in &[0.0, 1e-6, 0.01] {
            for &eta in &[0.0, 0.01, 0.5, 1.0] {
                let mut prev = -1.0;
                for total in 0..10 {
                    let y = honest_yield(total, 0, eta, p_d);
                    assert!((0.0..=1.0).contains(&y));
                    assert!(y >= prev);
                    assert_eq!(y, honest_yield(0, total, eta, p_d));
                    prev = y;
                }
            }
        }
        assert!(honest_yield(1, 1, 0.2, 1e-3) > honest_yield(1, 1, 0.2, 0.0));
        assert!(honest_yield(1, 1, 0.3, 0.0) > honest_yield(1, 1, 0.2, 0.0));
    }

    #[test]
    fn decoy_gain_reference_points() {
        assert_eq!(honest_decoy_gain(0.0, 0.0, 0.5, 0.0), 0.0);
        let p_d = 1e-3;
        assert_close(
            honest_decoy_gain(0.0, 0.0, 0.5, p_d),
            1.0 - (1.0 - p_d) * (1.0 - p_d),
            1e-15,
        );
        // eta at 0.004585 per arm, reference decoy pair.
        let closed = honest_decoy_gain(0.1, 0.1, 0.004585, REF_PD);
        assert_close(closed, 9.17e-4, 5e-7);
        let series = honest_decoy_gain_series(0.1, 0.1, 0.004585, REF_PD, 20).unwrap();
        assert_close(series, closed, 1e-12);
    }

    #[test]
    fn decoy_gain_series_converges_to_closed_form() {
        for &(nu_a, nu_b) in &[(0.1, 0.1), (0.5, 0.01), (1.0, 1.0)] {
            let closed = honest_decoy_gain(nu_a, nu_b, 0.02, REF_PD);
            let series = honest_decoy_gain_series(nu_a, nu_b, 0.02, REF_PD, 30).unwrap();
            assert_close(series, closed, 1e-10);
        }
    }
}
