//! Key-rate assembly, per-loss intensity optimization, and loss sweeps.
//!
//! The secret key rate per code-mode trial is
//!
//! ```text
//! R = Q_mu [ 1 - f h(e_mu, 1 - e_mu) - I_AE ],
//! ```
//!
//! clamped at zero (a negative value means the analysis certifies nothing;
//! the point is flagged insecure). `h(e, 1-e)` coincides with the binary
//! entropy. The signal intensity is optimized per loss point by a coarse
//! logarithmic scan refined with golden-section search.
//!
//! Reference curves: the repeaterless bound `-log2(1 - eta)` and the
//! single-repeater bound `-log2(1 - sqrt(eta))`, both taken against the
//! fiber-only end-to-end transmittance `10^(-loss_db / 10)` (detector
//! efficiency excluded, since these are channel capacities).

use rayon::prelude::*;

use crate::decoy::{self, finite_decoy_yield_bounds, infinite_decoy_yields, y11_bounds, DecoyGains};
use crate::error::{Error, Result};
use crate::leakage::{
    self, finite_parity_bound, infinite_parity_bounds, optimize_leakage, ParityBounds, ParityClass,
};
use crate::params::ExperimentParams;
use crate::photonics::{code_mode_stats, effective_transmittance};
use crate::search::golden_max;

/// Photon-number cutoff used when evaluating the infinite-decoy parity
/// series; the tail beyond this order is below the series tolerance for all
/// intensities in the search bracket.
pub const INFINITE_YIELD_CUTOFF: u32 = 40;

/// Search bracket for the signal intensity.
pub const MU_BRACKET: (f64, f64) = (1e-3, 1.0);

/// Absolute tolerance on the optimized intensity.
pub const MU_TOL: f64 = 1e-4;

/// Points of the coarse logarithmic pre-scan that seeds the golden-section
/// refinement.
const MU_SCAN_POINTS: usize = 25;

/// Which yield-estimation route feeds the leakage bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoyMode {
    /// Exact yields (infinitely many decoy intensities).
    Infinite,
    /// Four-intensity linear-programming bounds.
    Finite,
}

impl DecoyMode {
    /// Lower-case label used in CSV output.
    pub fn label(self) -> &'static str {
        match self {
            DecoyMode::Infinite => "infinite",
            DecoyMode::Finite => "finite",
        }
    }
}

/// One sample of the rate-loss curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    /// Total fiber loss in dB.
    pub fiber_loss_db: f64,
    /// Signal intensity that maximizes the rate at this loss.
    pub optimal_mu: f64,
    /// Code-mode gain at the optimum.
    pub q_mu: f64,
    /// Code-mode error rate at the optimum.
    pub e_mu: f64,
    /// Leakage bound at the optimum, in bits.
    pub i_ae_upper: f64,
    /// Secret key rate per code-mode trial, clamped at zero.
    pub key_rate: f64,
    /// Yield-estimation route used.
    pub mode: DecoyMode,
    /// True when the unclamped rate was negative (nothing certified).
    pub insecure: bool,
}

/// Secret key rate per trial, clamped at zero. The boolean is true when the
/// raw value was negative.
///
/// # Example
///
/// ```
/// use tfqkd_core::rates::key_rate;
///
/// assert_eq!(key_rate(1.0, 0.0, 1.0, 0.0), (1.0, false)); // perfect channel
/// let (rate, insecure) = key_rate(0.5, 0.5, 1.15, 0.0);   // h(1/2,1/2) = 1
/// assert_eq!(rate, 0.0);
/// assert!(insecure);
/// ```
pub fn key_rate(q_mu: f64, e_mu: f64, error_correction_f: f64, i_ae_upper: f64) -> (f64, bool) {
    let correction = error_correction_f * crate::leakage::h(e_mu, 1.0 - e_mu).unwrap_or(f64::NAN);
    let raw = q_mu * (1.0 - correction - i_ae_upper);
    if raw >= 0.0 {
        (raw, false)
    } else {
        (0.0, true)
    }
}

/// Repeaterless secret-key capacity `-log2(1 - eta)` in bits per trial.
pub fn plob_bound(eta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::Domain(format!(
            "repeaterless bound needs eta in [0, 1), got {eta}"
        )));
    }
    Ok(-(1.0 - eta).log2())
}

/// Single-repeater capacity `-log2(1 - sqrt(eta))` in bits per trial.
pub fn single_repeater_bound(eta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::Domain(format!(
            "single-repeater bound needs eta in [0, 1), got {eta}"
        )));
    }
    Ok(-(1.0 - eta.sqrt()).log2())
}

/// Fiber-only end-to-end transmittance for a total loss in dB.
pub fn fiber_transmittance(fiber_loss_db: f64) -> f64 {
    10f64.powf(-fiber_loss_db / 10.0)
}

/// Run the full pipeline at a fixed signal intensity.
///
/// In finite mode the ten decoy gains are synthesized from the honest
/// channel model at the candidate intensity.
pub fn evaluate_rate(
    fiber_loss_db: f64,
    mu: f64,
    params: &ExperimentParams,
    mode: DecoyMode,
) -> Result<RatePoint> {
    let eta = effective_transmittance(fiber_loss_db, params.detector_efficiency);
    let stats = code_mode_stats(eta, mu, params.dark_count_rate, params.misalignment);

    let parity = match mode {
        DecoyMode::Infinite => {
            let yields =
                infinite_decoy_yields(eta, params.dark_count_rate, INFINITE_YIELD_CUTOFF);
            infinite_parity_bounds(mu, &yields, stats.gain)?
        }
        DecoyMode::Finite => {
            let (nu1, nu2) = params.decoy_intensities;
            let gains = DecoyGains::honest(mu, nu1, nu2, eta, params.dark_count_rate);
            let mut estimate =
                finite_decoy_yield_bounds(&gains, (mu, nu1, nu2), decoy::DEFAULT_CUTOFF)?;
            let (y11_lo, y11_hi) = y11_bounds(&estimate, mu)?;
            estimate.set_bounds(1, 1, y11_lo, y11_hi);
            let cap = |class| {
                finite_parity_bound(class, mu, &estimate, gains.mu_mu, leakage::DEFAULT_K_MAX)
            };
            ParityBounds {
                b00: cap(ParityClass::EvenEven)?,
                b10: cap(ParityClass::OddEven)?,
                b11: cap(ParityClass::OddOdd)?,
                b01: cap(ParityClass::EvenOdd)?,
                q_mu: stats.gain,
            }
        }
    };

    let i_ae_upper = optimize_leakage(&parity)?;
    let (rate, insecure) = key_rate(
        stats.gain,
        stats.error_rate,
        params.error_correction_f,
        i_ae_upper,
    );
    Ok(RatePoint {
        fiber_loss_db,
        optimal_mu: mu,
        q_mu: stats.gain,
        e_mu: stats.error_rate,
        i_ae_upper,
        key_rate: rate,
        mode,
        insecure,
    })
}

/// Maximize the key rate over the signal intensity at one loss point.
///
/// A coarse logarithmic scan over [`MU_BRACKET`] locates the best region,
/// then golden-section search refines the intensity to [`MU_TOL`]. If every
/// candidate certifies zero rate, the point is returned with `key_rate = 0`
/// at the scan's best intensity.
pub fn optimize_intensity(
    fiber_loss_db: f64,
    params: &ExperimentParams,
    mode: DecoyMode,
) -> Result<RatePoint> {
    let (mu_lo, mu_hi) = MU_BRACKET;
    let log_lo = mu_lo.log10();
    let log_hi = mu_hi.log10();
    let mut best_idx = 0;
    let mut best_rate = f64::NEG_INFINITY;
    let mut grid = Vec::with_capacity(MU_SCAN_POINTS);
    for i in 0..MU_SCAN_POINTS {
        let t = i as f64 / (MU_SCAN_POINTS - 1) as f64;
        let mu = 10f64.powf(log_lo + t * (log_hi - log_lo));
        let point = evaluate_rate(fiber_loss_db, mu, params, mode)?;
        if point.key_rate > best_rate {
            best_rate = point.key_rate;
            best_idx = i;
        }
        grid.push(mu);
    }

    let bracket_lo = grid[best_idx.saturating_sub(1)];
    let bracket_hi = grid[(best_idx + 1).min(MU_SCAN_POINTS - 1)];
    // Golden-section refinement; evaluation failures inside the closure are
    // treated as zero-rate candidates and cannot win unless everything fails.
    let objective = |mu: f64| {
        evaluate_rate(fiber_loss_db, mu, params, mode)
            .map(|p| p.key_rate)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (mu_best, _) = golden_max(objective, bracket_lo, bracket_hi, MU_TOL);
    evaluate_rate(fiber_loss_db, mu_best, params, mode)
}

/// Sweep the loss axis, optimizing the intensity at every grid point.
///
/// Points are independent and evaluated in parallel; the returned order is
/// the grid order regardless of scheduling. `start == end` produces a single
/// point.
pub fn sweep(
    loss_start_db: f64,
    loss_end_db: f64,
    step_db: f64,
    params: &ExperimentParams,
    mode: DecoyMode,
) -> Result<Vec<RatePoint>> {
    if !(loss_start_db <= loss_end_db) {
        return Err(Error::Domain(format!(
            "sweep needs start <= end, got [{loss_start_db}, {loss_end_db}]"
        )));
    }
    if !(step_db > 0.0) {
        return Err(Error::Domain(format!("sweep step must be > 0, got {step_db}")));
    }
    let mut losses = Vec::new();
    let mut loss = loss_start_db;
    // Tolerate float accumulation at the last grid point.
    while loss <= loss_end_db + 1e-9 * step_db {
        losses.push(loss);
        loss = loss_start_db + step_db * (losses.len() as f64);
    }

    losses
        .par_iter()
        .map(|&loss_db| {
            optimize_intensity(loss_db, params, mode).map_err(|e| Error::AtLoss {
                loss_db,
                source: Box::new(e),
            })
        })
        .collect()
}
