//! Experiment parameters shared by every stage of the pipeline.

use crate::error::{Error, Result};

/// Physical and protocol parameters of one experimental setup.
///
/// Loss is expressed as the total Alice-to-Bob fiber loss in dB; each arm to
/// the midpoint carries half of it. Detector efficiency folds into the
/// effective per-arm transmittance (see
/// [`photonics::effective_transmittance`](crate::photonics::effective_transmittance)).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentParams {
    /// Dark count probability per detector per trial, in `[0, 1)`.
    pub dark_count_rate: f64,
    /// Detector efficiency, in `(0, 1]`.
    pub detector_efficiency: f64,
    /// Total Alice-to-Bob fiber loss in dB, `>= 0`.
    pub fiber_loss_db: f64,
    /// Code-mode mean photon number mu, `> 0`.
    pub signal_intensity: f64,
    /// Decoy mean photon numbers (nu1, nu2) with `mu > nu1 > nu2 > 0`;
    /// vacuum is implied as the fourth intensity.
    pub decoy_intensities: (f64, f64),
    /// Error-correction inefficiency f, `>= 1`.
    pub error_correction_f: f64,
    /// Misalignment: fraction of code-mode intensity routed to the wrong
    /// detector, in `[0, 0.5)`.
    pub misalignment: f64,
}

impl ExperimentParams {
    /// Validate and construct a parameter set.
    pub fn new(
        dark_count_rate: f64,
        detector_efficiency: f64,
        fiber_loss_db: f64,
        signal_intensity: f64,
        decoy_intensities: (f64, f64),
        error_correction_f: f64,
        misalignment: f64,
    ) -> Result<Self> {
        let params = Self {
            dark_count_rate,
            detector_efficiency,
            fiber_loss_db,
            signal_intensity,
            decoy_intensities,
            error_correction_f,
            misalignment,
        };
        params.validate()?;
        Ok(params)
    }

    /// Check every invariant, naming the offending field on failure.
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, field: &'static str, message: String) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter { field, message })
            }
        }

        check(
            self.dark_count_rate.is_finite()
                && (0.0..1.0).contains(&self.dark_count_rate),
            "dark_count_rate",
            format!("must be in [0, 1), got {}", self.dark_count_rate),
        )?;
        check(
            self.detector_efficiency.is_finite()
                && self.detector_efficiency > 0.0
                && self.detector_efficiency <= 1.0,
            "detector_efficiency",
            format!("must be in (0, 1], got {}", self.detector_efficiency),
        )?;
        check(
            self.fiber_loss_db.is_finite() && self.fiber_loss_db >= 0.0,
            "fiber_loss_db",
            format!("must be >= 0 dB, got {}", self.fiber_loss_db),
        )?;
        check(
            self.signal_intensity.is_finite() && self.signal_intensity > 0.0,
            "signal_intensity",
            format!("must be > 0, got {}", self.signal_intensity),
        )?;
        let (nu1, nu2) = self.decoy_intensities;
        check(
            nu1.is_finite() && nu2.is_finite() && nu2 > 0.0 && nu1 > nu2,
            "decoy_intensities",
            format!("need nu1 > nu2 > 0, got ({nu1}, {nu2})"),
        )?;
        check(
            self.signal_intensity > nu1,
            "signal_intensity",
            format!(
                "signal intensity mu = {} must exceed nu1 = {nu1}",
                self.signal_intensity
            ),
        )?;
        check(
            self.error_correction_f.is_finite() && self.error_correction_f >= 1.0,
            "error_correction_f",
            format!("must be >= 1, got {}", self.error_correction_f),
        )?;
        check(
            self.misalignment.is_finite()
                && (0.0..0.5).contains(&self.misalignment),
            "misalignment",
            format!("must be in [0, 0.5), got {}", self.misalignment),
        )?;
        Ok(())
    }

    /// Same parameters at a different total fiber loss.
    pub fn with_fiber_loss(&self, fiber_loss_db: f64) -> Self {
        Self {
            fiber_loss_db,
            ..self.clone()
        }
    }

    /// Effective per-arm transmittance for this setup.
    pub fn transmittance(&self) -> f64 {
        crate::photonics::effective_transmittance(self.fiber_loss_db, self.detector_efficiency)
    }
}
