//! Run configuration: a flat JSON object with snake_case keys.
//!
//! Unknown keys are rejected so typos fail loudly. Command-line flags
//! override file values; precedence is total (flag beats file, file beats
//! default) and applied before validation.

use std::path::PathBuf;

use serde::Deserialize;
use tfqkd_core::ExperimentParams;

/// Which sweep(s) to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    /// Infinite-decoy pipeline only.
    Infinite,
    /// Four-intensity finite-decoy pipeline only.
    Finite,
    /// Both pipelines, infinite rows first.
    Both,
}

fn default_true() -> bool {
    true
}

fn default_format() -> String {
    "csv".to_string()
}

/// Flat run configuration as stored on disk.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Dark count probability per detector per trial.
    pub dark_count_rate: f64,
    /// Detector efficiency in (0, 1].
    pub detector_efficiency: f64,
    /// Code-mode mean photon number; also the starting point for the
    /// per-loss intensity optimization and the MC validation intensity.
    pub signal_intensity: f64,
    /// First decoy intensity nu1.
    pub decoy_nu1: f64,
    /// Second decoy intensity nu2 (vacuum is implied as the fourth).
    pub decoy_nu2: f64,
    /// Error-correction inefficiency f >= 1.
    pub error_correction_f: f64,
    /// Misalignment fraction in [0, 0.5); defaults to zero.
    #[serde(default)]
    pub misalignment: f64,
    /// Sweep start, total fiber loss in dB.
    pub loss_start_db: f64,
    /// Sweep end, inclusive.
    pub loss_end_db: f64,
    /// Sweep step in dB.
    pub loss_step_db: f64,
    /// Which pipeline(s) to run.
    pub mode: ModeChoice,
    /// Log the reference-bound crossing summary after the sweep.
    #[serde(default = "default_true")]
    pub bounds_curves: bool,
    /// Monte-Carlo validation trial count; enables validation when set.
    #[serde(default)]
    pub mc_trials: Option<u64>,
    /// Seed for the Monte-Carlo validation streams.
    #[serde(default)]
    pub mc_seed: Option<u64>,
    /// Output CSV path.
    pub output: PathBuf,
    /// Output format; only "csv" is supported.
    #[serde(default = "default_format")]
    pub format: String,
}

impl RunConfig {
    /// Validate cross-field constraints and build the experiment parameters
    /// (anchored at the sweep's starting loss).
    pub fn to_params(&self) -> Result<ExperimentParams, tfqkd_core::Error> {
        ExperimentParams::new(
            self.dark_count_rate,
            self.detector_efficiency,
            self.loss_start_db,
            self.signal_intensity,
            (self.decoy_nu1, self.decoy_nu2),
            self.error_correction_f,
            self.misalignment,
        )
    }

    /// Validate the sweep grid and format fields.
    pub fn validate_run(&self) -> Result<(), String> {
        if self.format != "csv" {
            return Err(format!(
                "invalid parameter `format`: only \"csv\" is supported, got {:?}",
                self.format
            ));
        }
        if !(self.loss_start_db <= self.loss_end_db) {
            return Err(format!(
                "invalid parameter `loss_start_db`: start {} exceeds end {}",
                self.loss_start_db, self.loss_end_db
            ));
        }
        if !(self.loss_step_db > 0.0) {
            return Err(format!(
                "invalid parameter `loss_step_db`: must be > 0, got {}",
                self.loss_step_db
            ));
        }
        if self.mc_trials.is_some_and(|t| t == 0) {
            return Err("invalid parameter `mc_trials`: must be >= 1".to_string());
        }
        Ok(())
    }
}
