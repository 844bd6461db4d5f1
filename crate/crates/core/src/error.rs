//! Error type shared across the engine.

use thiserror::Error;

/// Errors surfaced by the key-rate engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter failed validation; `field` names the offending input.
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameter {
        /// Snake-case field name, matching the config key.
        field: &'static str,
        /// Human-readable description of the violated constraint.
        message: String,
    },

    /// A linear program has no feasible point; lists the constraints that
    /// could not be satisfied simultaneously.
    #[error("infeasible linear program; violated constraints: {0:?}")]
    Infeasible(Vec<String>),

    /// The leakage optimization was handed bounds whose feasible set is empty.
    #[error("infeasible parity bounds: cap sum {cap_sum:.6e} < gain {q_mu:.6e}")]
    InfeasibleBounds {
        /// Sum of the four parity caps.
        cap_sum: f64,
        /// Code-mode gain the caps must cover.
        q_mu: f64,
    },

    /// A yield estimate lacks an entry required by a downstream bound.
    #[error("yield estimate missing required entry Y({n},{m})")]
    MissingYield {
        /// Alice-side photon number.
        n: u32,
        /// Bob-side photon number.
        m: u32,
    },

    /// The scan over the truncation index k was still improving at `k_max`;
    /// the bound would tighten further with a larger scan range.
    #[error("parity-bound k-scan still improving at k_max = {k_max}; raise k_max")]
    KScanSaturated {
        /// Upper end of the scanned range.
        k_max: u32,
    },

    /// A sweep failed while evaluating one loss point.
    #[error("at {loss_db} dB: {source}")]
    AtLoss {
        /// Loss point being evaluated when the error occurred.
        loss_db: f64,
        /// Underlying failure.
        source: Box<Error>,
    },
}

impl Error {
    /// True if this error (or its sweep-wrapped source) is an LP
    /// infeasibility.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::Infeasible(_) | Error::InfeasibleBounds { .. } => true,
            Error::AtLoss { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
