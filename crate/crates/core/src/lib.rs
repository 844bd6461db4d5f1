//! Key-rate engine for a simplified twin-field QKD protocol.
//!
//! The protocol encodes key bits as phase 0/pi on weak coherent pulses sent
//! by both parties to an untrusted midpoint; decoy trials with
//! phase-randomized pulses estimate the per-photon-number yields that cap the
//! eavesdropper's information. This crate implements the full
//! security-analysis pipeline at desk scale:
//!
//! - [`photonics`]: honest channel/detector models and observable statistics;
//! - [`decoy`]: yield estimation, exact in the infinite-decoy idealization
//!   and via truncated linear programming for four intensities;
//! - [`leakage`]: parity-amplitude caps and the constrained entropy
//!   maximization bounding the leaked information;
//! - [`rates`]: key-rate assembly, per-loss intensity optimization, loss
//!   sweeps, and the repeaterless/single-repeater reference bounds;
//! - [`mc`]: a seeded trial-level Monte-Carlo oracle validating every closed
//!   form in `photonics`.

pub mod decoy;
pub mod error;
pub mod leakage;
pub mod mc;
pub mod params;
pub mod photonics;
pub mod rates;
mod search;

pub use error::{Error, Result};
pub use params::ExperimentParams;
