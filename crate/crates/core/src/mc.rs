//! Trial-level Monte-Carlo simulation of the honest setup.
//!
//! This is the independent oracle for every closed form in
//! [`photonics`](crate::photonics): it samples individual trials (coherent
//! interference routed by the bit pair, Poissonian photon numbers through
//! Bernoulli loss, independent dark counts, double clicks randomized to L/R)
//! and reports empirical gains and error rates with binomial standard
//! errors.
//!
//! Randomness comes from ChaCha12, a named, portable, seedable generator.
//! Each simulation call derives its own stream from `(seed, call tag)`,
//! where the tag folds in the call kind and all of its physical arguments,
//! so calls differing in any parameter are decorrelated. Trials are sharded
//! over [`SHARDS`] fixed substreams derived from `(seed, call tag, shard
//! index)`, so results are identical for a given seed regardless of thread
//! count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::params::ExperimentParams;
use crate::photonics::effective_transmittance;

/// Fixed shard count for parallel trial batches.
pub const SHARDS: u64 = 64;

/// Midpoint announcement for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Announcement {
    /// No detector clicked.
    Fail,
    /// Left detector announced.
    L,
    /// Right detector announced.
    R,
}

/// Which kind of trial was simulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialMode {
    /// Phase-encoded key trial.
    Code,
    /// Phase-randomized intensity trial.
    Decoy,
}

/// Record of a single simulated trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    /// Trial kind.
    pub mode: TrialMode,
    /// Alice's key bit (code mode).
    pub alice_bit: bool,
    /// Bob's key bit (code mode).
    pub bob_bit: bool,
    /// Source intensities used for the trial.
    pub intensities: (f64, f64),
    /// Midpoint announcement; `L`/`R` only when a detector clicked.
    pub announcement: Announcement,
    /// True when both detectors clicked and the announcement was the fair
    /// tiebreak.
    pub double_click: bool,
}

/// Empirical gain of one decoy setting with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEstimate {
    /// Click fraction.
    pub gain: f64,
    /// `sqrt(p (1-p) / trials)` at the empirical `p`.
    pub std_err: f64,
    /// Number of simulated trials.
    pub trials: u64,
}

/// Aggregated simulation results.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    /// Trials per estimate.
    pub trials: u64,
    /// Empirical code-mode gain.
    pub empirical_q: f64,
    /// Binomial standard error of the gain.
    pub q_std_err: f64,
    /// Empirical code-mode error rate (errors over announced trials).
    pub empirical_e: f64,
    /// Binomial standard error of the error rate.
    pub e_std_err: f64,
    /// Announced trials.
    pub successes: u64,
    /// Announced trials whose reconstructed bit was wrong.
    pub errors: u64,
    /// Trials where both detectors clicked (randomized to L or R).
    pub double_clicks: u64,
    /// Empirical decoy gains keyed by `(nu_a, nu_b)`; filled by
    /// [`simulate_all_gains`].
    pub decoy_gains: Vec<((f64, f64), GainEstimate)>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent ChaCha12 stream for `(seed, call tag, shard)`.
fn shard_rng(seed: u64, tag: u64, shard: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(splitmix64(tag ^ splitmix64(shard)));
    rng
}

/// Call tag folding the call kind and every physical argument, so calls
/// that differ in any parameter draw from unrelated streams.
fn call_tag(kind: u64, values: &[f64]) -> u64 {
    let mut tag = splitmix64(kind);
    for v in values {
        tag = splitmix64(tag ^ v.to_bits());
    }
    tag
}

const CODE_TAG: u64 = 0x636f_6465; // "code"
const DECOY_TAG: u64 = 0x6465_636f; // "deco"

fn shard_sizes(trials: u64) -> Vec<u64> {
    let base = trials / SHARDS;
    let extra = trials % SHARDS;
    (0..SHARDS)
        .map(|i| base + u64::from(i < extra))
        .collect()
}

/// Simulate one code-mode trial. The interfered intensity `2 eta mu` lands
/// on the detector selected by the bit pair (`L` when the bits agree),
/// except for the misaligned fraction which lands on the other one; dark
/// counts are independent per detector; double clicks announce L or R with a
/// fair draw.
pub fn run_code_trial(
    params: &ExperimentParams,
    eta: f64,
    rng: &mut ChaCha12Rng,
) -> TrialOutcome {
    let mu = params.signal_intensity;
    let two_eta_mu = 2.0 * eta * mu;
    let p_d = params.dark_count_rate;
    let p_click_matched = 1.0 - (1.0 - p_d) * (-two_eta_mu * (1.0 - params.misalignment)).exp();
    let p_click_other = 1.0 - (1.0 - p_d) * (-two_eta_mu * params.misalignment).exp();

    let alice_bit = rng.gen::<bool>();
    let bob_bit = rng.gen::<bool>();
    let matched_is_l = alice_bit == bob_bit;

    let click_matched = rng.gen::<f64>() < p_click_matched;
    let click_other = rng.gen::<f64>() < p_click_other;
    let (click_l, click_r) = if matched_is_l {
        (click_matched, click_other)
    } else {
        (click_other, click_matched)
    };

    let announcement = match (click_l, click_r) {
        (false, false) => Announcement::Fail,
        (true, false) => Announcement::L,
        (false, true) => Announcement::R,
        (true, true) => {
            if rng.gen::<bool>() {
                Announcement::L
            } else {
                Announcement::R
            }
        }
    };

    TrialOutcome {
        mode: TrialMode::Code,
        alice_bit,
        bob_bit,
        intensities: (mu, mu),
        announcement,
        double_click: click_l && click_r,
    }
}

/// Empirical code-mode gain and error rate over `trials` seeded trials.
pub fn simulate_code_mode(params: &ExperimentParams, trials: u64, seed: u64) -> SimulationSummary {
    let eta = effective_transmittance(params.fiber_loss_db, params.detector_efficiency);
    let tag = call_tag(
        CODE_TAG,
        &[
            eta,
            params.signal_intensity,
            params.dark_count_rate,
            params.misalignment,
        ],
    );
    let counts: Vec<(u64, u64, u64)> = shard_sizes(trials)
        .into_par_iter()
        .enumerate()
        .map(|(shard, n)| {
            let mut rng = shard_rng(seed, tag, shard as u64);
            let mut successes = 0u64;
            let mut errors = 0u64;
            let mut doubles = 0u64;
            for _ in 0..n {
                let outcome = run_code_trial(params, eta, &mut rng);
                match outcome.announcement {
                    Announcement::Fail => {}
                    ann => {
                        successes += 1;
                        let matched_is_l = outcome.alice_bit == outcome.bob_bit;
                        let announced_l = ann == Announcement::L;
                        if matched_is_l != announced_l {
                            errors += 1;
                        }
                    }
                }
                if outcome.double_click {
                    doubles += 1;
                }
            }
            (successes, errors, doubles)
        })
        .collect();

    let successes: u64 = counts.iter().map(|c| c.0).sum();
    let errors: u64 = counts.iter().map(|c| c.1).sum();
    let double_clicks: u64 = counts.iter().map(|c| c.2).sum();
    summary_from_counts(trials, successes, errors, double_clicks)
}

fn summary_from_counts(
    trials: u64,
    successes: u64,
    errors: u64,
    double_clicks: u64,
) -> SimulationSummary {
    let q = successes as f64 / trials.max(1) as f64;
    let q_std_err = (q * (1.0 - q) / trials.max(1) as f64).sqrt();
    let e = if successes > 0 {
        errors as f64 / successes as f64
    } else {
        0.0
    };
    let e_std_err = if successes > 0 {
        (e * (1.0 - e) / successes as f64).sqrt()
    } else {
        0.0
    };
    SimulationSummary {
        trials,
        empirical_q: q,
        q_std_err,
        empirical_e: e,
        e_std_err,
        successes,
        errors,
        double_clicks,
        decoy_gains: Vec::new(),
    }
}

/// Simulate one decoy-mode trial: Poisson photon numbers from each source,
/// each photon survives the channel with probability `eta` and lands on a
/// uniformly random detector (the pulses are phase-randomized, so there is
/// no interference preference), dark counts are independent per detector,
/// and double clicks announce L or R with a fair draw.
pub fn run_decoy_trial(
    nu_a: f64,
    nu_b: f64,
    eta: f64,
    dark_count_rate: f64,
    rng: &mut ChaCha12Rng,
) -> TrialOutcome {
    let photons = poisson_draw(nu_a, rng) + poisson_draw(nu_b, rng);
    let mut hit_l = false;
    let mut hit_r = false;
    for _ in 0..photons {
        if rng.gen::<f64>() < eta {
            if rng.gen::<bool>() {
                hit_l = true;
            } else {
                hit_r = true;
            }
        }
    }
    let click_l = hit_l || rng.gen::<f64>() < dark_count_rate;
    let click_r = hit_r || rng.gen::<f64>() < dark_count_rate;
    let announcement = match (click_l, click_r) {
        (false, false) => Announcement::Fail,
        (true, false) => Announcement::L,
        (false, true) => Announcement::R,
        (true, true) => {
            if rng.gen::<bool>() {
                Announcement::L
            } else {
                Announcement::R
            }
        }
    };
    TrialOutcome {
        mode: TrialMode::Decoy,
        alice_bit: false,
        bob_bit: false,
        intensities: (nu_a, nu_b),
        announcement,
        double_click: click_l && click_r,
    }
}

/// Empirical decoy-mode gain for one intensity pair: the fraction of trials
/// whose announcement is not `Fail`.
pub fn simulate_decoy_mode(
    nu_a: f64,
    nu_b: f64,
    eta: f64,
    dark_count_rate: f64,
    trials: u64,
    seed: u64,
) -> GainEstimate {
    let tag = call_tag(DECOY_TAG, &[nu_a, nu_b, eta, dark_count_rate]);
    let clicks: u64 = shard_sizes(trials)
        .into_par_iter()
        .enumerate()
        .map(|(shard, n)| {
            let mut rng = shard_rng(seed, tag, shard as u64);
            let mut clicks = 0u64;
            for _ in 0..n {
                let outcome = run_decoy_trial(nu_a, nu_b, eta, dark_count_rate, &mut rng);
                if outcome.announcement != Announcement::Fail {
                    clicks += 1;
                }
            }
            clicks
        })
        .sum();

    let gain = clicks as f64 / trials.max(1) as f64;
    GainEstimate {
        gain,
        std_err: (gain * (1.0 - gain) / trials.max(1) as f64).sqrt(),
        trials,
    }
}

/// Poisson sample by CDF inversion; exact for the small intensities used
/// here.
fn poisson_draw(nu: f64, rng: &mut ChaCha12Rng) -> u32 {
    if nu == 0.0 {
        return 0;
    }
    let u = rng.gen::<f64>();
    let mut k = 0u32;
    let mut p = (-nu).exp();
    let mut cdf = p;
    while u > cdf && k < 1000 {
        k += 1;
        p *= nu / f64::from(k);
        cdf += p;
    }
    k
}

/// Code-mode statistics plus all ten decoy gains of the four-intensity
/// protocol, each with `trials` seeded trials.
pub fn simulate_all_gains(
    params: &ExperimentParams,
    trials: u64,
    seed: u64,
) -> SimulationSummary {
    let eta = effective_transmittance(params.fiber_loss_db, params.detector_efficiency);
    let mut summary = simulate_code_mode(params, trials, seed);
    let mu = params.signal_intensity;
    let (nu1, nu2) = params.decoy_intensities;
    let pairs = [
        (0.0, 0.0),
        (mu, 0.0),
        (nu1, 0.0),
        (nu2, 0.0),
        (0.0, mu),
        (0.0, nu1),
        (0.0, nu2),
        (mu, mu),
        (nu1, nu1),
        (nu2, nu2),
    ];
    summary.decoy_gains = pairs
        .iter()
        .map(|&(a, b)| {
            (
                (a, b),
                simulate_decoy_mode(a, b, eta, params.dark_count_rate, trials, seed),
            )
        })
        .collect();
    summary
}
