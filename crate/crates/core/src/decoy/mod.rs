//! Yield estimation from decoy-mode statistics.
//!
//! Decoy trials send phase-randomized pulses, so the observable gain for
//! source intensities `(nu_a, nu_b)` is the Poisson mixture
//!
//! ```text
//! Q_d^{nu_a,nu_b} = sum_{n,m} P_n^{nu_a} P_m^{nu_b} Y_{n,m}.
//! ```
//!
//! With unlimited intensities these equations invert exactly, so the
//! infinite-decoy estimate carries zero-width intervals. With the four
//! intensities `{mu, nu1, nu2, 0}` the system is truncated at a photon-number
//! cutoff and each target yield is bracketed by a pair of linear programs;
//! variables above the cutoff are absorbed by granting the residual Poisson
//! mass the full yield range `[0, 1]`, which turns each gain equation into a
//! two-sided inequality.
//!
//! Index conventions: pulses with Bob sending vacuum (`Q_d^{nu,0}`) constrain
//! the row `Y_{n,0}`, pulses with Alice sending vacuum constrain `Y_{0,m}`,
//! and the equal-intensity diagonal gains constrain the full table. The
//! two-photon aggregate `Y_2` is bounded by a joint program over all ten
//! gains with the mu-weighted objective
//! `Y_2 = sum_i P_i P_{2-i} Y_{i,2-i} / sum_i P_i P_{2-i}`.

pub mod lp;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::photonics::{honest_decoy_gain, honest_yield, poisson_pmf_table};
use lp::{solve_bounded_lp, BoundedLp, Row, Sense};

/// Default photon-number truncation for the finite-decoy programs.
pub const DEFAULT_CUTOFF: u32 = 10;

/// The ten decoy-mode gains observable with intensities `{mu, nu1, nu2, 0}`.
///
/// Field names give Alice's intensity first: `mu_vac` is `Q_d^{mu,0}`,
/// `vac_nu1` is `Q_d^{0,nu1}`, `nu2_nu2` is `Q_d^{nu2,nu2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecoyGains {
    /// `Q_d^{0,0}`: both sides vacuum.
    pub vac_vac: f64,
    /// `Q_d^{mu,0}`.
    pub mu_vac: f64,
    /// `Q_d^{nu1,0}`.
    pub nu1_vac: f64,
    /// `Q_d^{nu2,0}`.
    pub nu2_vac: f64,
    /// `Q_d^{0,mu}`.
    pub vac_mu: f64,
    /// `Q_d^{0,nu1}`.
    pub vac_nu1: f64,
    /// `Q_d^{0,nu2}`.
    pub vac_nu2: f64,
    /// `Q_d^{mu,mu}`.
    pub mu_mu: f64,
    /// `Q_d^{nu1,nu1}`.
    pub nu1_nu1: f64,
    /// `Q_d^{nu2,nu2}`.
    pub nu2_nu2: f64,
}

impl DecoyGains {
    /// Gains predicted by the honest channel model.
    pub fn honest(mu: f64, nu1: f64, nu2: f64, eta: f64, dark_count_rate: f64) -> Self {
        let g = |a: f64, b: f64| honest_decoy_gain(a, b, eta, dark_count_rate);
        Self {
            vac_vac: g(0.0, 0.0),
            mu_vac: g(mu, 0.0),
            nu1_vac: g(nu1, 0.0),
            nu2_vac: g(nu2, 0.0),
            vac_mu: g(0.0, mu),
            vac_nu1: g(0.0, nu1),
            vac_nu2: g(0.0, nu2),
            mu_mu: g(mu, mu),
            nu1_nu1: g(nu1, nu1),
            nu2_nu2: g(nu2, nu2),
        }
    }

    fn all(&self) -> [f64; 10] {
        [
            self.vac_vac,
            self.mu_vac,
            self.nu1_vac,
            self.nu2_vac,
            self.vac_mu,
            self.vac_nu1,
            self.vac_nu2,
            self.mu_mu,
            self.nu1_nu1,
            self.nu2_nu2,
        ]
    }

    /// Basic sanity of the gain table: probabilities in `[0, 1]`.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.all().iter().enumerate() {
            if !g.is_finite() || !(0.0..=1.0).contains(g) {
                return Err(Error::Domain(format!(
                    "decoy gain #{i} out of [0, 1]: {g}"
                )));
            }
        }
        Ok(())
    }
}

/// Lower/upper bounds on the yields `Y(n,m)` for `n + m <= cutoff`, plus the
/// two-photon aggregate `Y_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct YieldEstimate {
    /// `(lower, upper)` per photon-number pair.
    pub bounds: BTreeMap<(u32, u32), (f64, f64)>,
    /// `(lower, upper)` on the mu-weighted two-photon aggregate.
    pub y2_bounds: (f64, f64),
    /// Truncation order of the underlying programs.
    pub cutoff: u32,
}

impl YieldEstimate {
    /// Lower bound on `Y(n,m)`, or an error naming the missing entry.
    pub fn lower(&self, n: u32, m: u32) -> Result<f64> {
        self.bounds
            .get(&(n, m))
            .map(|b| b.0)
            .ok_or(Error::MissingYield { n, m })
    }

    /// Upper bound on `Y(n,m)`, or an error naming the missing entry.
    pub fn upper(&self, n: u32, m: u32) -> Result<f64> {
        self.bounds
            .get(&(n, m))
            .map(|b| b.1)
            .ok_or(Error::MissingYield { n, m })
    }

    /// Insert or replace the interval for one pair.
    pub fn set_bounds(&mut self, n: u32, m: u32, lower: f64, upper: f64) {
        self.bounds.insert((n, m), (lower, upper));
    }

    /// True when every interval has zero width.
    pub fn is_exact(&self) -> bool {
        self.bounds.values().all(|(l, u)| l == u) && self.y2_bounds.0 == self.y2_bounds.1
    }
}

/// Exact yields under the infinite-decoy idealization: every interval
/// collapses to the honest closed form, and `Y_2` follows from the fact that
/// the honest yield depends on `n + m` only.
pub fn infinite_decoy_yields(eta: f64, dark_count_rate: f64, cutoff: u32) -> YieldEstimate {
    let mut bounds = BTreeMap::new();
    for n in 0..=cutoff {
        for m in 0..=(cutoff - n) {
            let y = honest_yield(n, m, eta, dark_count_rate);
            bounds.insert((n, m), (y, y));
        }
    }
    let y2 = honest_yield(1, 1, eta, dark_count_rate);
    YieldEstimate {
        bounds,
        y2_bounds: (y2, y2),
        cutoff,
    }
}

/// One-sided gain rows (one party at vacuum) for the family `Y(n,0)` or
/// `Y(0,m)`: variables are the family yields up to `cutoff`, each gain
/// equation becomes `gain - tail <= sum P_n Y <= gain`.
fn family_rows(
    gains: &[(String, f64, f64)], // (name, intensity, observed gain)
    cutoff: u32,
) -> Result<Vec<Row>> {
    let mut rows = Vec::with_capacity(gains.len());
    for (name, nu, gain) in gains {
        let table = poisson_pmf_table(*nu, cutoff)?;
        let tail = (1.0 - table.iter().sum::<f64>()).max(0.0);
        rows.push(Row {
            name: name.clone(),
            coeffs: table,
            lo: gain - tail,
            hi: *gain,
        });
    }
    Ok(rows)
}

fn family_bounds(
    gains: &[(String, f64, f64)],
    cutoff: u32,
    targets: &[u32],
) -> Result<Vec<(f64, f64)>> {
    let rows = family_rows(gains, cutoff)?;
    let n_vars = cutoff as usize + 1;
    let mut out = Vec::with_capacity(targets.len());
    for &t in targets {
        let mut objective = vec![0.0; n_vars];
        objective[t as usize] = 1.0;
        let lo = solve_bounded_lp(&BoundedLp {
            sense: Sense::Minimize,
            objective: objective.clone(),
            var_bounds: vec![(0.0, 1.0); n_vars],
            rows: rows.clone(),
        })?;
        let hi = solve_bounded_lp(&BoundedLp {
            sense: Sense::Maximize,
            objective,
            var_bounds: vec![(0.0, 1.0); n_vars],
            rows: rows.clone(),
        })?;
        out.push((lo.value.clamp(0.0, 1.0), hi.value.clamp(0.0, 1.0)));
    }
    Ok(out)
}

/// Variable layout and constraint rows of the joint program over the full
/// truncated table `Y(n,m)`, `n + m <= cutoff`.
struct JointProgram {
    index: BTreeMap<(u32, u32), usize>,
    rows: Vec<Row>,
    n_vars: usize,
}

fn joint_program(
    gains: &DecoyGains,
    intensities: (f64, f64, f64),
    cutoff: u32,
) -> Result<JointProgram> {
    let (mu, nu1, nu2) = intensities;
    let mut index = BTreeMap::new();
    let mut pairs = Vec::new();
    for n in 0..=cutoff {
        for m in 0..=(cutoff - n) {
            index.insert((n, m), pairs.len());
            pairs.push((n, m));
        }
    }
    let n_vars = pairs.len();

    let mut rows = Vec::new();
    // Vacuum-vacuum pins Y(0,0) exactly.
    let mut vac = vec![0.0; n_vars];
    vac[index[&(0, 0)]] = 1.0;
    rows.push(Row {
        name: "gain[0,0]".to_string(),
        coeffs: vac,
        lo: gains.vac_vac,
        hi: gains.vac_vac,
    });

    // Equal-intensity diagonal gains touch the whole table.
    for (label, nu, gain) in [
        ("mu", mu, gains.mu_mu),
        ("nu1", nu1, gains.nu1_nu1),
        ("nu2", nu2, gains.nu2_nu2),
    ] {
        let table = poisson_pmf_table(nu, cutoff)?;
        let mut coeffs = vec![0.0; n_vars];
        let mut covered = 0.0;
        for (&(n, m), &i) in &index {
            let w = table[n as usize] * table[m as usize];
            coeffs[i] = w;
            covered += w;
        }
        let tail = (1.0 - covered).max(0.0);
        rows.push(Row {
            name: format!("gain[{label},{label}]"),
            coeffs,
            lo: gain - tail,
            hi: gain,
        });
    }

    // One-sided gains pin down the first row and column of the table.
    for (label, nu, gain, alice_varied) in [
        ("mu,0", mu, gains.mu_vac, true),
        ("nu1,0", nu1, gains.nu1_vac, true),
        ("nu2,0", nu2, gains.nu2_vac, true),
        ("0,mu", mu, gains.vac_mu, false),
        ("0,nu1", nu1, gains.vac_nu1, false),
        ("0,nu2", nu2, gains.vac_nu2, false),
    ] {
        let table = poisson_pmf_table(nu, cutoff)?;
        let mut coeffs = vec![0.0; n_vars];
        for k in 0..=cutoff {
            let pair = if alice_varied { (k, 0) } else { (0, k) };
            coeffs[index[&pair]] = table[k as usize];
        }
        let tail = (1.0 - table.iter().sum::<f64>()).max(0.0);
        rows.push(Row {
            name: format!("gain[{label}]"),
            coeffs,
            lo: gain - tail,
            hi: gain,
        });
    }

    Ok(JointProgram {
        index,
        rows,
        n_vars,
    })
}

fn joint_objective_bounds(program: &JointProgram, objective: Vec<f64>) -> Result<(f64, f64)> {
    let lo = solve_bounded_lp(&BoundedLp {
        sense: Sense::Minimize,
        objective: objective.clone(),
        var_bounds: vec![(0.0, 1.0); program.n_vars],
        rows: program.rows.clone(),
    })?;
    let hi = solve_bounded_lp(&BoundedLp {
        sense: Sense::Maximize,
        objective,
        var_bounds: vec![(0.0, 1.0); program.n_vars],
        rows: program.rows.clone(),
    })?;
    Ok((lo.value.clamp(0.0, 1.0), hi.value.clamp(0.0, 1.0)))
}

/// Bracket the target yields `Y(0,0)`, `Y(0,1)`, `Y(0,2)`, `Y(1,0)`,
/// `Y(2,0)` and the aggregate `Y_2` from the observed gains.
///
/// The five single yields use the one-sided gain rows of their family; `Y_2`
/// comes from the joint program over all ten gains, which subsumes the
/// four-equation diagonal system. Infeasible gain tables produce an error
/// listing the clashing constraints.
pub fn finite_decoy_yield_bounds(
    gains: &DecoyGains,
    intensities: (f64, f64, f64),
    cutoff: u32,
) -> Result<YieldEstimate> {
    gains.validate()?;
    let (mu, nu1, nu2) = intensities;
    if !(mu > 0.0 && nu1 > 0.0 && nu2 > 0.0) {
        return Err(Error::Domain(format!(
            "decoy intensities must be positive, got ({mu}, {nu1}, {nu2})"
        )));
    }
    if cutoff < 2 {
        return Err(Error::Domain(format!(
            "cutoff must be at least 2, got {cutoff}"
        )));
    }

    let alice_gains = vec![
        ("gain[0,0]".to_string(), 0.0, gains.vac_vac),
        ("gain[mu,0]".to_string(), mu, gains.mu_vac),
        ("gain[nu1,0]".to_string(), nu1, gains.nu1_vac),
        ("gain[nu2,0]".to_string(), nu2, gains.nu2_vac),
    ];
    let bob_gains = vec![
        ("gain[0,0]".to_string(), 0.0, gains.vac_vac),
        ("gain[0,mu]".to_string(), mu, gains.vac_mu),
        ("gain[0,nu1]".to_string(), nu1, gains.vac_nu1),
        ("gain[0,nu2]".to_string(), nu2, gains.vac_nu2),
    ];

    let alice = family_bounds(&alice_gains, cutoff, &[0, 1, 2])?;
    let bob = family_bounds(&bob_gains, cutoff, &[1, 2])?;

    let mut bounds = BTreeMap::new();
    bounds.insert((0, 0), alice[0]);
    bounds.insert((1, 0), alice[1]);
    bounds.insert((2, 0), alice[2]);
    bounds.insert((0, 1), bob[0]);
    bounds.insert((0, 2), bob[1]);

    // Joint program for Y_2 with the mu-weighted two-photon objective.
    let program = joint_program(gains, intensities, cutoff)?;
    let p_mu = poisson_pmf_table(mu, 2)?;
    let weight_sum = 2.0 * p_mu[0] * p_mu[2] + p_mu[1] * p_mu[1];
    let mut objective = vec![0.0; program.n_vars];
    objective[program.index[&(0, 2)]] = p_mu[0] * p_mu[2] / weight_sum;
    objective[program.index[&(1, 1)]] = p_mu[1] * p_mu[1] / weight_sum;
    objective[program.index[&(2, 0)]] = p_mu[2] * p_mu[0] / weight_sum;
    let y2_bounds = joint_objective_bounds(&program, objective)?;

    Ok(YieldEstimate {
        bounds,
        y2_bounds,
        cutoff,
    })
}

/// Direct LP bracket on `Y(1,1)` over the same joint program used for `Y_2`.
/// Strictly at least as tight as the [`y11_bounds`] reconstruction; exposed
/// mainly as a cross-check.
pub fn finite_y11_direct(
    gains: &DecoyGains,
    intensities: (f64, f64, f64),
    cutoff: u32,
) -> Result<(f64, f64)> {
    let program = joint_program(gains, intensities, cutoff)?;
    let mut objective = vec![0.0; program.n_vars];
    objective[program.index[&(1, 1)]] = 1.0;
    joint_objective_bounds(&program, objective)
}

/// Reconstruct bounds on `Y(1,1)` from the `Y_2` interval:
///
/// ```text
/// Y_11 >= [(2 P0 P2 + P1^2) Y2^l - P0 P2 (Y^u_02 + Y^u_20)] / P1^2
/// Y_11 <= [(2 P0 P2 + P1^2) Y2^u - P0 P2 (Y^l_02 + Y^l_20)] / P1^2
/// ```
///
/// both clamped into `[0, 1]` (a vacuous bound clamps rather than erroring).
pub fn y11_bounds(estimate: &YieldEstimate, mu: f64) -> Result<(f64, f64)> {
    let p = poisson_pmf_table(mu, 2)?;
    let p0p2 = p[0] * p[2];
    let p1p1 = p[1] * p[1];
    let total = 2.0 * p0p2 + p1p1;
    let (y2_lo, y2_hi) = estimate.y2_bounds;
    let lower = (total * y2_lo - p0p2 * (estimate.upper(0, 2)? + estimate.upper(2, 0)?)) / p1p1;
    let upper = (total * y2_hi - p0p2 * (estimate.lower(0, 2)? + estimate.lower(2, 0)?)) / p1p1;
    Ok((lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0)))
}
