//! Parity-amplitude caps and the information-leakage bound.
//!
//! Code-mode pulses superpose even and odd photon numbers; conditioned on a
//! success announcement, the eavesdropper's state splits into four components
//! indexed by the (Alice, Bob) photon-number parities. Writing `x_pq` for the
//! squared norm of each component and `Q_mu` for the code-mode gain, the
//! leaked information about Alice's bit is capped by
//!
//! ```text
//! I_AE <= max  h(x00/Q, x10/Q) + h(x11/Q, x01/Q)
//!         s.t. 0 <= x_pq <= B_pq,  x00 + x10 + x11 + x01 = Q,
//! ```
//!
//! with `h(x,y) = -x log2 x - y log2 y + (x+y) log2(x+y)`. Each cap `B_pq`
//! is the squared sum of `sqrt(P_a P_b Y_ab)` over the matching parity class:
//! evaluated term by term when the yields are known exactly (infinite decoy),
//! or through a family of k-indexed closed forms combining the
//! arithmetic-quadratic-mean and Cauchy-Schwarz inequalities when only
//! finite-decoy bounds exist.
//!
//! The maximization itself is solved by normalizing out `Q_mu`, splitting
//! each `h` pair as evenly as its caps allow, and running a golden-section
//! search over the pair-sum split; the resulting one-dimensional profile is
//! concave.

use crate::decoy::YieldEstimate;
use crate::error::{Error, Result};
use crate::photonics::poisson_pmf_table;
use crate::search::golden_max;

/// Default upper end of the k-scan in [`finite_parity_bound`].
pub const DEFAULT_K_MAX: u32 = 40;

/// Relative tolerance for the infinite photon-number tail series.
const SERIES_REL_TOL: f64 = 1e-12;

/// Upper bounds on the four parity-component norms, with the code-mode gain
/// they must jointly account for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityBounds {
    /// Cap on `x00` (even, even).
    pub b00: f64,
    /// Cap on `x10` (odd, even).
    pub b10: f64,
    /// Cap on `x11` (odd, odd).
    pub b11: f64,
    /// Cap on `x01` (even, odd).
    pub b01: f64,
    /// Code-mode gain `Q_mu`.
    pub q_mu: f64,
}

/// Photon-number parity class of one eavesdropper component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityClass {
    /// Alice even, Bob even (`x00`).
    EvenEven,
    /// Alice odd, Bob even (`x10`).
    OddEven,
    /// Alice odd, Bob odd (`x11`).
    OddOdd,
    /// Alice even, Bob odd (`x01`).
    EvenOdd,
}

impl ParityClass {
    /// Photon numbers of term `i` at class level `n`.
    ///
    /// Level `n` collects the pairs reachable from total photon number
    /// `2n`, `2n + 1`, or `2n + 2` depending on the class parities.
    fn pair(self, n: u32, i: u32) -> (u32, u32) {
        match self {
            ParityClass::EvenEven => (2 * i, 2 * (n - i)),
            ParityClass::OddEven => (2 * i + 1, 2 * (n - i)),
            ParityClass::OddOdd => (2 * i + 1, 2 * (n - i) + 1),
            ParityClass::EvenOdd => (2 * i, 2 * (n - i) + 1),
        }
    }

    /// Smallest admissible scan index.
    fn k_min(self) -> u32 {
        match self {
            ParityClass::EvenEven => 2,
            _ => 1,
        }
    }

    /// Combinatorial prefactor of the Cauchy-Schwarz step: the number of
    /// series terms absorbed up to level k, `sum_{n=k_min}^{k} (n + 1)`.
    fn prefactor(self, k: u32) -> f64 {
        let k = f64::from(k);
        match self {
            ParityClass::EvenEven => (k + 4.0) * (k - 1.0) / 2.0,
            _ => (k + 3.0) * k / 2.0,
        }
    }

    /// Explicitly counted prefactor, used to cross-check the closed forms.
    #[cfg(test)]
    fn prefactor_counted(self, k: u32) -> f64 {
        (self.k_min()..=k).map(|n| f64::from(n) + 1.0).sum()
    }

    /// Known low-order entries whose upper bounds enter the cap directly.
    fn low_terms(self) -> &'static [(u32, u32)] {
        match self {
            ParityClass::EvenEven => &[(0, 0), (0, 2), (2, 0)],
            ParityClass::OddEven => &[(1, 0)],
            ParityClass::OddOdd => &[(1, 1)],
            ParityClass::EvenOdd => &[(0, 1)],
        }
    }
}

/// The entropy-like pair function `h(x,y) = -x log2 x - y log2 y
/// + (x+y) log2 (x+y)`, with `0 log 0 = 0`. Not the binary entropy unless
/// `x + y = 1`.
///
/// # Example
///
/// ```
/// use tfqkd_core::leakage::h;
///
/// assert_eq!(h(0.4, 0.0).unwrap(), 0.0);          // terms cancel
/// assert!((h(0.3, 0.3).unwrap() - 0.6).abs() < 1e-12); // h(x, x) = 2x
/// ```
pub fn h(x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0) || !(y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!("h needs x, y >= 0, got ({x}, {y})")));
    }
    Ok(h_unchecked(x, y))
}

#[inline]
fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

#[inline]
fn h_unchecked(x: f64, y: f64) -> f64 {
    xlog2x(x + y) - xlog2x(x) - xlog2x(y)
}

/// Parity caps from exact yields (infinite decoy): each cap is the squared
/// sum of `sqrt(P_a P_b Y_ab)` over its class, truncated at the estimate's
/// cutoff. `q_mu` is the observed code-mode gain.
pub fn infinite_parity_bounds(
    mu: f64,
    yields: &YieldEstimate,
    q_mu: f64,
) -> Result<ParityBounds> {
    if !yields.is_exact() {
        return Err(Error::Domain(
            "infinite parity bounds need exact yields (lower == upper)".to_string(),
        ));
    }
    let p = poisson_pmf_table(mu, yields.cutoff)?;
    // Class sums ordered as [ee, oe, oo, eo].
    let mut sums = [0.0f64; 4];
    for (&(n, m), &(y, _)) in &yields.bounds {
        let idx = match (n % 2, m % 2) {
            (0, 0) => 0,
            (1, 0) => 1,
            (1, 1) => 2,
            (0, 1) => 3,
            _ => unreachable!(),
        };
        sums[idx] += (p[n as usize] * p[m as usize] * y).sqrt();
    }
    Ok(ParityBounds {
        b00: sums[0] * sums[0],
        b10: sums[1] * sums[1],
        b11: sums[2] * sums[2],
        b01: sums[3] * sums[3],
        q_mu,
    })
}

/// Per-level sums of the class series: `mass[n] = sum_i P_a P_b` and
/// `root[n] = sum_i sqrt(P_a P_b)`, extended until both tails are below
/// [`SERIES_REL_TOL`] relative to their running totals.
struct ClassSeries {
    mass: Vec<f64>,
    root: Vec<f64>,
}

fn class_series(class: ParityClass, mu: f64, min_levels: u32) -> Result<ClassSeries> {
    // Photon numbers grow as ~2n + 2; keep a generous margin past the
    // requested levels and stop once contributions vanish.
    let max_levels = min_levels + 260;
    let p = poisson_pmf_table(mu, 2 * max_levels + 2)?;
    let mut mass = Vec::with_capacity(max_levels as usize + 1);
    let mut root = Vec::with_capacity(max_levels as usize + 1);
    let mut mass_total = 0.0;
    let mut root_total = 0.0;
    for n in 0..=max_levels {
        let mut level_mass = 0.0;
        let mut level_root = 0.0;
        for i in 0..=n {
            let (a, b) = class.pair(n, i);
            let w = p[a as usize] * p[b as usize];
            level_mass += w;
            level_root += w.sqrt();
        }
        mass_total += level_mass;
        root_total += level_root;
        mass.push(level_mass);
        root.push(level_root);
        if n > min_levels
            && level_root <= SERIES_REL_TOL * root_total
            && level_mass <= SERIES_REL_TOL * mass_total
        {
            break;
        }
    }
    Ok(ClassSeries { mass, root })
}

/// Finite-decoy upper bound on one parity-component norm.
///
/// For each admissible truncation index k the bound packages the known
/// low-order terms, a Cauchy-Schwarz lump over levels up to k whose gain
/// budget is `Q_d^{mu,mu}` minus the saturated tail mass minus the
/// lower-bounded low-photon mass, and the exact series tail above k:
///
/// ```text
/// ( lowterms + sqrt(prefac(k) * budget(k)) + tail(k) )^2 .
/// ```
///
/// Every k yields a valid cap, so the scan keeps the tightest one; the
/// square-root argument clamps at zero when the residual budget is
/// exhausted. An error is returned if the scan is still improving at
/// `k_max` (the range was too small) or if a required yield entry is
/// missing.
pub fn finite_parity_bound(
    class: ParityClass,
    mu: f64,
    yields: &YieldEstimate,
    diag_gain: f64,
    k_max: u32,
) -> Result<f64> {
    let k_min = class.k_min();
    if k_max <= k_min {
        return Err(Error::Domain(format!(
            "k_max = {k_max} leaves no admissible scan range (k_min = {k_min})"
        )));
    }
    let p = poisson_pmf_table(mu, 4)?;

    // Known upper-bound terms outside the optimization.
    let mut low = 0.0;
    for &(n, m) in class.low_terms() {
        low += (p[n as usize] * p[m as usize] * yields.upper(n, m)?).sqrt();
    }

    // Lower-bounded mass of all pairs with total photon number <= 2.
    let mut known = 0.0;
    for total in 0..=2u32 {
        for i in 0..=total {
            known += p[i as usize] * p[(total - i) as usize] * yields.lower(i, total - i)?;
        }
    }

    let series = class_series(class, mu, k_max + 2)?;
    let levels = series.mass.len();
    // Suffix sums from level k+1 onward.
    let mut mass_suffix = vec![0.0; levels + 1];
    let mut root_suffix = vec![0.0; levels + 1];
    for n in (0..levels).rev() {
        mass_suffix[n] = mass_suffix[n + 1] + series.mass[n];
        root_suffix[n] = root_suffix[n + 1] + series.root[n];
    }

    let mut best = f64::INFINITY;
    let mut best_k = k_min;
    let mut prev = f64::INFINITY;
    let mut improving_at_edge = false;
    for k in k_min..=k_max {
        let suffix_start = (k + 1).min(levels as u32) as usize;
        let budget = diag_gain - mass_suffix[suffix_start] - known;
        let lump = (class.prefactor(k) * budget.max(0.0)).sqrt();
        let val = {
            let s = low + lump + root_suffix[suffix_start];
            s * s
        };
        if val < best {
            best = val;
            best_k = k;
        }
        if k == k_max {
            improving_at_edge = prev - val > 1e-12 * val.max(1e-300);
        }
        prev = val;
    }
    if best_k == k_max && improving_at_edge {
        return Err(Error::KScanSaturated { k_max });
    }
    Ok(best)
}

/// Upper bound on the leaked information, in bits.
///
/// Normalizes the caps by `Q_mu`, reduces the four-variable problem to the
/// pair-sum split `s = z00 + z10`, and maximizes the concave profile by
/// golden-section search. Accurate to about 1e-6 absolute; the result is
/// always in `[0, 1]`.
pub fn optimize_leakage(bounds: &ParityBounds) -> Result<f64> {
    if !(bounds.q_mu > 0.0) || !bounds.q_mu.is_finite() {
        return Err(Error::Domain(format!(
            "leakage bound needs q_mu > 0, got {}",
            bounds.q_mu
        )));
    }
    for (name, b) in [
        ("b00", bounds.b00),
        ("b10", bounds.b10),
        ("b11", bounds.b11),
        ("b01", bounds.b01),
    ] {
        if !(b >= 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!("parity cap {name} must be >= 0, got {b}")));
        }
    }
    let cap_sum = bounds.b00 + bounds.b10 + bounds.b11 + bounds.b01;
    if cap_sum < bounds.q_mu * (1.0 - 1e-12) {
        return Err(Error::InfeasibleBounds {
            cap_sum,
            q_mu: bounds.q_mu,
        });
    }

    // Normalized caps; no component can exceed the full gain.
    let c00 = (bounds.b00 / bounds.q_mu).min(1.0);
    let c10 = (bounds.b10 / bounds.q_mu).min(1.0);
    let c11 = (bounds.b11 / bounds.q_mu).min(1.0);
    let c01 = (bounds.b01 / bounds.q_mu).min(1.0);

    let s_lo = (1.0 - (c11 + c01)).max(0.0);
    let s_hi = (c00 + c10).min(1.0);
    if s_lo > s_hi {
        return Err(Error::InfeasibleBounds {
            cap_sum,
            q_mu: bounds.q_mu,
        });
    }

    let profile = |s: f64| pair_best(s, c00, c10) + pair_best(1.0 - s, c11, c01);
    let (_, value) = golden_max(profile, s_lo, s_hi, 1e-10);
    Ok(value.clamp(0.0, 1.0))
}

/// Best value of one `h` pair at fixed pair sum `s`: split as evenly as the
/// caps `(ca, cb)` allow.
fn pair_best(s: f64, ca: f64, cb: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    // Rounding can push lo a few ulps past hi when s sits exactly on the
    // cap sum; the ordered max/min resolves that to the boundary.
    let lo = (s - cb).max(0.0);
    let hi = ca.min(s);
    let x = (0.5 * s).max(lo).min(hi);
    h_unchecked(x, (s - x).max(0.0))
}
