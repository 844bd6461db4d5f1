//! CSV serialization of sweep results and plot-ready reshaping.
//!
//! The CSV layout is fixed:
//!
//! ```text
//! loss_db,mode,mu_opt,q_mu,e_mu,i_ae,rate,plob,single_repeater
//! ```
//!
//! with every floating value printed to 12 significant digits. `plot-data`
//! regroups the rows into per-mode column blocks with `log10(rate)`
//! precomputed, separated by blank lines, for direct consumption by generic
//! plotting tools.

use std::fmt::Write as _;

use tfqkd_core::rates::{fiber_transmittance, plob_bound, single_repeater_bound, RatePoint};

/// Column header of the sweep CSV.
pub const CSV_HEADER: &str = "loss_db,mode,mu_opt,q_mu,e_mu,i_ae,rate,plob,single_repeater";

/// Twelve significant digits.
fn fmt(v: f64) -> String {
    format!("{v:.11e}")
}

/// Render sweep results as CSV text.
pub fn to_csv(points: &[RatePoint]) -> String {
    let mut out = String::with_capacity(64 * (points.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in points {
        let eta_fiber = fiber_transmittance(p.fiber_loss_db);
        // Bounds are channel capacities: fiber-only transmittance, eta_d = 1.
        let plob = plob_bound(eta_fiber).unwrap_or(f64::NAN);
        let repeater = single_repeater_bound(eta_fiber).unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            fmt(p.fiber_loss_db),
            p.mode.label(),
            fmt(p.optimal_mu),
            fmt(p.q_mu),
            fmt(p.e_mu),
            fmt(p.i_ae_upper),
            fmt(p.key_rate),
            fmt(plob),
            fmt(repeater),
        );
    }
    out
}

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    /// Loss in dB.
    pub loss_db: f64,
    /// Mode label (`infinite` or `finite`).
    pub mode: String,
    /// Optimized intensity.
    pub mu_opt: f64,
    /// Code-mode gain.
    pub q_mu: f64,
    /// Code-mode error rate.
    pub e_mu: f64,
    /// Leakage bound.
    pub i_ae: f64,
    /// Key rate.
    pub rate: f64,
    /// Repeaterless bound.
    pub plob: f64,
    /// Single-repeater bound.
    pub single_repeater: f64,
}

/// Parse sweep CSV text, checking the header names.
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty input: missing CSV header")?;
    let names: Vec<&str> = header.trim().split(',').collect();
    let expected: Vec<&str> = CSV_HEADER.split(',').collect();
    let missing: Vec<&str> = expected
        .iter()
        .filter(|e| !names.contains(e))
        .copied()
        .collect();
    if !missing.is_empty() {
        return Err(format!("missing CSV columns: {}", missing.join(", ")));
    }
    let col = |name: &str| names.iter().position(|n| *n == name).unwrap();
    let idx = [
        col("loss_db"),
        col("mu_opt"),
        col("q_mu"),
        col("e_mu"),
        col("i_ae"),
        col("rate"),
        col("plob"),
        col("single_repeater"),
    ];
    let mode_idx = col("mode");

    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != names.len() {
            return Err(format!(
                "line {}: expected {} fields, found {}",
                lineno + 2,
                names.len(),
                fields.len()
            ));
        }
        let num = |i: usize| -> Result<f64, String> {
            fields[i]
                .parse::<f64>()
                .map_err(|e| format!("line {}: bad number {:?}: {e}", lineno + 2, fields[i]))
        };
        rows.push(CsvRow {
            loss_db: num(idx[0])?,
            mode: fields[mode_idx].to_string(),
            mu_opt: num(idx[1])?,
            q_mu: num(idx[2])?,
            e_mu: num(idx[3])?,
            i_ae: num(idx[4])?,
            rate: num(idx[5])?,
            plob: num(idx[6])?,
            single_repeater: num(idx[7])?,
        });
    }
    Ok(rows)
}

/// Reshape parsed rows into blank-line-separated per-mode blocks with
/// log10 columns precomputed. Zero rates print as `-inf` in the log column
/// so row counts always match the input.
pub fn to_plot_data(rows: &[CsvRow]) -> String {
    let mut out = String::new();
    out.push_str(
        "# columns: loss_db rate log10_rate plob log10_plob single_repeater log10_single_repeater\n",
    );
    let mut modes: Vec<&str> = Vec::new();
    for r in rows {
        if !modes.contains(&r.mode.as_str()) {
            modes.push(&r.mode);
        }
    }
    for mode in modes {
        out.push('\n');
        let _ = writeln!(out, "# series mode={mode}");
        for r in rows.iter().filter(|r| r.mode == mode) {
            let _ = writeln!(
                out,
                "{} {} {} {} {} {} {}",
                fmt(r.loss_db),
                fmt(r.rate),
                r.rate.log10(),
                fmt(r.plob),
                r.plob.log10(),
                fmt(r.single_repeater),
                r.single_repeater.log10(),
            );
        }
    }
    out
}
