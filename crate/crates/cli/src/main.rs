//! Command-line front end: configuration ingestion, sweep orchestration, and
//! serialization of results.
//!
//! Exit codes: 0 on success, 2 for a malformed configuration (the offending
//! key is named), 3 when a linear program inside the sweep is infeasible
//! (the loss point is named). Set `TFQKD_LOG=info` (or `debug`) for
//! diagnostics.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::{info, warn};

use config::{ModeChoice, RunConfig};
use tfqkd_core::rates::{self, DecoyMode, RatePoint};
use tfqkd_core::{mc, ExperimentParams};

#[derive(Parser)]
#[command(name = "tfqkd", version, about = "Twin-field QKD key-rate engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured loss sweep(s) and write a CSV of rate points.
    Run {
        /// Path to the JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Override the sweep start (dB).
        #[arg(long)]
        loss_start: Option<f64>,
        /// Override the sweep end (dB).
        #[arg(long)]
        loss_end: Option<f64>,
        /// Override the sweep step (dB).
        #[arg(long)]
        step: Option<f64>,
        /// Override the pipeline selection.
        #[arg(long, value_enum)]
        mode: Option<ModeChoice>,
        /// Override the output CSV path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enable Monte-Carlo validation with this many trials per estimate.
        #[arg(long)]
        mc_trials: Option<u64>,
        /// Seed for the Monte-Carlo validation streams.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reshape a sweep CSV into plot-ready column blocks.
    PlotData {
        /// Input CSV produced by `run`.
        #[arg(long = "in")]
        input: PathBuf,
        /// Output path for the columnar text.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TFQKD_LOG")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            loss_start,
            loss_end,
            step,
            mode,
            out,
            mc_trials,
            seed,
        } => run(
            &config, loss_start, loss_end, step, mode, out, mc_trials, seed,
        ),
        Command::PlotData { input, out } => plot_data(&input, &out),
    }
}

#[allow(clippy::too_many_arguments)]
fn run(
    config_path: &PathBuf,
    loss_start: Option<f64>,
    loss_end: Option<f64>,
    step: Option<f64>,
    mode: Option<ModeChoice>,
    out: Option<PathBuf>,
    mc_trials: Option<u64>,
    seed: Option<u64>,
) -> ExitCode {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read config {}: {e}", config_path.display());
            return ExitCode::from(2);
        }
    };
    let mut cfg: RunConfig = match serde_json::from_str(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: malformed config: {e}");
            return ExitCode::from(2);
        }
    };

    // Flags take precedence over file values.
    if let Some(v) = loss_start {
        cfg.loss_start_db = v;
    }
    if let Some(v) = loss_end {
        cfg.loss_end_db = v;
    }
    if let Some(v) = step {
        cfg.loss_step_db = v;
    }
    if let Some(v) = mode {
        cfg.mode = v;
    }
    if let Some(v) = out {
        cfg.output = v;
    }
    if let Some(v) = mc_trials {
        cfg.mc_trials = Some(v);
    }
    if let Some(v) = seed {
        cfg.mc_seed = Some(v);
    }

    if let Err(msg) = cfg.validate_run() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let params = match cfg.to_params() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let modes: &[DecoyMode] = match cfg.mode {
        ModeChoice::Infinite => &[DecoyMode::Infinite],
        ModeChoice::Finite => &[DecoyMode::Finite],
        ModeChoice::Both => &[DecoyMode::Infinite, DecoyMode::Finite],
    };

    let mut points: Vec<RatePoint> = Vec::new();
    for &m in modes {
        info!(
            "sweeping {} to {} dB (step {}) in {} mode",
            cfg.loss_start_db,
            cfg.loss_end_db,
            cfg.loss_step_db,
            m.label()
        );
        match rates::sweep(cfg.loss_start_db, cfg.loss_end_db, cfg.loss_step_db, &params, m) {
            Ok(mut pts) => points.append(&mut pts),
            Err(e) if e.is_infeasible() => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    }

    if cfg.bounds_curves {
        log_crossings(&points);
    }

    let csv = output::to_csv(&points);
    if let Err(e) = std::fs::write(&cfg.output, csv) {
        eprintln!("error: cannot write {}: {e}", cfg.output.display());
        return ExitCode::FAILURE;
    }
    info!("wrote {} rate points to {}", points.len(), cfg.output.display());

    if let Some(trials) = cfg.mc_trials {
        let seed = cfg.mc_seed.unwrap_or(1);
        mc_validation(&params, cfg.loss_start_db, cfg.loss_end_db, trials, seed);
    }
    ExitCode::SUCCESS
}

fn plot_data(input: &PathBuf, out: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return ExitCode::from(2);
        }
    };
    let rows = match output::parse_csv(&text) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let plot = output::to_plot_data(&rows);
    if let Err(e) = std::fs::write(out, plot) {
        eprintln!("error: cannot write {}: {e}", out.display());
        return ExitCode::FAILURE;
    }
    info!("wrote plot data for {} rows to {}", rows.len(), out.display());
    ExitCode::SUCCESS
}

/// Log where each mode's rate curve first exceeds the repeaterless bound.
fn log_crossings(points: &[RatePoint]) {
    for mode in [DecoyMode::Infinite, DecoyMode::Finite] {
        let crossing = points
            .iter()
            .filter(|p| p.mode == mode)
            .find(|p| {
                let plob = rates::plob_bound(rates::fiber_transmittance(p.fiber_loss_db))
                    .unwrap_or(f64::INFINITY);
                p.key_rate > plob
            })
            .map(|p| p.fiber_loss_db);
        if points.iter().any(|p| p.mode == mode) {
            match crossing {
                Some(db) => info!(
                    "{} mode first exceeds the repeaterless bound at {db} dB",
                    mode.label()
                ),
                None => info!(
                    "{} mode stays below the repeaterless bound on this grid",
                    mode.label()
                ),
            }
        }
    }
}

/// Monte-Carlo cross-check of the analytic observables at the sweep's edge
/// losses, reported through the logger; a |z| > 3 discrepancy is warned.
fn mc_validation(params: &ExperimentParams, start_db: f64, end_db: f64, trials: u64, seed: u64) {
    let mut losses = vec![start_db];
    if end_db > start_db {
        losses.push(end_db);
    }
    for loss in losses {
        let p = params.with_fiber_loss(loss);
        let eta = p.transmittance();
        let summary = mc::simulate_all_gains(&p, trials, seed);
        let stats = tfqkd_core::photonics::code_mode_stats(
            eta,
            p.signal_intensity,
            p.dark_count_rate,
            p.misalignment,
        );
        report_z("Q_mu", loss, summary.empirical_q, stats.gain, summary.q_std_err);
        report_z("e_mu", loss, summary.empirical_e, stats.error_rate, summary.e_std_err);
        for ((nu_a, nu_b), est) in &summary.decoy_gains {
            let analytic =
                tfqkd_core::photonics::honest_decoy_gain(*nu_a, *nu_b, eta, p.dark_count_rate);
            report_z(
                &format!("Q_d[{nu_a},{nu_b}]"),
                loss,
                est.gain,
                analytic,
                est.std_err,
            );
        }
    }
}

fn report_z(label: &str, loss: f64, empirical: f64, analytic: f64, std_err: f64) {
    let z = if std_err > 0.0 {
        (empirical - analytic) / std_err
    } else if empirical == analytic {
        0.0
    } else {
        f64::INFINITY
    };
    if z.abs() > 3.0 {
        warn!("{loss} dB {label}: empirical {empirical:e} vs analytic {analytic:e} (z = {z:.2})");
    } else {
        info!("{loss} dB {label}: empirical {empirical:e} vs analytic {analytic:e} (z = {z:.2})");
    }
}
