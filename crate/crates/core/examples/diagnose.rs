//! Prints the rate-loss picture used to sanity-check the pipeline: optimal
//! intensity, leakage bound, key rate, and reference bounds on a coarse
//! grid, plus the first loss where each mode beats the repeaterless bound.

use tfqkd_core::rates::{
    fiber_transmittance, optimize_intensity, plob_bound, DecoyMode,
};
use tfqkd_core::ExperimentParams;

fn main() {
    let params = ExperimentParams::new(8e-8, 0.145, 30.0, 0.2, (0.1, 0.01), 1.15, 0.0).unwrap();
    for mode in [DecoyMode::Infinite, DecoyMode::Finite] {
        println!("== {} decoy ==", mode.label());
        println!(
            "{:>8} {:>10} {:>12} {:>10} {:>12} {:>12} {:>8}",
            "loss_db", "mu_opt", "q_mu", "i_ae", "rate", "plob", "R/plob"
        );
        let mut crossing: Option<f64> = None;
        for loss10 in (200..=640).step_by(20) {
            let loss = f64::from(loss10) / 10.0;
            let p = optimize_intensity(loss, &params, mode).unwrap();
            let plob = plob_bound(fiber_transmittance(loss)).unwrap();
            let ratio = p.key_rate / plob;
            if ratio > 1.0 && crossing.is_none() {
                crossing = Some(loss);
            }
            println!(
                "{:>8.1} {:>10.5} {:>12.4e} {:>10.6} {:>12.4e} {:>12.4e} {:>8.3}",
                loss, p.optimal_mu, p.q_mu, p.i_ae_upper, p.key_rate, plob, ratio
            );
        }
        match crossing {
            Some(db) => println!("first grid point above the repeaterless bound: {db} dB"),
            None => println!("never exceeds the repeaterless bound on this grid"),
        }
        println!();
    }

    // Ideal-case slope check.
    let ideal = ExperimentParams::new(0.0, 1.0, 30.0, 0.2, (0.1, 0.01), 1.0, 0.0).unwrap();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for loss in 30..=60 {
        let p = optimize_intensity(f64::from(loss), &ideal, DecoyMode::Infinite).unwrap();
        if p.key_rate > 0.0 {
            xs.push(f64::from(loss));
            ys.push(p.key_rate.log10());
        }
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    println!("ideal-case log10(R) slope over 30-60 dB: {slope:.5} per dB");
}
