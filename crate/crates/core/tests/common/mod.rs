//! Shared test support: the brute-force grid oracle for the leakage
//! maximization.
//!
//! The oracle is deliberately independent of the engine's optimizer: it
//! re-implements the objective locally and maximizes by exhaustive search on
//! the simplex lattice `(z00, z10, z11) = (i, j, k) / steps` with
//! `z01 = 1 - z00 - z10 - z11`, followed by local grid refinement around the
//! best lattice point so cap-clamped optima are resolved to full precision.

/// Local copy of the pair function; kept separate from the library on
/// purpose.
fn h_pair(x: f64, y: f64) -> f64 {
    let xlx = |v: f64| if v > 0.0 { v * v.log2() } else { 0.0 };
    xlx(x + y) - xlx(x) - xlx(y)
}

fn objective(z00: f64, z10: f64, z11: f64, z01: f64) -> f64 {
    h_pair(z00, z10) + h_pair(z11, z01)
}

/// Exhaustive lattice maximum of the normalized leakage objective subject to
/// `z <= caps` and `sum z = 1`.
pub fn leakage_grid_oracle(caps: [f64; 4], q_mu: f64, steps: usize) -> f64 {
    let n = steps;
    let c: Vec<f64> = caps.iter().map(|b| (b / q_mu).min(1.0)).collect();

    // x log2 x on the lattice, so the coarse pass is pure table lookups.
    let table: Vec<f64> = (0..=n)
        .map(|t| {
            let v = t as f64 / n as f64;
            if v > 0.0 {
                v * v.log2()
            } else {
                0.0
            }
        })
        .collect();
    let h_idx = |a: usize, b: usize| table[a + b] - table[a] - table[b];

    let cap_idx = |cap: f64| ((cap * n as f64) + 1e-9).floor().min(n as f64) as usize;
    let (i_max, j_max, k_max, l_max) =
        (cap_idx(c[0]), cap_idx(c[1]), cap_idx(c[2]), cap_idx(c[3]));

    let mut best = f64::NEG_INFINITY;
    let mut best_at = (0usize, 0usize, 0usize);
    for i in 0..=i_max {
        for j in 0..=j_max.min(n - i) {
            let pair1 = h_idx(i, j);
            let rem = n - i - j;
            let k_lo = rem.saturating_sub(l_max);
            for k in k_lo..=k_max.min(rem) {
                let l = rem - k;
                let val = pair1 + h_idx(k, l);
                if val > best {
                    best = val;
                    best_at = (i, j, k);
                }
            }
        }
    }
    if !best.is_finite() {
        // No lattice point hit the thin feasible slab; fall back to the
        // all-at-caps corner, which is feasible whenever the instance is.
        let z00 = c[0];
        let z10 = c[1];
        let z11 = c[2];
        let z01 = (1.0 - z00 - z10 - z11).clamp(0.0, c[3]);
        best = objective(z00, z10, z11, z01);
        best_at = (
            (z00 * n as f64) as usize,
            (z10 * n as f64) as usize,
            (z11 * n as f64) as usize,
        );
    }

    // Pattern-search refinement around the best lattice point: sweep a local
    // grid, walk (same radius) while the best sits on the search-box edge,
    // shrink once it is interior. Coordinates clamp into their caps so
    // boundary optima are hit exactly.
    let mut center = [
        best_at.0 as f64 / n as f64,
        best_at.1 as f64 / n as f64,
        best_at.2 as f64 / n as f64,
    ];
    let mut radius = 1.5 / n as f64;
    let sub = 16usize;
    let mut rounds = 0;
    while radius > 1e-8 && rounds < 500 {
        rounds += 1;
        let mut round_best = best;
        let mut round_center = center;
        let mut on_edge = false;
        for a in 0..=sub {
            let raw0 = center[0] - radius + 2.0 * radius * a as f64 / sub as f64;
            let z00 = raw0.clamp(0.0, c[0]);
            for b in 0..=sub {
                let raw1 = center[1] - radius + 2.0 * radius * b as f64 / sub as f64;
                let z10 = raw1.clamp(0.0, c[1]);
                for d in 0..=sub {
                    let raw2 = center[2] - radius + 2.0 * radius * d as f64 / sub as f64;
                    let z11 = raw2.clamp(0.0, c[2]);
                    let z01 = 1.0 - z00 - z10 - z11;
                    if !(-1e-12..=c[3] + 1e-12).contains(&z01) {
                        continue;
                    }
                    let val = objective(z00, z10, z11, z01.max(0.0));
                    if val > round_best {
                        round_best = val;
                        round_center = [z00, z10, z11];
                        // On the box edge only if the sweep end is what
                        // limited the coordinate, not its cap or zero.
                        let edge = |idx: usize, v: f64, cap: f64| {
                            (idx == 0 || idx == sub) && v > 1e-15 && v < cap - 1e-15
                        };
                        on_edge = edge(a, z00, c[0])
                            || edge(b, z10, c[1])
                            || edge(d, z11, c[2]);
                    }
                }
            }
        }
        let improved = round_best > best;
        best = round_best;
        center = round_center;
        if !(improved && on_edge) {
            radius /= 8.0;
        }
    }
    best
}
