//! Golden-section search over a unimodal function.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximize `f` over `[lo, hi]`, assuming `f` is unimodal there. Returns
/// `(x, f(x))`. The bracket is shrunk until its width falls below `x_tol`;
/// the endpoints are always evaluated, so a maximum on the boundary is found
/// exactly.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, x_tol: f64) -> (f64, f64) {
    debug_assert!(lo <= hi);
    if hi - lo <= x_tol {
        let mid = 0.5 * (lo + hi);
        return pick_best(&f, &[lo, mid, hi]);
    }

    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // Width shrinks by INV_PHI per iteration; cap comfortably above the
    // worst-case iteration count for f64 widths.
    for _ in 0..512 {
        if b - a <= x_tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (a + b);
    pick_best(&f, &[lo, mid, hi])
}

fn pick_best<F: Fn(f64) -> f64>(f: &F, xs: &[f64]) -> (f64, f64) {
    let mut best = (xs[0], f(xs[0]));
    for &x in &xs[1..] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}
