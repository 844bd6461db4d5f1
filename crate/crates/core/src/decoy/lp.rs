//! Small dense linear-program solver over box-constrained variables.
//!
//! Solves `min/max c.x` subject to `lo_j <= a_j.x <= hi_j` per row and
//! `l_i <= x_i <= u_i` per variable, with all bounds finite. Ranged rows are
//! handled by giving each row a slack variable boxed to `[lo_j, hi_j]`, so
//! the working form is a pure equality system over bounded variables. A
//! textbook two-phase primal simplex does the rest: phase 1 minimizes the sum
//! of artificial variables to find a vertex (or reports which constraints
//! cannot be met), phase 2 optimizes the caller's objective.
//!
//! Pivot selection uses Bland's rule throughout (smallest eligible entering
//! index, smallest basic index among ratio-test ties): the solver cannot
//! cycle, and identical inputs take identical pivot paths, giving
//! bit-identical optima across runs. Dense tableau; problem sizes stay in
//! the tens of variables.

use crate::error::{Error, Result};

/// Optimization direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// Minimize the objective.
    Minimize,
    /// Maximize the objective.
    Maximize,
}

/// One ranged constraint row `lo <= coeffs . x <= hi`.
#[derive(Debug, Clone)]
pub struct Row {
    /// Label used in infeasibility reports.
    pub name: String,
    /// Dense coefficient vector, one entry per variable.
    pub coeffs: Vec<f64>,
    /// Lower bound on the row value.
    pub lo: f64,
    /// Upper bound on the row value.
    pub hi: f64,
}

/// A bounded linear program.
#[derive(Debug, Clone)]
pub struct BoundedLp {
    /// Optimization direction.
    pub sense: Sense,
    /// Objective coefficients, one per variable.
    pub objective: Vec<f64>,
    /// Inclusive `(lower, upper)` box per variable.
    pub var_bounds: Vec<(f64, f64)>,
    /// Constraint rows.
    pub rows: Vec<Row>,
}

/// Optimal point and value of a [`BoundedLp`].
#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Objective value at the optimum.
    pub value: f64,
    /// Optimal variable assignment.
    pub x: Vec<f64>,
}

const RC_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-11;
const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
}

struct Tableau {
    /// `B^-1 A` for every column.
    tab: Vec<Vec<f64>>,
    /// Current value of the basic variable in each row.
    bval: Vec<f64>,
    /// Basic variable per row.
    basis: Vec<usize>,
    /// Location of every variable.
    state: Vec<VarState>,
    /// Box width per (shifted) variable; lower bounds are all zero.
    width: Vec<f64>,
    num_rows: usize,
}

impl Tableau {
    /// Run bounded-variable simplex with costs `cost`, minimizing. `allowed`
    /// marks columns eligible to enter the basis. Entering and leaving
    /// variables follow Bland's smallest-index rule, which forbids cycling.
    fn optimize(&mut self, cost: &[f64], allowed: &[bool]) {
        // Generous safety net; Bland's rule terminates far earlier.
        let max_pivots = 2000 * (self.num_rows + cost.len() + 1);
        for _ in 0..max_pivots {
            let mut entering = None;
            for j in 0..cost.len() {
                if !allowed[j] || self.width[j] <= 0.0 {
                    continue; // fixed variables can never move
                }
                let (dir, eligible) = match self.state[j] {
                    VarState::Basic(_) => continue,
                    VarState::AtLower => (1.0, self.reduced_cost(cost, j) < -RC_TOL),
                    VarState::AtUpper => (-1.0, self.reduced_cost(cost, j) > RC_TOL),
                };
                if eligible {
                    entering = Some((j, dir));
                    break; // Bland: first eligible index.
                }
            }
            let Some((j, dir)) = entering else { return };

            // Ratio test, pass 1: the exact smallest step before any basic
            // variable hits a bound (or the entering variable flips).
            let mut t_min = self.width[j];
            for i in 0..self.num_rows {
                let delta = dir * self.tab[i][j];
                let t = if delta > PIVOT_TOL {
                    (self.bval[i] / delta).max(0.0)
                } else if delta < -PIVOT_TOL {
                    let w = self.width[self.basis[i]];
                    ((w - self.bval[i]) / -delta).max(0.0)
                } else {
                    continue;
                };
                if t < t_min {
                    t_min = t;
                }
            }

            // Pass 2: among rows blocking at (numerically) the same step,
            // leave the one whose basic variable has the smallest index.
            let tie = t_min + PIVOT_TOL * (1.0 + t_min.abs());
            let mut leaving: Option<(usize, f64)> = None; // (row, bound hit)
            for i in 0..self.num_rows {
                let delta = dir * self.tab[i][j];
                let (t, hit) = if delta > PIVOT_TOL {
                    ((self.bval[i] / delta).max(0.0), 0.0)
                } else if delta < -PIVOT_TOL {
                    let w = self.width[self.basis[i]];
                    (((w - self.bval[i]) / -delta).max(0.0), w)
                } else {
                    continue;
                };
                if t <= tie {
                    let better = match leaving {
                        None => true,
                        Some((r, _)) => self.basis[i] < self.basis[r],
                    };
                    if better {
                        leaving = Some((i, hit));
                    }
                }
            }

            match leaving {
                None => {
                    // Nothing blocks before the entering variable's own box:
                    // flip it to the other bound.
                    let step = self.width[j];
                    if !step.is_finite() {
                        debug_assert!(false, "unbounded simplex direction");
                        return;
                    }
                    for i in 0..self.num_rows {
                        self.bval[i] = (self.bval[i] - dir * self.tab[i][j] * step).max(0.0);
                    }
                    self.state[j] = match self.state[j] {
                        VarState::AtLower => VarState::AtUpper,
                        VarState::AtUpper => VarState::AtLower,
                        VarState::Basic(_) => unreachable!(),
                    };
                }
                Some((r, hit)) => {
                    let step = t_min;
                    for i in 0..self.num_rows {
                        if i != r {
                            self.bval[i] = (self.bval[i] - dir * self.tab[i][j] * step)
                                .max(0.0);
                        }
                    }
                    let new_val = if dir > 0.0 { step } else { self.width[j] - step };
                    let old = self.basis[r];
                    self.state[old] = if hit == 0.0 {
                        VarState::AtLower
                    } else {
                        VarState::AtUpper
                    };
                    self.basis[r] = j;
                    self.state[j] = VarState::Basic(r);
                    self.bval[r] = new_val;
                    self.eliminate(r, j);
                }
            }
        }
        debug_assert!(false, "simplex exceeded its pivot budget");
    }

    fn reduced_cost(&self, cost: &[f64], j: usize) -> f64 {
        let mut rc = cost[j];
        for i in 0..self.num_rows {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                rc -= cb * self.tab[i][j];
            }
        }
        rc
    }

    /// Gaussian elimination of column `j` against pivot row `r`.
    fn eliminate(&mut self, r: usize, j: usize) {
        let pivot = self.tab[r][j];
        debug_assert!(pivot.abs() > PIVOT_TOL);
        let inv = 1.0 / pivot;
        for v in self.tab[r].iter_mut() {
            *v *= inv;
        }
        for i in 0..self.num_rows {
            if i == r {
                continue;
            }
            let factor = self.tab[i][j];
            if factor == 0.0 {
                continue;
            }
            let (row_r, row_i) = if i < r {
                let (a, b) = self.tab.split_at_mut(r);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = self.tab.split_at_mut(i);
                (&a[r], &mut b[0])
            };
            for (vi, vr) in row_i.iter_mut().zip(row_r.iter()) {
                *vi -= factor * vr;
            }
            self.tab[i][j] = 0.0;
        }
    }

    /// Current value of shifted variable `j`.
    fn value(&self, j: usize) -> f64 {
        match self.state[j] {
            VarState::Basic(r) => self.bval[r],
            VarState::AtLower => 0.0,
            VarState::AtUpper => self.width[j],
        }
    }
}

/// Solve a bounded LP, returning the optimum or an infeasibility report
/// naming the constraints that could not be satisfied.
pub fn solve_bounded_lp(lp: &BoundedLp) -> Result<LpSolution> {
    let n = lp.objective.len();
    let m = lp.rows.len();
    assert_eq!(lp.var_bounds.len(), n, "one box per variable");
    for row in &lp.rows {
        assert_eq!(row.coeffs.len(), n, "row `{}` has wrong arity", row.name);
        assert!(row.lo <= row.hi, "row `{}` has lo > hi", row.name);
    }
    for (i, &(l, u)) in lp.var_bounds.iter().enumerate() {
        assert!(l <= u, "variable {i} has lower bound above upper bound");
    }

    // Shift every variable and slack to lower bound zero. Columns are laid
    // out as [structural | slacks | artificials].
    let total = n + 2 * m;
    let mut width = vec![0.0; total];
    for (i, &(l, u)) in lp.var_bounds.iter().enumerate() {
        width[i] = u - l;
    }
    for (j, row) in lp.rows.iter().enumerate() {
        width[n + j] = row.hi - row.lo;
        width[n + m + j] = f64::INFINITY; // artificials, phase 1 only
    }

    // Row equations: a_j . x - s_j = 0, in shifted coordinates
    //   a_j . w - t_j = row.lo - a_j . l  =: b_j,
    // then signs are fixed so b_j >= 0 and an artificial provides the basis.
    let mut tab = vec![vec![0.0; total]; m];
    let mut b = vec![0.0; m];
    for (j, row) in lp.rows.iter().enumerate() {
        let mut rhs = row.lo;
        for (i, &a) in row.coeffs.iter().enumerate() {
            rhs -= a * lp.var_bounds[i].0;
        }
        let flip = if rhs < 0.0 { -1.0 } else { 1.0 };
        for (i, &a) in row.coeffs.iter().enumerate() {
            tab[j][i] = flip * a;
        }
        tab[j][n + j] = -flip;
        tab[j][n + m + j] = 1.0;
        b[j] = flip * rhs;
    }

    let mut t = Tableau {
        tab,
        bval: b,
        basis: (0..m).map(|j| n + m + j).collect(),
        state: {
            let mut s = vec![VarState::AtLower; total];
            for j in 0..m {
                s[n + m + j] = VarState::Basic(j);
            }
            s
        },
        width,
        num_rows: m,
    };

    // Phase 1: minimize the total artificial mass.
    let mut phase1_cost = vec![0.0; total];
    for j in 0..m {
        phase1_cost[n + m + j] = 1.0;
    }
    let allowed_all = vec![true; total];
    t.optimize(&phase1_cost, &allowed_all);

    let scale = 1.0 + lp.rows.iter().map(|r| r.hi.abs().max(r.lo.abs())).fold(0.0, f64::max);
    let infeasibility: f64 = (0..m).map(|j| t.value(n + m + j)).sum();
    if infeasibility > FEAS_TOL * scale {
        let mut violated: Vec<String> = Vec::new();
        for j in 0..m {
            if t.value(n + m + j) > FEAS_TOL * scale {
                violated.push(lp.rows[j].name.clone());
            }
        }
        return Err(Error::Infeasible(violated));
    }

    // Phase 2: artificials are frozen (zero width) and barred from entering.
    let mut allowed = vec![true; total];
    for j in 0..m {
        allowed[n + m + j] = false;
        t.width[n + m + j] = 0.0;
    }
    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut phase2_cost = vec![0.0; total];
    for i in 0..n {
        phase2_cost[i] = sign * lp.objective[i];
    }
    t.optimize(&phase2_cost, &allowed);

    let mut x = vec![0.0; n];
    for (i, xi) in x.iter_mut().enumerate() {
        *xi = lp.var_bounds[i].0 + t.value(i);
    }
    let value = lp
        .objective
        .iter()
        .zip(x.iter())
        .map(|(c, xi)| c * xi)
        .sum();
    Ok(LpSolution { value, x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_box(n: usize) -> Vec<(f64, f64)> {
        vec![(0.0, 1.0); n]
    }

    fn row(name: &str, coeffs: Vec<f64>, lo: f64, hi: f64) -> Row {
        Row {
            name: name.to_string(),
            coeffs,
            lo,
            hi,
        }
    }

    #[test]
    fn single_variable_cap() {
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![1.0],
            var_bounds: unit_box(1),
            rows: vec![row("cap", vec![1.0], 0.0, 0.3)],
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.value - 0.3).abs() < 1e-12);
    }

    #[test]
    fn two_variable_floor() {
        let lp = BoundedLp {
            sense: Sense::Minimize,
            objective: vec![1.0, 1.0],
            var_bounds: unit_box(2),
            rows: vec![row("floor", vec![1.0, 1.0], 0.5, 2.0)],
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn equality_row_pins_variable() {
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![0.0, 1.0],
            var_bounds: unit_box(2),
            rows: vec![
                row("pin", vec![1.0, 0.0], 0.25, 0.25),
                row("sum", vec![1.0, 1.0], 0.0, 0.8),
            ],
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.x[0] - 0.25).abs() < 1e-12);
        assert!((sol.value - 0.55).abs() < 1e-12);
    }

    #[test]
    fn reports_infeasible_rows() {
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![1.0],
            var_bounds: unit_box(1),
            rows: vec![
                row("wants_high", vec![1.0], 0.9, 1.0),
                row("wants_low", vec![1.0], 0.0, 0.2),
            ],
        };
        match solve_bounded_lp(&lp) {
            Err(Error::Infeasible(names)) => {
                assert!(!names.is_empty());
                assert!(names.iter().all(|n| n.starts_with("wants_")));
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn objective_outside_rows_uses_boxes() {
        // x1 unconstrained by rows: maximum sits on its box.
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![0.0, 2.0],
            var_bounds: vec![(0.0, 1.0), (0.2, 0.7)],
            rows: vec![row("only_x0", vec![1.0, 0.0], 0.0, 0.5)],
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.x[1] - 0.7).abs() < 1e-12);
        assert!((sol.value - 1.4).abs() < 1e-12);
    }

    #[test]
    fn negative_range_rows_work() {
        // Row value forced negative; checks the sign-flip path.
        let lp = BoundedLp {
            sense: Sense::Minimize,
            objective: vec![1.0, 0.0],
            var_bounds: vec![(-1.0, 1.0), (-1.0, 1.0)],
            rows: vec![row("diff", vec![1.0, -1.0], -0.5, -0.5)],
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.x[0] - sol.x[1] + 0.5).abs() < 1e-9);
        assert!((sol.value - -1.0).abs() < 1e-9);
    }

    #[test]
    fn deterministic_bitwise() {
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![0.3, 0.7, 0.1, 0.9],
            var_bounds: unit_box(4),
            rows: vec![
                row("r0", vec![1.0, 1.0, 1.0, 1.0], 0.0, 1.5),
                row("r1", vec![0.9, 0.1, 0.0, 0.2], 0.1, 0.6),
                row("r2", vec![0.0, 0.5, 0.5, 0.0], 0.2, 0.9),
            ],
        };
        let a = solve_bounded_lp(&lp).unwrap();
        let b = solve_bounded_lp(&lp).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        for (xa, xb) in a.x.iter().zip(b.x.iter()) {
            assert_eq!(xa.to_bits(), xb.to_bits());
        }
    }

    #[test]
    fn degenerate_ties_terminate() {
        // Many identical rows force degenerate pivots; Bland's rule must
        // still terminate.
        let rows: Vec<Row> = (0..6)
            .map(|i| row(&format!("dup{i}"), vec![1.0, 1.0, 1.0], 0.0, 0.5))
            .collect();
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective: vec![1.0, 1.0, 1.0],
            var_bounds: unit_box(3),
            rows,
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        assert!((sol.value - 0.5).abs() < 1e-12);
    }

    /// Brute-force oracle: enumerate candidate vertices of the polytope
    /// `{l <= x <= u, lo <= Ax <= hi}` by activating k rows (each at lo or
    /// hi) and n-k boxes (each end), solving the resulting square system,
    /// and keeping feasible points.
    fn vertex_enumerate(lp: &BoundedLp) -> (f64, f64) {
        let n = lp.objective.len();
        let m = lp.rows.len();
        let mut best_min = f64::INFINITY;
        let mut best_max = f64::NEG_INFINITY;
        let row_subsets: Vec<Vec<usize>> = subsets(m);
        for rows 	in &row_subsets {
            let k = rows.len();
            if k > n {
                continue;
            }
            for row_ends in 0..(1u32 << k) {
                for free in combinations(n, k) {
                    let fixed: Vec<usize> =
                        (0..n).filter(|i| !free.contains(i)).collect();
                    for fix_ends in 0..(1u64 << fixed.len()) {
                        let mut x = vec![0.0; n];
                        for (bit, &i) in fixed.iter().enumerate() {
                            x[i] = if fix_ends >> bit & 1 == 1 {
                                lp.var_bounds[i].1
                            } else {
                                lp.var_bounds[i].0
                            };
                        }
                        if k > 0 {
                            let mut a = vec![vec![0.0; k]; k];
                            let mut rhs = vec![0.0; k];
                            for (ri, &r) in rows.iter().enumerate() {
                                let target = if row_ends >> ri & 1 == 1 {
                                    lp.rows[r].hi
                                } else {
                                    lp.rows[r].lo
                                };
                                rhs[ri] = target
                                    - fixed
                                        .iter()
                                        .map(|&i| lp.rows[r].coeffs[i] * x[i])
                                        .sum::<f64>();
                                for (ci, &i) in free.iter().enumerate() {
                                    a[ri][ci] = lp.rows[r].coeffs[i];
                                }
                            }
                            let Some(sol) = gauss_solve(a, rhs) else { continue };
                            for (ci, &i) in free.iter().enumerate() {
                                x[i] = sol[ci];
                            }
                        }
                        if feasible(lp, &x) {
                            let v: f64 = lp
                                .objective
                                .iter()
                                .zip(x.iter())
                                .map(|(c, xi)| c * xi)
                                .sum();
                            best_min = best_min.min(v);
                            best_max = best_max.max(v);
                        }
                    }
                }
            }
        }
        (best_min, best_max)
    }

    fn subsets(m: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0..(1u32 << m) {
            out.push((0..m).filter(|i| mask >> i & 1 == 1).collect());
        }
        out
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        if k == 0 {
            return vec![vec![]];
        }
        if k > n {
            return out;
        }
        loop {
            out.push(idx.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
        let k = b.len();
        for col in 0..k {
            let pivot = (col..k).max_by(|&i, &j| {
                a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
            })?;
            if a[pivot][col].abs() < 1e-12 {
                return None;
            }
            a.swap(col, pivot);
            b.swap(col, pivot);
            for i in 0..k {
                if i != col {
                    let f = a[i][col] / a[col][col];
                    for j in col..k {
                        a[i][j] -= f * a[col][j];
                    }
                    b[i] -= f * b[col];
                }
            }
        }
        Some((0..k).map(|i| b[i] / a[i][i]).collect())
    }

    fn feasible(lp: &BoundedLp, x: &[f64]) -> bool {
        let tol = 1e-9;
        for (i, &(l, u)) in lp.var_bounds.iter().enumerate() {
            if x[i] < l - tol || x[i] > u + tol {
                return false;
            }
        }
        for r in &lp.rows {
            let v: f64 = r.coeffs.iter().zip(x.iter()).map(|(c, xi)| c * xi).sum();
            if v < r.lo - tol || v > r.hi + tol {
                return false;
            }
        }
        true
    }

    #[test]
    fn y00_upper_bound_matches_vertex_enumeration_at_40_db() {
        // The one-sided family program at honest 40 dB gains, truncated to
        // twelve variables: the Y(0,0) maximum from the simplex must agree
        // with exhaustive vertex search and sit within 1e-4 of the honest
        // yield (the vacuum row pins it, so the slack is tiny).
        let eta = crate::photonics::effective_transmittance(40.0, 0.145);
        let gains = crate::decoy::DecoyGains::honest(0.1, 0.05, 0.01, eta, 8e-8);
        let list = vec![
            ("gain[0,0]".to_string(), 0.0, gains.vac_vac),
            ("gain[mu,0]".to_string(), 0.1, gains.mu_vac),
            ("gain[nu1,0]".to_string(), 0.05, gains.nu1_vac),
            ("gain[nu2,0]".to_string(), 0.01, gains.nu2_vac),
        ];
        let rows = crate::decoy::family_rows(&list, 11).unwrap();
        let n_vars = 12;
        let mut objective = vec![0.0; n_vars];
        objective[0] = 1.0;
        let lp = BoundedLp {
            sense: Sense::Maximize,
            objective,
            var_bounds: vec![(0.0, 1.0); n_vars],
            rows,
        };
        let sol = solve_bounded_lp(&lp).unwrap();
        let (_, oracle_max) = vertex_enumerate(&lp);
        assert!(
            (sol.value - oracle_max).abs() < 1e-7,
            "simplex {} vs vertex enumeration {}",
            sol.value,
            oracle_max
        );
        let honest = crate::photonics::honest_yield(0, 0, eta, 8e-8);
        assert!(sol.value >= honest - 1e-12);
        assert!(sol.value <= honest + 1e-4);
    }

    #[test]
    fn agrees_with_vertex_enumeration() {
        // Pseudo-random dense instances, deterministic seeds.
        let mut state = 0x5EED_1234_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..12 {
            let n = 3 + (trial % 3);
            let m = 2 + (trial % 2);
            let objective: Vec<f64> = (0..n).map(|_| next() - 0.5).collect();
            let rows: Vec<Row> = (0..m)
                .map(|j| {
                    let coeffs: Vec<f64> = (0..n).map(|_| next()).collect();
                    let lo = 0.2 * next();
                    Row {
                        name: format!("r{j}"),
                        coeffs,
                        lo,
                        hi: lo + 0.5 + next(),
                    }
                })
                .collect();
            let lp = BoundedLp {
                sense: Sense::Maximize,
                objective: objective.clone(),
                var_bounds: vec![(0.0, 1.0); n],
                rows,
            };
            let (oracle_min, oracle_max) = vertex_enumerate(&lp);
            if oracle_max.is_finite() {
                let max = solve_bounded_lp(&lp).unwrap();
                assert!(
                    (max.value - oracle_max).abs() < 1e-7,
                    "trial {trial}: simplex max {} vs oracle {}",
                    max.value,
                    oracle_max
                );
                let mut lp_min = lp.clone();
                lp_min.sense = Sense::Minimize;
                let min = solve_bounded_lp(&lp_min).unwrap();
                assert!(
                    (min.value - oracle_min).abs() < 1e-7,
                    "trial {trial}: simplex min {} vs oracle {}",
                    min.value,
                    oracle_min
                );
            }
        }
    }
}
