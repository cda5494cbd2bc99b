//! A small dense two-phase simplex solver.
//!
//! The hull queries in this crate produce linear programs with few rows and
//! possibly many columns (convex-combination feasibility) or few variables
//! under a cutting-plane loop (normal search), so a dense tableau with
//! Dantzig pricing and a Bland fallback is the right tool. Not a
//! general-purpose LP code.

/// `minimize c . x` subject to the rows, with `x >= 0` implicitly.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub rows: Vec<LpRow>,
}

#[derive(Clone, Debug)]
pub struct LpRow {
    pub coeffs: Vec<f64>,
    pub op: LpOp,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpOp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
    /// Pivot budget exhausted; treated as a solver failure by callers.
    Stalled,
}

const PIVOT_EPS: f64 = 1e-10;
const COST_EPS: f64 = 1e-9;
const FEAS_EPS: f64 = 1e-7;

pub fn solve(problem: &LpProblem) -> LpOutcome {
    let nvars = problem.objective.len();
    let m = problem.rows.len();
    debug_assert!(problem.rows.iter().all(|r| r.coeffs.len() == nvars));

    // Column layout: [structural | slack/surplus | artificial | rhs].
    let mut nslack = 0;
    for row in &problem.rows {
        if row.op != LpOp::Eq {
            nslack += 1;
        }
    }
    // Worst case one artificial per row; unused ones are simply never basic.
    let width = nvars + nslack + m + 1;
    let rhs_col = width - 1;
    let mut tab = vec![0.0f64; (m + 1) * width];
    let idx = |r: usize, c: usize| r * width + c;

    let mut basis = vec![usize::MAX; m];
    let mut artificials = Vec::new();
    let mut slack_cursor = nvars;
    let art_base = nvars + nslack;

    for (r, row) in problem.rows.iter().enumerate() {
        // equilibrate the row so pivot tolerances are scale-free
        let scale = row
            .coeffs
            .iter()
            .chain(std::iter::once(&row.rhs))
            .fold(0.0f64, |s, v| s.max(v.abs()))
            .max(1e-300);
        let flip = if row.rhs / scale < 0.0 { -1.0 } else { 1.0 };
        for (c, &v) in row.coeffs.iter().enumerate() {
            tab[idx(r, c)] = flip * v / scale;
        }
        tab[idx(r, rhs_col)] = flip * row.rhs / scale;

        let effective_op = match (row.op, flip < 0.0) {
            (LpOp::Eq, _) => LpOp::Eq,
            (LpOp::Le, false) | (LpOp::Ge, true) => LpOp::Le,
            (LpOp::Le, true) | (LpOp::Ge, false) => LpOp::Ge,
        };
        match effective_op {
            LpOp::Le => {
                tab[idx(r, slack_cursor)] = 1.0;
                basis[r] = slack_cursor;
                slack_cursor += 1;
            }
            LpOp::Ge => {
                tab[idx(r, slack_cursor)] = -1.0;
                slack_cursor += 1;
                let a = art_base + r;
                tab[idx(r, a)] = 1.0;
                basis[r] = a;
                artificials.push(a);
            }
            LpOp::Eq => {
                let a = art_base + r;
                tab[idx(r, a)] = 1.0;
                basis[r] = a;
                artificials.push(a);
            }
        }
    }

    // Phase 1: minimize the sum of artificials.
    if !artificials.is_empty() {
        for r in 0..m {
            if artificials.contains(&basis[r]) {
                for c in 0..width {
                    tab[idx(m, c)] -= tab[idx(r, c)];
                }
            }
        }
        match run_simplex(&mut tab, m, width, &mut basis, art_base) {
            SimplexEnd::Optimal => {}
            SimplexEnd::Unbounded => return LpOutcome::Stalled, // cannot happen for phase 1
            SimplexEnd::Stalled => return LpOutcome::Stalled,
        }
        if -tab[idx(m, rhs_col)] > FEAS_EPS {
            return LpOutcome::Infeasible;
        }
        // Drive leftover artificials out of the basis where possible.
        for r in 0..m {
            if artificials.contains(&basis[r]) {
                let pivot_col = (0..art_base).find(|&c| tab[idx(r, c)].abs() > PIVOT_EPS);
                if let Some(c) = pivot_col {
                    pivot(&mut tab, m, width, r, c);
                    basis[r] = c;
                }
                // otherwise the row is redundant; its artificial stays at zero
            }
        }
    }

    // Phase 2: real objective, artificials barred from entering.
    for c in 0..width {
        tab[idx(m, c)] = 0.0;
    }
    for (c, &cost) in problem.objective.iter().enumerate() {
        tab[idx(m, c)] = cost;
    }
    for r in 0..m {
        let b = basis[r];
        let cost = if b < nvars { problem.objective[b] } else { 0.0 };
        if cost != 0.0 {
            for c in 0..width {
                tab[idx(m, c)] -= cost * tab[idx(r, c)];
            }
        }
    }
    match run_simplex(&mut tab, m, width, &mut basis, art_base) {
        SimplexEnd::Optimal => {}
        SimplexEnd::Unbounded => return LpOutcome::Unbounded,
        SimplexEnd::Stalled => return LpOutcome::Stalled,
    }

    let mut x = vec![0.0; nvars];
    for r in 0..m {
        if basis[r] < nvars {
            x[basis[r]] = tab[idx(r, rhs_col)].max(0.0);
        }
    }
    let value = problem.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    LpOutcome::Optimal { x, value }
}

enum SimplexEnd {
    Optimal,
    Unbounded,
    Stalled,
}

fn run_simplex(
    tab: &mut [f64],
    m: usize,
    width: usize,
    basis: &mut [usize],
    bar_from: usize,
) -> SimplexEnd {
    let rhs_col = width - 1;
    let idx = |r: usize, c: usize| r * width + c;
    let max_iters = 200 * (m + width);
    let bland_after = 20 * (m + width);

    for iter in 0..max_iters {
        let bland = iter >= bland_after;
        // entering column; artificials (columns past bar_from) never enter
        let mut enter = None;
        let mut best = -COST_EPS;
        for c in 0..bar_from.min(rhs_col) {
            let cost = tab[idx(m, c)];
            if cost < best {
                enter = Some(c);
                if bland {
                    break;
                }
                best = cost;
            }
        }
        let Some(enter) = enter else { return SimplexEnd::Optimal };

        // ratio test
        let mut leave = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..m {
            let a = tab[idx(r, enter)];
            if a > PIVOT_EPS {
                let ratio = tab[idx(r, rhs_col)] / a;
                if ratio < best_ratio - PIVOT_EPS
                    || (ratio < best_ratio + PIVOT_EPS
                        && leave.map_or(true, |l: usize| basis[r] < basis[l]))
                {
                    best_ratio = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(leave) = leave else { return SimplexEnd::Unbounded };

        pivot(tab, m, width, leave, enter);
        basis[leave] = enter;
    }
    SimplexEnd::Stalled
}

fn pivot(tab: &mut [f64], m: usize, width: usize, prow: usize, pcol: usize) {
    let idx = |r: usize, c: usize| r * width + c;
    let p = tab[idx(prow, pcol)];
    debug_assert!(p.abs() > PIVOT_EPS);
    for c in 0..width {
        tab[idx(prow, c)] /= p;
    }
    for r in 0..=m {
        if r == prow {
            continue;
        }
        let factor = tab[idx(r, pcol)];
        if factor.abs() > 0.0 {
            for c in 0..width {
                tab[idx(r, c)] -= factor * tab[idx(prow, c)];
            }
            tab[idx(r, pcol)] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(coeffs: &[f64], op: LpOp, rhs: f64) -> LpRow {
        LpRow { coeffs: coeffs.to_vec(), op, rhs }
    }

    #[test]
    fn solves_a_textbook_maximization() {
        // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18  => (2, 6), value 36
        let problem = LpProblem {
            objective: vec![-3.0, -5.0],
            rows: vec![
                row(&[1.0, 0.0], LpOp::Le, 4.0),
                row(&[0.0, 2.0], LpOp::Le, 12.0),
                row(&[3.0, 2.0], LpOp::Le, 18.0),
            ],
        };
        match solve(&problem) {
            LpOutcome::Optimal { x, value } => {
                assert!((x[0] - 2.0).abs() < 1e-8 && (x[1] - 6.0).abs() < 1e-8);
                assert!((value + 36.0).abs() < 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn feasibility_with_equalities() {
        // convex weights reproducing a point inside a segment
        let problem = LpProblem {
            objective: vec![0.0, 0.0],
            rows: vec![
                row(&[1.0, 1.0], LpOp::Eq, 1.0),
                row(&[0.0, 1.0], LpOp::Eq, 0.25),
            ],
        };
        match solve(&problem) {
            LpOutcome::Optimal { x, .. } => {
                assert!((x[0] - 0.75).abs() < 1e-8 && (x[1] - 0.25).abs() < 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility() {
        let problem = LpProblem {
            objective: vec![1.0],
            rows: vec![row(&[1.0], LpOp::Ge, 2.0), row(&[1.0], LpOp::Le, 1.0)],
        };
        assert_eq!(solve(&problem), LpOutcome::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        let problem = LpProblem {
            objective: vec![-1.0],
            rows: vec![row(&[-1.0], LpOp::Le, 0.0)],
        };
        assert_eq!(solve(&problem), LpOutcome::Unbounded);
    }

    #[test]
    fn handles_negative_rhs_rows() {
        // x - y <= -1 with x, y >= 0: minimize x + y at (0, 1)
        let problem = LpProblem {
            objective: vec![1.0, 1.0],
            rows: vec![row(&[1.0, -1.0], LpOp::Le, -1.0)],
        };
        match solve(&problem) {
            LpOutcome::Optimal { x, value } => {
                assert!((value - 1.0).abs() < 1e-8, "{x:?}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_ties_do_not_cycle() {
        // classic degeneracy: several rows tie at ratio zero
        let problem = LpProblem {
            objective: vec![-0.75, 150.0, -0.02, 6.0],
            rows: vec![
                row(&[0.25, -60.0, -0.04, 9.0], LpOp::Le, 0.0),
                row(&[0.5, -90.0, -0.02, 3.0], LpOp::Le, 0.0),
                row(&[0.0, 0.0, 1.0, 0.0], LpOp::Le, 1.0),
            ],
        };
        match solve(&problem) {
            LpOutcome::Optimal { value, .. } => assert!((value + 0.05).abs() < 1e-8),
            other => panic!("{other:?}"),
        }
    }
}
