//! Euclidean projection repair for the Brier rule.
//!
//! The coherent credence tables form the convex hull of the n outcome
//! valuation tables (event -> indicator). Projecting an incoherent table
//! onto that hull in the Euclidean norm yields a probability whose Brier
//! score strictly dominates, by the obtuse-angle property of projections
//! onto convex sets. The projection itself is a tiny strictly convex
//! quadratic program over the weight simplex, solved by an active set on
//! the weights.

use crate::credence::{validate_probability, Credence, Probability, COHERENCE_TOL};
use crate::rules::{BrierRule, ScoringRule};
use crate::space::EventKey;

use super::{assemble_result, DominanceError, DominatorResult, RepairTrace};

const ZERO: f64 = 1e-12;

/// Projects the credence table onto the coherent polytope and returns the
/// projection together with the verified Brier domination result.
pub fn brier_projection(c: &Credence) -> Result<(Probability, DominatorResult), DominanceError> {
    if validate_probability(c, COHERENCE_TOL).is_ok() {
        return Err(DominanceError::Coherent);
    }
    let space = c.space().clone();
    let n = space.len();

    // Gram matrix of the valuation tables: events containing both outcomes.
    // <V_i, V_j> = 2^(n-1) on the diagonal and 2^(n-2) off it.
    let diag = 2f64.powi(n as i32 - 1);
    let off = 2f64.powi(n as i32 - 2);
    let gram = |i: usize, j: usize| if i == j { diag } else { off };
    // b_i = <V_i, c> = sum of c over events containing outcome i
    let b: Vec<f64> = (0..n)
        .map(|i| {
            (0..space.event_count() as u32)
                .filter(|mask| mask >> i & 1 == 1)
                .map(|mask| c.value(EventKey::from_mask(mask)))
                .sum()
        })
        .collect();

    let (lambda, iterations) = active_set_simplex_qp(n, gram, &b)?;
    let p = Probability::from_weights(space.clone(), lambda)?;

    let rule = BrierRule::new(space);
    let z0 = rule.score_credence(c)?;
    let result = assemble_result(&rule, c, &z0, &p, RepairTrace::Projection { iterations })?;
    for m in &result.margins {
        if m.map_or(false, |v| v <= 0.0) {
            return Err(DominanceError::ProjectionFailed(format!(
                "projection margin {m:?} is not positive"
            )));
        }
    }
    Ok((p, result))
}

/// Minimizes `lambda' G lambda - 2 b' lambda` over the simplex.
///
/// Strictly convex (G is positive definite), so the textbook active-set
/// iteration terminates: solve the equality-constrained system on the
/// support, clip the step at the first weight hitting zero, and re-admit
/// the worst optimality violator until none remains.
fn active_set_simplex_qp(
    n: usize,
    gram: impl Fn(usize, usize) -> f64,
    b: &[f64],
) -> Result<(Vec<f64>, usize), DominanceError> {
    let mut support: Vec<bool> = vec![true; n];
    let mut lambda = vec![1.0 / n as f64; n];
    let max_rounds = 4 * n * n + 16;

    for round in 0..max_rounds {
        // KKT system on the support: 2 G_SS x - mu 1 = 2 b_S, sum x = 1
        let idx: Vec<usize> = (0..n).filter(|&i| support[i]).collect();
        let m = idx.len();
        let mut a = vec![vec![0.0; m + 1]; m + 1];
        let mut rhs = vec![0.0; m + 1];
        for (r, &i) in idx.iter().enumerate() {
            for (s, &j) in idx.iter().enumerate() {
                a[r][s] = 2.0 * gram(i, j);
            }
            a[r][m] = -1.0;
            rhs[r] = 2.0 * b[i];
        }
        for s in 0..m {
            a[m][s] = 1.0;
        }
        rhs[m] = 1.0;
        let sol = solve_linear(a, rhs).ok_or_else(|| {
            DominanceError::ProjectionFailed("singular KKT system".into())
        })?;
        let mu = sol[m];

        let mut target = vec![0.0; n];
        for (r, &i) in idx.iter().enumerate() {
            target[i] = sol[r];
        }

        if target.iter().all(|&x| x >= -ZERO) {
            // feasible stationary point on this support; check the dropped
            // weights' optimality multipliers
            lambda = target.iter().map(|&x| x.max(0.0)).collect();
            let mut worst: Option<(usize, f64)> = None;
            for i in 0..n {
                if support[i] {
                    continue;
                }
                let grad = 2.0 * (0..n).map(|j| gram(i, j) * lambda[j]).sum::<f64>() - 2.0 * b[i];
                let viol = mu - grad; // entering i helps when grad < mu
                if viol > ZERO && worst.map_or(true, |(_, w)| viol > w) {
                    worst = Some((i, viol));
                }
            }
            match worst {
                None => {
                    let total: f64 = lambda.iter().sum();
                    for w in lambda.iter_mut() {
                        *w /= total;
                    }
                    return Ok((lambda, round + 1));
                }
                Some((i, _)) => support[i] = true,
            }
        } else {
            // clip the step toward the stationary point at the first weight
            // reaching zero, and drop that weight from the support
            let mut alpha = 1.0f64;
            let mut blocker = None;
            for &i in &idx {
                if target[i] < -ZERO && lambda[i] > target[i] {
                    let a_i = lambda[i] / (lambda[i] - target[i]);
                    if a_i < alpha {
                        alpha = a_i;
                        blocker = Some(i);
                    }
                }
            }
            for &i in &idx {
                lambda[i] += alpha * (target[i] - lambda[i]);
                lambda[i] = lambda[i].max(0.0);
            }
            if let Some(i) = blocker {
                lambda[i] = 0.0;
                support[i] = false;
            } else {
                return Err(DominanceError::ProjectionFailed(
                    "active-set step made no progress".into(),
                ));
            }
        }
    }
    Err(DominanceError::ProjectionFailed("active-set iteration cap reached".into()))
}

/// Gaussian elimination with partial pivoting for the tiny KKT systems.
fn solve_linear(mut a: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for s in col..n {
                    a[r][s] -= f * a[col][s];
                }
                rhs[r] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut v = rhs[r];
        for s in r + 1..n {
            v -= a[r][s] * x[s];
        }
        x[r] = v / a[r][r];
    }
    Some(x)
}
