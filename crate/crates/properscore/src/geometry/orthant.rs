//! Product-of-coordinates maximization over a sampled hull.
//!
//! Maximizes `sum_i ln(z_i - base_i)` over convex combinations of a finite
//! vertex list, restricted to the open orthant above `base`. The gradient at
//! the maximizer is a strictly positive normal to the hull there, which is
//! what certifies the point as positive-facing. Conditional-gradient steps
//! keep the iterate a convex combination; pairwise steps (moving weight from
//! the worst active vertex to the best overall one) avoid the zig-zag stall
//! of plain steps near faces.

use serde::{Deserialize, Serialize};

use crate::ereal::dot;

use super::lp::{solve, LpOp, LpOutcome, LpProblem, LpRow};
use super::{FiniteScoreSample, GeometryError, NormalCertificate, SamplePoint};

const DOMAIN_NUDGE: f64 = 1e-9;
const WEIGHT_FLOOR: f64 = 1e-15;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrthantResult {
    /// The maximizer over the sampled hull.
    pub point: Vec<f64>,
    /// Gradient direction at the maximizer, certified against the vertices.
    pub certificate: NormalCertificate,
    /// Objective value per iteration; non-decreasing by construction.
    pub objective_trace: Vec<f64>,
    /// Sparse convex weights over vertex indices.
    pub weights: Vec<(usize, f64)>,
    pub iterations: usize,
    pub final_gap: f64,
}

/// Maximizes the log-product of margins over convex combinations of
/// `vertices`, above `base`.
///
/// Errors with [`GeometryError::InfeasibleOrthant`] when no convex
/// combination strictly dominates `base` (checked by a max-margin program
/// before iterating).
pub fn orthant_argmax(
    vertices: &[Vec<f64>],
    base: &[f64],
    iterations: usize,
    tol: f64,
) -> Result<OrthantResult, GeometryError> {
    if vertices.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    let n = base.len();
    if vertices.iter().any(|v| v.len() != n) {
        return Err(GeometryError::DimensionMismatch {
            got: vertices.iter().map(|v| v.len()).find(|&l| l != n).unwrap_or(n),
            want: n,
        });
    }

    // entries tied with a vertex coordinate would put ln at a singularity
    let mut base = base.to_vec();
    for i in 0..n {
        if vertices.iter().any(|v| v[i] == base[i]) {
            base[i] -= DOMAIN_NUDGE;
        }
    }

    // feasible interior start: the combination maximizing its least margin
    let mut weights = max_margin_start(vertices, &base, n)?;
    let mut x = combine(vertices, &weights, n);

    let objective = |x: &[f64]| -> f64 { x.iter().zip(&base).map(|(a, b)| (a - b).ln()).sum() };
    let mut trace = vec![objective(&x)];
    let mut grad = vec![0.0; n];
    let mut final_gap = f64::INFINITY;
    let mut iters_used = 0;

    for iter in 0..iterations {
        iters_used = iter + 1;
        for i in 0..n {
            grad[i] = 1.0 / (x[i] - base[i]);
        }
        // best vertex overall and worst active vertex
        let toward = argmax_by(vertices.iter().map(|v| dot(&grad, v))).expect("non-empty");
        let gap = dot(&grad, &vertices[toward]) - dot(&grad, &x);
        final_gap = gap;
        if gap < tol {
            break;
        }
        let away = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w > WEIGHT_FLOOR)
            .min_by(|a, b| dot(&grad, &vertices[a.0]).total_cmp(&dot(&grad, &vertices[b.0])))
            .map(|(i, _)| i)
            .expect("weights stay a convex combination");
        if toward == away {
            break;
        }

        // pairwise direction, capped by the away weight and the orthant wall
        let dir: Vec<f64> =
            (0..n).map(|i| vertices[toward][i] - vertices[away][i]).collect();
        let mut hi = weights[away];
        for i in 0..n {
            if dir[i] < 0.0 {
                hi = hi.min(0.999_999 * (x[i] - base[i]) / -dir[i]);
            }
        }
        if hi <= 0.0 {
            break;
        }
        let step = line_search(&x, &base, &dir, hi);
        if step <= 0.0 {
            break;
        }

        weights[toward] += step;
        weights[away] -= step;
        if weights[away] < WEIGHT_FLOOR {
            weights[away] = 0.0;
        }
        for i in 0..n {
            x[i] += step * dir[i];
        }
        // convex combinations drift under repeated updates; rebuild exactly
        if iter % 64 == 63 {
            renormalize(&mut weights);
            x = combine(vertices, &weights, n);
        }
        let value = objective(&x);
        debug_assert!(
            value >= trace.last().unwrap() - 1e-9,
            "objective decreased: {} -> {}",
            trace.last().unwrap(),
            value
        );
        trace.push(value);
    }

    for i in 0..n {
        grad[i] = 1.0 / (x[i] - base[i]);
    }
    let scores = FiniteScoreSample {
        rule: String::new(),
        resolution: 0,
        points: vertices
            .iter()
            .map(|v| SamplePoint { weights: Vec::new(), score: v.clone() })
            .collect(),
        infinite: Vec::new(),
    };
    let cert_tol = 10.0 * tol * (1.0 + max_range(&x, &base));
    let certificate = NormalCertificate::from_direction(&x, &grad, &scores, cert_tol)?;

    let sparse: Vec<(usize, f64)> =
        weights.iter().cloned().enumerate().filter(|(_, w)| *w > WEIGHT_FLOOR).collect();
    Ok(OrthantResult {
        point: x,
        certificate,
        objective_trace: trace,
        weights: sparse,
        iterations: iters_used,
        final_gap,
    })
}

fn max_range(x: &[f64], base: &[f64]) -> f64 {
    x.iter().zip(base).fold(0.0f64, |m, (a, b)| m.max(a - b))
}

fn argmax_by(values: impl Iterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.enumerate() {
        if best.map_or(true, |(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}

fn combine(vertices: &[Vec<f64>], weights: &[f64], n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for (w, v) in weights.iter().zip(vertices) {
        if *w > 0.0 {
            for i in 0..n {
                x[i] += w * v[i];
            }
        }
    }
    x
}

fn renormalize(weights: &mut [f64]) {
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
}

/// Exact-ish line search for the concave 1-d restriction: bisection on the
/// derivative `sum_i d_i / (x_i + t d_i - base_i)`.
fn line_search(x: &[f64], base: &[f64], dir: &[f64], hi: f64) -> f64 {
    let slope = |t: f64| -> f64 {
        x.iter()
            .zip(base)
            .zip(dir)
            .map(|((a, b), d)| d / (a + t * d - b))
            .sum()
    };
    if slope(0.0) <= 0.0 {
        return 0.0;
    }
    if slope(hi) >= 0.0 {
        return hi;
    }
    let (mut lo, mut up) = (0.0f64, hi);
    for _ in 0..60 {
        let mid = 0.5 * (lo + up);
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            up = mid;
        }
    }
    0.5 * (lo + up)
}

/// Largest uniform margin by which a convex combination can clear `base`;
/// the maximizing weights are the starting iterate.
fn max_margin_start(
    vertices: &[Vec<f64>],
    base: &[f64],
    n: usize,
) -> Result<Vec<f64>, GeometryError> {
    // variables: lambda_0..lambda_{N-1}, t
    let npts = vertices.len();
    let mut rows = Vec::with_capacity(n + 1);
    let mut ones = vec![1.0; npts];
    ones.push(0.0);
    rows.push(LpRow { coeffs: ones, op: LpOp::Eq, rhs: 1.0 });
    for i in 0..n {
        let mut coeffs: Vec<f64> = vertices.iter().map(|v| v[i]).collect();
        coeffs.push(-1.0);
        rows.push(LpRow { coeffs, op: LpOp::Ge, rhs: base[i] });
    }
    let mut objective = vec![0.0; npts];
    objective.push(-1.0); // maximize t
    match solve(&LpProblem { objective, rows }) {
        LpOutcome::Optimal { x, value } => {
            let t = -value;
            if t <= 0.0 {
                return Err(GeometryError::InfeasibleOrthant);
            }
            let mut weights = x[..npts].to_vec();
            renormalize(&mut weights);
            Ok(weights)
        }
        LpOutcome::Infeasible => Err(GeometryError::InfeasibleOrthant),
        other => Err(GeometryError::SolverFailure(format!("{other:?}"))),
    }
}
