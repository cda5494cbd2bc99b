//! Positive-normal search: is a point on the positive-facing boundary of
//! the sampled hull?

use super::lp::{solve, LpOp, LpOutcome, LpProblem, LpRow};
use super::{FiniteScoreSample, GeometryError, NormalCertificate};
use crate::ereal::dot;

/// Cap on normal anisotropy: components are searched in `[1, cap]`.
///
/// Without a cap, arc endpoints and similar tangent points acquire spurious
/// certificates at any finite resolution, because a wildly lopsided normal
/// can slip past the first few sample points. The cap makes "no positive
/// normal at this resolution" a decidable verdict.
pub const DEFAULT_NORMAL_CAP: f64 = 100.0;

/// Searches for `v` with components in `[1, cap]` and
/// `<v, w - z> <= tol` for every sampled score `w`.
///
/// Returns `None` when no such normal exists for the sampled hull, i.e. `z`
/// is not positive-facing at this resolution.
pub fn positive_normal(
    z: &[f64],
    sample: &FiniteScoreSample,
    tol: f64,
) -> Result<Option<NormalCertificate>, GeometryError> {
    positive_normal_with_cap(z, sample, tol, DEFAULT_NORMAL_CAP)
}

pub fn positive_normal_with_cap(
    z: &[f64],
    sample: &FiniteScoreSample,
    tol: f64,
    cap: f64,
) -> Result<Option<NormalCertificate>, GeometryError> {
    if sample.points.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    let n = sample.dim();
    if z.len() != n {
        return Err(GeometryError::DimensionMismatch { got: z.len(), want: n });
    }

    // Cutting-plane loop: solve a small min-max-violation program on an
    // active subset, then scan the full sample for violated rows. The active
    // program relaxes the full one, so its infeasibility is conclusive.
    let ones = vec![1.0; n];
    let seed = sample
        .scores()
        .enumerate()
        .max_by(|a, b| dot(&ones, a.1).total_cmp(&dot(&ones, b.1)))
        .map(|(i, _)| i)
        .expect("non-empty sample");
    let mut active: Vec<usize> = vec![seed];

    loop {
        let v = match solve_active(z, sample, &active, n, cap, tol) {
            Some(v) => v,
            None => return Ok(None),
        };
        // worst violation over the full sample
        let at_z = dot(&v, z);
        let mut worst = f64::NEG_INFINITY;
        let mut worst_idx = 0;
        for (i, w) in sample.scores().enumerate() {
            let viol = dot(&v, w) - at_z;
            if viol > worst {
                worst = viol;
                worst_idx = i;
            }
        }
        if worst <= tol {
            let cert = NormalCertificate::from_direction(z, &v, sample, tol)?;
            return Ok(Some(cert));
        }
        if active.contains(&worst_idx) {
            // numerically stuck: the active program thinks this row is fine
            return Ok(None);
        }
        active.push(worst_idx);
        if active.len() > sample.points.len() {
            return Ok(None);
        }
    }
}

/// Minimizes the worst constraint value `t = max <1 + u, w - z>` over the
/// active rows, with `0 <= u <= cap - 1`. Returns the candidate normal
/// `v = 1 + u` when the minimum is non-positive enough to be worth scanning,
/// `None` when even the relaxation cannot reach zero.
fn solve_active(
    z: &[f64],
    sample: &FiniteScoreSample,
    active: &[usize],
    n: usize,
    cap: f64,
    tol: f64,
) -> Option<Vec<f64>> {
    // variables: u_0..u_{n-1}, t_plus, t_minus
    let nvars = n + 2;
    let mut rows = Vec::with_capacity(active.len() + n);
    for &i in active {
        let w = &sample.points[i].score;
        let mut coeffs = vec![0.0; nvars];
        let mut base = 0.0;
        for j in 0..n {
            let d = w[j] - z[j];
            coeffs[j] = d;
            base += d;
        }
        coeffs[n] = -1.0;
        coeffs[n + 1] = 1.0;
        rows.push(LpRow { coeffs, op: LpOp::Le, rhs: -base });
    }
    for j in 0..n {
        let mut coeffs = vec![0.0; nvars];
        coeffs[j] = 1.0;
        rows.push(LpRow { coeffs, op: LpOp::Le, rhs: cap - 1.0 });
    }
    let mut objective = vec![0.0; nvars];
    objective[n] = 1.0;
    objective[n + 1] = -1.0;

    match solve(&LpProblem { objective, rows }) {
        LpOutcome::Optimal { x, value } => {
            if value > tol {
                // even the relaxed program cannot bring all active rows
                // within tolerance, so the full program cannot either
                return None;
            }
            Some((0..n).map(|j| 1.0 + x[j]).collect())
        }
        _ => None,
    }
}
