//! Rational lattice grids over the probability simplex, and convergent paths
//! toward degenerate probabilities.

use crate::credence::Probability;
use crate::space::SampleSpace;

/// All weight tuples `(m_1/k, ..., m_n/k)` with non-negative integer parts
/// summing to `k`, in lexicographic order of the parts.
///
/// With `interior_only` set, only tuples with every part at least 1 are
/// produced (the regular probabilities); that set is empty when `k < n`.
pub fn sample_simplex(space: &SampleSpace, k: usize, interior_only: bool) -> Vec<Probability> {
    assert!(k >= 1, "grid resolution must be at least 1");
    let n = space.len();
    let min = usize::from(interior_only);
    let mut out = Vec::new();
    let mut parts = vec![0usize; n];
    fill(space, k, min, 0, k, &mut parts, &mut out);
    out
}

fn fill(
    space: &SampleSpace,
    k: usize,
    min: usize,
    idx: usize,
    remaining: usize,
    parts: &mut [usize],
    out: &mut Vec<Probability>,
) {
    let n = parts.len();
    if idx == n - 1 {
        if remaining >= min {
            parts[idx] = remaining;
            let weights: Vec<f64> = parts.iter().map(|&m| m as f64 / k as f64).collect();
            out.push(
                Probability::from_weights(space.clone(), weights)
                    .expect("lattice weights are coherent"),
            );
        }
        return;
    }
    // leave at least `min` for each later slot
    let reserve = min * (n - 1 - idx);
    if remaining < reserve {
        return;
    }
    for m in min..=remaining - reserve {
        parts[idx] = m;
        fill(space, k, min, idx + 1, remaining - m, parts, out);
    }
}

/// Points `target + t * (anchor - target)` for each `t` in `ts`, a path
/// converging to `target` as `t` shrinks.
pub fn converging_path(target: &Probability, anchor: &Probability, ts: &[f64]) -> Vec<Probability> {
    assert_eq!(target.space(), anchor.space());
    ts.iter()
        .map(|&t| {
            debug_assert!((0.0..=1.0).contains(&t));
            let weights = target
                .weights()
                .iter()
                .zip(anchor.weights())
                .map(|(a, b)| a + t * (b - a))
                .collect();
            Probability::from_weights(target.space().clone(), weights)
                .expect("convex mix of probabilities is coherent")
        })
        .collect()
}

/// `count` step sizes halving down to `1/top_index`, largest first. Feeding
/// these to [`converging_path`] gives the canonical approach paths used by
/// the limit checkers.
pub fn doubling_steps(top_index: u64, count: usize) -> Vec<f64> {
    assert!(count >= 1 && top_index >= 1);
    (0..count)
        .rev()
        .map(|i| {
            let idx = top_index as f64 / 2f64.powi(i as i32);
            1.0 / idx
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> SampleSpace {
        SampleSpace::with_outcomes(n).unwrap()
    }

    #[test]
    fn full_grid_matches_expected_points() {
        let pts = sample_simplex(&space(2), 2, false);
        let weights: Vec<_> = pts.iter().map(|p| p.weights().to_vec()).collect();
        assert_eq!(weights, vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
    }

    #[test]
    fn interior_grid_drops_the_boundary() {
        let pts = sample_simplex(&space(2), 2, true);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].weights(), &[0.5, 0.5]);
        assert!(pts[0].is_regular());
    }

    #[test]
    fn interior_grid_is_empty_when_k_below_n() {
        assert!(sample_simplex(&space(3), 2, true).is_empty());
    }

    #[test]
    fn grid_sizes_follow_compositions() {
        // C(k + n - 1, n - 1) for the full grid
        assert_eq!(sample_simplex(&space(3), 4, false).len(), 15);
        assert_eq!(sample_simplex(&space(2), 100, false).len(), 101);
        // interior count is C(k - 1, n - 1)
        assert_eq!(sample_simplex(&space(3), 4, true).len(), 3);
    }

    #[test]
    fn paths_converge_to_the_target() {
        let sp = space(2);
        let target = Probability::vertex(sp.clone(), 0);
        let anchor = Probability::uniform(sp);
        let ts = doubling_steps(8, 3);
        assert_eq!(ts, vec![0.5, 0.25, 0.125]);
        let path = converging_path(&target, &anchor, &ts);
        let d: Vec<f64> = path.iter().map(|p| p.linf_distance(&target)).collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert_eq!(path[2].weights()[1], 0.0625);
    }
}
