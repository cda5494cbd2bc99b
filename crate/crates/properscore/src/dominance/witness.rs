//! Counterexample witnesses for the two repair-failure regimes.
//!
//! A rule can defeat repair in two ways: its expected self-score can jump
//! at a degenerate probability (the limit along interior paths undershoots
//! the self-score), or its finite scores can leave a gap in the
//! positive-facing boundary of their hull. Each case yields a constant fill
//! which, assigned to every incoherent credence, is quasi-strictly proper
//! yet never strictly dominated by any score — a certified witness that
//! repair fails.

use serde::{Deserialize, Serialize};

use crate::credence::Probability;
use crate::ereal::{extended_dot, ExtendedReal};
use crate::geometry::{build_sample, density_gap, safe_delta, DensityGapConfig};
use crate::propriety::check_self_score_continuity;
use crate::rules::ScoringRule;
use crate::score::{expected_score, ScoreVector};
use crate::simplex::{converging_path, doubling_steps, sample_simplex};

use super::DominanceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// Expected self-score limit jumps at a degenerate probability.
    SelfScoreLimit,
    /// Finite scores are not dense in the positive-facing hull boundary.
    DensityGap,
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    /// Grid used for the two verification scans.
    pub verify_resolution: usize,
    /// Quasi-strict margin every grid probability must keep over the fill.
    pub required_margin: f64,
    /// Path to the degenerate target ends at step 1/path_top_index.
    pub path_top_index: u64,
    pub path_points: usize,
    pub limit_tol: f64,
    pub gap_resolution: usize,
    pub gap_directions: usize,
    /// Gaps below this are treated as discretization noise.
    pub min_gap: f64,
    pub delta_factor: f64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            verify_resolution: 2000,
            required_margin: 1e-6,
            path_top_index: 10_000,
            path_points: 8,
            limit_tol: 1e-3,
            gap_resolution: 500,
            gap_directions: 1000,
            min_gap: 0.05,
            delta_factor: 0.4,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum WitnessData {
    SelfScoreLimit {
        target_weights: Vec<f64>,
        self_score: f64,
        limit: f64,
        /// Scaling factor applied to the target's score; any value in the
        /// open interval works, the midpoint is used.
        alpha: f64,
        alpha_interval: (f64, f64),
    },
    DensityGap {
        /// Point of the positive-facing boundary far from every score.
        witness_point: Vec<f64>,
        /// Positive normal at the witness, rescaled to simplex weights.
        normal_weights: Vec<f64>,
        /// Radius of the sup-norm ball around the witness avoiding scores.
        epsilon: f64,
        /// Safe radius below which nothing dominates from outside the ball.
        delta: f64,
        gap: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessVerification {
    pub resolution: usize,
    /// Least finite margin `E_q s(q) - <q, fill>` over the grid; quasi-strict
    /// propriety of the extension needs it positive.
    pub quasi_strict_min_margin: f64,
    /// Grid probabilities whose score strictly dominates the fill; a sound
    /// witness has none.
    pub dominating_grid_points: usize,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub case: WitnessCase,
    pub rule: String,
    /// The constant score assigned to every incoherent credence.
    pub fill: ScoreVector,
    pub data: WitnessData,
    pub verification: WitnessVerification,
}

/// Builds and verifies the witness for the requested failure case, or
/// reports [`DominanceError::NoWitness`] when the rule does not fail it.
pub fn build_witness(
    case: WitnessCase,
    rule: &dyn ScoringRule,
    config: &WitnessConfig,
) -> Result<WitnessBundle, DominanceError> {
    match case {
        WitnessCase::SelfScoreLimit => self_score_limit_witness(rule, config),
        WitnessCase::DensityGap => density_gap_witness(rule, config),
    }
}

fn self_score_limit_witness(
    rule: &dyn ScoringRule,
    config: &WitnessConfig,
) -> Result<WitnessBundle, DominanceError> {
    let space = rule.space().clone();
    let anchor = Probability::uniform(space.clone());
    let steps = doubling_steps(config.path_top_index, config.path_points);

    for outcome in 0..space.len() {
        let target = Probability::vertex(space.clone(), outcome);
        let path = converging_path(&target, &anchor, &steps);
        let report = match check_self_score_continuity(rule, &target, &path, config.limit_tol) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if report.holds {
            continue;
        }
        let Some(self_score) = report.self_score.as_finite() else { continue };
        let limit = report.limit;
        // the scaling construction needs negative scores with the limit
        // strictly below the self-score
        if self_score >= 0.0 || limit >= self_score {
            continue;
        }
        let hi = limit / self_score;
        if hi <= 1.0 {
            continue;
        }
        let alpha = 0.5 * (1.0 + hi);
        let target_score = rule.score_probability(&target)?;
        let fill_entries: Vec<ExtendedReal> =
            target_score.entries().iter().map(|e| e.scale(alpha)).collect();
        let fill = ScoreVector::new(space.clone(), fill_entries).expect("entry per outcome");

        let verification = verify_fill(rule, &fill, config)?;
        return Ok(WitnessBundle {
            case: WitnessCase::SelfScoreLimit,
            rule: rule.name(),
            fill,
            data: WitnessData::SelfScoreLimit {
                target_weights: target.weights().to_vec(),
                self_score,
                limit,
                alpha,
                alpha_interval: (1.0, hi),
            },
            verification,
        });
    }
    Err(DominanceError::NoWitness(format!(
        "self-score limits of `{}` hold at every degenerate target",
        rule.name()
    )))
}

fn density_gap_witness(
    rule: &dyn ScoringRule,
    config: &WitnessConfig,
) -> Result<WitnessBundle, DominanceError> {
    let space = rule.space().clone();
    // rules with infinite scores get the boundary ladder, otherwise the
    // stretched tails of score space read as spurious gaps
    let refinement =
        if rule.finite_on_probabilities() { 0 } else { 3 * config.gap_resolution };
    let sample = build_sample(rule, config.gap_resolution, refinement)?;
    let gap_config = DensityGapConfig {
        direction_count: config.gap_directions,
        ..Default::default()
    };
    let report = density_gap(&sample, &space, &gap_config)?;
    if report.max_gap < config.min_gap {
        return Err(DominanceError::NoWitness(format!(
            "max density gap {} of `{}` is below the witness floor {}",
            report.max_gap,
            rule.name(),
            config.min_gap
        )));
    }
    let witness = report.witness.expect("positive gap carries a witness");
    let z0 = witness.point.clone();
    let (lo, hi) = &witness.bridge;

    // on a plane the bridge edge determines its supporting direction; use it
    // when it is positive, otherwise keep the probe direction
    let normal_direction: Vec<f64> = if lo.len() == 2 {
        let perp = [hi[1] - lo[1], lo[0] - hi[0]];
        let oriented = if perp[0] + perp[1] > 0.0 { perp } else { [-perp[0], -perp[1]] };
        if oriented.iter().all(|&v| v > 0.0) {
            let total: f64 = oriented.iter().sum();
            oriented.iter().map(|v| v / total).collect()
        } else {
            witness.direction.clone()
        }
    } else {
        witness.direction.clone()
    };
    let p = Probability::from_weights(space.clone(), normal_direction)?;

    let epsilon = sample.linf_distance_to(&z0);
    let delta = safe_delta(&p, epsilon, config.delta_factor)?;
    // a point strictly dominated by the witness, well inside the safe ball
    let fill_values: Vec<f64> = z0.iter().map(|v| v - 0.5 * delta).collect();
    let fill = ScoreVector::from_f64(space.clone(), &fill_values).expect("entry per outcome");

    let verification = verify_fill(rule, &fill, config)?;
    Ok(WitnessBundle {
        case: WitnessCase::DensityGap,
        rule: rule.name(),
        fill,
        data: WitnessData::DensityGap {
            witness_point: z0,
            normal_weights: p.weights().to_vec(),
            epsilon,
            delta,
            gap: report.max_gap,
        },
        verification,
    })
}

/// The two-part soundness scan shared by both cases: the extension by the
/// fill is quasi-strictly proper on the grid, and no grid score strictly
/// dominates the fill. Rules with infinite scores get extra probabilities
/// laddered toward the vertices, where the lattice alone would leave the
/// deep tails of score space unexplored.
fn verify_fill(
    rule: &dyn ScoringRule,
    fill: &ScoreVector,
    config: &WitnessConfig,
) -> Result<WitnessVerification, DominanceError> {
    let mut grid = sample_simplex(rule.space(), config.verify_resolution, false);
    if !rule.finite_on_probabilities() {
        let anchor = Probability::uniform(rule.space().clone());
        let ts = crate::geometry::geometric_ladder(0.3, 1e-6, 3 * config.verify_resolution);
        for outcome in 0..rule.space().len() {
            let vertex = Probability::vertex(rule.space().clone(), outcome);
            grid.extend(converging_path(&vertex, &anchor, &ts));
        }
    }
    let mut min_margin = f64::INFINITY;
    let mut dominating = 0usize;
    let mut quasi_ok = true;
    for q in &grid {
        let s = rule.score_probability(q)?;
        let own = expected_score(q, &s)?;
        let cross = extended_dot(q.weights(), fill.entries());
        match (own.as_finite(), cross.as_finite()) {
            (Some(a), Some(b)) => {
                let margin = a - b;
                min_margin = min_margin.min(margin);
                if margin <= config.required_margin {
                    quasi_ok = false;
                }
            }
            (Some(_), None) => {}
            (None, _) => quasi_ok = false,
        }
        if s.strictly_dominates(fill) {
            dominating += 1;
        }
    }
    Ok(WitnessVerification {
        resolution: config.verify_resolution,
        quasi_strict_min_margin: min_margin,
        dominating_grid_points: dominating,
        verified: quasi_ok && dominating == 0,
    })
}
