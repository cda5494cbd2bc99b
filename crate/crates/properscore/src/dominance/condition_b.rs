//! The aggregate condition separating the repair regimes: either some
//! expected self-score is infinite (the rule then admits no quasi-strictly
//! proper extension at all), or both the self-score limits hold at every
//! degenerate target and the finite scores are dense in the positive-facing
//! hull boundary.

use serde::{Deserialize, Serialize};

use crate::credence::Probability;
use crate::ereal::ExtendedReal;
use crate::geometry::{build_sample, density_gap, DensityGapConfig, GapReport};
use crate::propriety::check_self_score_continuity;
use crate::rules::ScoringRule;
use crate::score::expected_score;
use crate::simplex::{converging_path, doubling_steps, sample_simplex};

use super::DominanceError;

#[derive(Clone, Debug)]
pub struct ConditionBConfig {
    /// Grid scanned for infinite expected self-scores.
    pub self_score_resolution: usize,
    pub path_top_index: u64,
    pub path_points: usize,
    pub limit_tol: f64,
    pub gap_resolution: usize,
    pub gap_directions: usize,
    /// Density verdict threshold on the max gap.
    pub gap_tol: f64,
    /// Boundary-refinement ladder size for the gap sample; 0 picks
    /// `3 * gap_resolution` automatically for rules with infinite scores.
    pub boundary_refinement: usize,
}

impl Default for ConditionBConfig {
    fn default() -> Self {
        Self {
            self_score_resolution: 200,
            path_top_index: 10_000,
            path_points: 8,
            limit_tol: 1e-3,
            gap_resolution: 500,
            gap_directions: 1000,
            gap_tol: 0.15,
            boundary_refinement: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathVerdict {
    pub target_weights: Vec<f64>,
    pub limit: Option<f64>,
    pub self_score: ExtendedReal,
    pub holds: bool,
    pub gap: Option<f64>,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    Holds,
    /// Some expected self-score is infinite; no extension can be
    /// quasi-strictly proper, so the condition holds vacuously.
    HoldsByInfiniteSelfScore,
    FailsSelfScoreLimit,
    FailsDensity,
    FailsBoth,
}

impl OverallVerdict {
    pub fn holds(self) -> bool {
        matches!(self, Self::Holds | Self::HoldsByInfiniteSelfScore)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionBReport {
    pub rule: String,
    /// Weights of a grid probability with infinite expected self-score.
    pub infinite_self_score: Option<Vec<f64>>,
    pub limit_paths: Vec<PathVerdict>,
    pub self_score_limits_hold: bool,
    pub gap: GapReport,
    pub gap_tol: f64,
    pub density_holds: bool,
    pub overall: OverallVerdict,
}

pub fn check_condition_b(
    rule: &dyn ScoringRule,
    config: &ConditionBConfig,
) -> Result<ConditionBReport, DominanceError> {
    let space = rule.space().clone();

    // the vacuous branch: an infinite expected self-score anywhere
    let mut infinite_self_score = None;
    for p in sample_simplex(&space, config.self_score_resolution, false) {
        let own = expected_score(&p, &rule.score_probability(&p)?)?;
        if !own.is_finite() {
            infinite_self_score = Some(p.weights().to_vec());
            break;
        }
    }

    // self-score limits along canonical paths to every degenerate vertex,
    // finite-score targets included
    let anchor = Probability::uniform(space.clone());
    let steps = doubling_steps(config.path_top_index, config.path_points);
    let mut limit_paths = Vec::with_capacity(space.len());
    for outcome in 0..space.len() {
        let target = Probability::vertex(space.clone(), outcome);
        let path = converging_path(&target, &anchor, &steps);
        let verdict = match check_self_score_continuity(rule, &target, &path, config.limit_tol) {
            Ok(r) => PathVerdict {
                target_weights: r.target_weights,
                limit: Some(r.limit),
                self_score: r.self_score,
                holds: r.holds,
                gap: r.gap,
                note: None,
            },
            Err(e) => PathVerdict {
                target_weights: target.weights().to_vec(),
                limit: None,
                self_score: expected_score(&target, &rule.score_probability(&target)?)?,
                holds: false,
                gap: None,
                note: Some(e.to_string()),
            },
        };
        limit_paths.push(verdict);
    }
    let self_score_limits_hold = limit_paths.iter().all(|v| v.holds);

    // density of the finite scores in the positive-facing hull boundary;
    // rules with infinite scores get the geometric ladder so the tails of
    // score space are sampled at bounded spacing
    let refinement = if config.boundary_refinement > 0 {
        config.boundary_refinement
    } else if rule.finite_on_probabilities() {
        0
    } else {
        3 * config.gap_resolution
    };
    let sample = build_sample(rule, config.gap_resolution, refinement)?;
    let gap = density_gap(
        &sample,
        &space,
        &DensityGapConfig { direction_count: config.gap_directions, ..Default::default() },
    )?;
    let density_holds = gap.max_gap <= config.gap_tol;

    let overall = if infinite_self_score.is_some() {
        OverallVerdict::HoldsByInfiniteSelfScore
    } else {
        match (self_score_limits_hold, density_holds) {
            (true, true) => OverallVerdict::Holds,
            (false, true) => OverallVerdict::FailsSelfScoreLimit,
            (true, false) => OverallVerdict::FailsDensity,
            (false, false) => OverallVerdict::FailsBoth,
        }
    };

    Ok(ConditionBReport {
        rule: rule.name(),
        infinite_self_score,
        limit_paths,
        self_score_limits_hold,
        gap,
        gap_tol: config.gap_tol,
        density_holds,
        overall,
    })
}
