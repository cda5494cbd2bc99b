//! Dominance repair: given an incoherent forecast, find a probability whose
//! score strictly beats it at every outcome.
//!
//! The pipeline realizes the constructive direction of the repair theory:
//! a convex combination of sampled scores dominating the forecast's score is
//! pushed to the positive-facing boundary by the product-of-coordinates
//! maximizer, and the sample points nearest that boundary point are scanned
//! for an actual dominating score. When the scan keeps failing under grid
//! refinement, that is evidence the rule sits in the no-repair regime, and
//! the witness builders construct the certified counterexamples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::{validate_probability, CoherenceError, Credence, Probability, COHERENCE_TOL};
use crate::ereal::extended_dot;
use crate::geometry::{
    build_sample, density_gap, find_hull_dominator, orthant_argmax, DensityGapConfig, GapReport,
    GeometryError, NormalCertificate,
};
use crate::propriety::PropError;
use crate::rules::{RuleError, ScoringRule};
use crate::score::{expected_score, ScoreError, ScoreVector};
use crate::simplex::sample_simplex;

mod condition_b;
mod projection;
mod witness;

pub use condition_b::{check_condition_b, ConditionBConfig, ConditionBReport, OverallVerdict, PathVerdict};
pub use projection::brier_projection;
pub use witness::{build_witness, WitnessBundle, WitnessCase, WitnessConfig, WitnessData, WitnessVerification};

#[derive(Debug, Error)]
pub enum DominanceError {
    #[error("credence is already coherent; nothing to repair")]
    Coherent,
    #[error("no dominating grid score found up to resolution {max_resolution}; this is evidence (not proof) of a repair failure regime")]
    NoDominator { max_resolution: usize, gap_evidence: Box<GapReport> },
    #[error("quasi-strict premise fails: {0}")]
    PremiseViolated(String),
    #[error("no witness: {0}")]
    NoWitness(String),
    #[error("projection did not strictly dominate: {0}")]
    ProjectionFailed(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error(transparent)]
    Coherence(#[from] CoherenceError),
}

#[derive(Clone, Debug)]
pub struct RepairConfig {
    pub start_resolution: usize,
    pub max_resolution: usize,
    /// Required per-outcome domination margin of the final score.
    pub margin: f64,
    /// Interior lattice used for the quasi-strict premise probes.
    pub probe_resolution: usize,
    pub orthant_iterations: usize,
    pub orthant_tol: f64,
}

impl Default for RepairConfig {
    fn default() -> Self {
        Self {
            start_resolution: 100,
            max_resolution: 3200,
            margin: 1e-6,
            probe_resolution: 24,
            orthant_iterations: 200,
            orthant_tol: 1e-9,
        }
    }
}

/// How the dominating probability was found.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum RepairTrace {
    Pipeline(PipelineTrace),
    Projection { iterations: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub resolution: usize,
    /// Convex combination of sampled scores clearing the forecast score.
    pub hull_dominator: Vec<f64>,
    pub hull_weights: Vec<(usize, f64)>,
    /// Point between the forecast score and the hull dominator.
    pub intermediate: Vec<f64>,
    /// Positive-facing boundary point returned by the product maximizer.
    pub orthant_point: Vec<f64>,
    pub orthant_certificate: NormalCertificate,
    /// Sample points tried in order of distance before one dominated.
    pub scanned: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DominatorResult {
    pub rule: String,
    pub credence_values: Vec<f64>,
    /// Score of the incoherent forecast under the extended rule.
    pub z0: ScoreVector,
    /// Weights of the dominating probability.
    pub weights: Vec<f64>,
    /// Its score, strictly above `z0` everywhere.
    pub score: Vec<f64>,
    /// Per-outcome margins; `None` where `z0` is infinite (unbounded margin).
    pub margins: Vec<Option<f64>>,
    pub trace: RepairTrace,
}

impl DominatorResult {
    /// Re-verifies the result from scratch: the probability is coherent and
    /// the re-evaluated scores strictly dominate, independently of the trace.
    pub fn reverify(&self, rule: &dyn ScoringRule) -> Result<f64, DominanceError> {
        let p = Probability::from_weights(rule.space().clone(), self.weights.clone())?;
        let s = rule.score_probability(&p)?;
        let fresh = s.finite_entries().ok_or_else(|| {
            DominanceError::ProjectionFailed("dominating score has infinite entries".into())
        })?;
        let mut min_margin = f64::INFINITY;
        for (a, b) in fresh.iter().zip(self.z0.entries()) {
            match b.as_finite() {
                Some(z) => min_margin = min_margin.min(a - z),
                None => {}
            }
        }
        if min_margin <= 0.0 {
            return Err(DominanceError::ProjectionFailed(format!(
                "re-verified margin {min_margin} is not positive"
            )));
        }
        Ok(min_margin)
    }
}

fn assemble_result(
    rule: &dyn ScoringRule,
    c: &Credence,
    z0: &ScoreVector,
    p: &Probability,
    trace: RepairTrace,
) -> Result<DominatorResult, DominanceError> {
    let score = rule
        .score_probability(p)?
        .finite_entries()
        .ok_or_else(|| DominanceError::ProjectionFailed("dominating score not finite".into()))?;
    let margins = score
        .iter()
        .zip(z0.entries())
        .map(|(a, b)| b.as_finite().map(|z| a - z))
        .collect();
    Ok(DominatorResult {
        rule: rule.name(),
        credence_values: c.values().to_vec(),
        z0: z0.clone(),
        weights: p.weights().to_vec(),
        score,
        margins,
        trace,
    })
}

/// Finds a probability whose score strictly dominates the score of the
/// incoherent credence `c` under a rule extended to all credences.
///
/// The pipeline per attempt: build the score sample, find a hull
/// combination clearing `z0`, move halfway toward it, push to the
/// positive-facing boundary with the product maximizer, then scan sample
/// points outward from that boundary point until one strictly dominates
/// with the configured margin. Failures refine the grid (doubling) up to
/// `max_resolution`; exhaustion is reported together with a density-gap
/// scan as [`DominanceError::NoDominator`].
pub fn find_dominating_probability(
    rule: &dyn ScoringRule,
    c: &Credence,
    config: &RepairConfig,
) -> Result<DominatorResult, DominanceError> {
    if validate_probability(c, COHERENCE_TOL).is_ok() {
        return Err(DominanceError::Coherent);
    }
    let z0 = rule.score_credence(c)?;

    // quasi-strict premise: every probe must expect strictly more from its
    // own score than from z0
    let probes = sample_simplex(rule.space(), config.probe_resolution, true);
    for q in &probes {
        let cross = extended_dot(q.weights(), z0.entries());
        let own = expected_score(q, &rule.score_probability(q)?)?;
        if cross.total_cmp(&own) != std::cmp::Ordering::Less {
            return Err(DominanceError::PremiseViolated(format!(
                "E_q z0 = {cross} does not trail E_q s(q) = {own} at q = {:?}",
                q.weights()
            )));
        }
    }

    let mut k = config.start_resolution;
    loop {
        let sample = build_sample(rule, k, 0)?;
        match attempt(rule, c, &z0, &sample, config) {
            Ok(result) => return Ok(result),
            Err(
                DominanceError::Geometry(GeometryError::Infeasible(_))
                | DominanceError::Geometry(GeometryError::InfeasibleOrthant)
                | DominanceError::NoDominator { .. },
            ) => {
                if k >= config.max_resolution {
                    let gap = density_gap(
                        &sample,
                        rule.space(),
                        &DensityGapConfig { direction_count: 400, ..Default::default() },
                    )?;
                    return Err(DominanceError::NoDominator {
                        max_resolution: k,
                        gap_evidence: Box::new(gap),
                    });
                }
                k = (k * 2).min(config.max_resolution);
            }
            Err(other) => return Err(other),
        }
    }
}

fn attempt(
    rule: &dyn ScoringRule,
    c: &Credence,
    z0: &ScoreVector,
    sample: &crate::geometry::FiniteScoreSample,
    config: &RepairConfig,
) -> Result<DominatorResult, DominanceError> {
    // the uniform forecast bounds the orthant-hull intersection; a proper
    // rule satisfies this on every sample
    let u = Probability::uniform(rule.space().clone());
    let own = expected_score(&u, &rule.score_probability(&u)?)?
        .as_finite()
        .ok_or_else(|| DominanceError::PremiseViolated("uniform self-score is infinite".into()))?;
    let worst = sample
        .scores()
        .map(|w| crate::ereal::dot(u.weights(), w))
        .fold(f64::NEG_INFINITY, f64::max);
    if worst > own + 1e-7 {
        return Err(DominanceError::PremiseViolated(format!(
            "sampled score beats the uniform self-score: {worst} > {own}"
        )));
    }

    let hull = find_hull_dominator(sample, z0, config.margin, config.probe_resolution)?;

    // halfway toward the hull dominator on finite entries, one unit below it
    // on infinite ones
    let z1: Vec<f64> = z0
        .entries()
        .iter()
        .zip(&hull.point)
        .map(|(z, h)| match z.as_finite() {
            Some(v) => 0.5 * (v + h),
            None => h - 1.0,
        })
        .collect();

    let vertices: Vec<Vec<f64>> = sample.scores().map(|s| s.to_vec()).collect();
    let orthant =
        orthant_argmax(&vertices, &z1, config.orthant_iterations, config.orthant_tol)?;

    // scan sample points outward from the boundary point
    let mut order: Vec<usize> = (0..sample.points.len()).collect();
    let dist = |i: usize| -> f64 {
        sample.points[i]
            .score
            .iter()
            .zip(&orthant.point)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    };
    order.sort_by(|&a, &b| dist(a).total_cmp(&dist(b)));
    for (scanned, &i) in order.iter().enumerate() {
        let candidate = &sample.points[i];
        let dominates = candidate.score.iter().zip(z0.entries()).all(|(s, z)| match z.as_finite()
        {
            Some(v) => *s >= v + config.margin,
            None => true,
        });
        if dominates {
            let p = Probability::from_weights(rule.space().clone(), candidate.weights.clone())?;
            let trace = RepairTrace::Pipeline(PipelineTrace {
                resolution: sample.resolution,
                hull_dominator: hull.point.clone(),
                hull_weights: hull.weights.clone(),
                intermediate: z1,
                orthant_point: orthant.point.clone(),
                orthant_certificate: orthant.certificate.clone(),
                scanned: scanned + 1,
            });
            let result = assemble_result(rule, c, z0, &p, trace)?;
            result.reverify(rule)?;
            return Ok(result);
        }
    }
    Err(DominanceError::NoDominator {
        max_resolution: sample.resolution,
        gap_evidence: Box::new(GapReport {
            rule: sample.rule.clone(),
            resolution: sample.resolution,
            directions_scanned: 0,
            tie_tolerance_scale: 0.0,
            max_gap: 0.0,
            witness: None,
            faces: Vec::new(),
        }),
    })
}
