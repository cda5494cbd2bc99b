//! Geometry of the finite score set: samples of scores of probabilities,
//! support functions over them, positive-normal certificates, density-gap
//! scans of the positive-facing hull boundary, and the product-of-coordinates
//! maximizer.
//!
//! The convex hull is never materialized; every hull query is a linear
//! program or scan over the finite point list, which stays robust up to the
//! 16-outcome cap.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::Probability;
use crate::ereal::dot;
use crate::rules::{RuleError, ScoringRule};
use crate::score::ScoreVector;
use crate::simplex::{converging_path, sample_simplex};
use crate::space::SampleSpace;

pub mod density;
pub mod lp;
mod normal;
mod orthant;

pub use density::{density_gap, DensityGapConfig, FaceRecord, GapReport, GapWitness};
pub use normal::{positive_normal, positive_normal_with_cap, DEFAULT_NORMAL_CAP};
pub use orthant::{orthant_argmax, OrthantResult};

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("score sample is empty")]
    EmptySample,
    #[error("point has {got} coordinates, sample has {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("probability is not regular: outcome {outcome} has zero weight")]
    NotRegular { outcome: usize },
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("shrink factor must lie in (0,1), got {0}")]
    BadFactor(f64),
    #[error("direction must be strictly positive, component {component} is {value}")]
    BadDirection { component: usize, value: f64 },
    #[error("no convex combination of the sample dominates the base point")]
    InfeasibleOrthant,
    #[error("hull dominator infeasible: {0}")]
    Infeasible(String),
    #[error("linear program failed: {0}")]
    SolverFailure(String),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// One finite score together with the probability that produced it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplePoint {
    pub weights: Vec<f64>,
    pub score: Vec<f64>,
}

/// A probability whose score has infinite entries, kept out of the sample.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InfinitePoint {
    pub weights: Vec<f64>,
    pub score: ScoreVector,
}

/// Finite approximation of the set of finite scores of probabilities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteScoreSample {
    pub rule: String,
    pub resolution: usize,
    pub points: Vec<SamplePoint>,
    pub infinite: Vec<InfinitePoint>,
}

impl FiniteScoreSample {
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, |p| p.score.len())
    }

    pub fn scores(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.points.iter().map(|p| p.score.as_slice())
    }

    /// Sup-norm diameter of the sampled scores, coordinatewise.
    pub fn linf_diameter(&self) -> f64 {
        let n = self.dim();
        let mut d = 0.0f64;
        for i in 0..n {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for p in &self.points {
                lo = lo.min(p.score[i]);
                hi = hi.max(p.score[i]);
            }
            d = d.max(hi - lo);
        }
        d
    }

    /// Smallest sup-norm distance from `x` to the sampled scores.
    pub fn linf_distance_to(&self, x: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for p in &self.points {
            let mut d = 0.0f64;
            for (a, b) in x.iter().zip(&p.score) {
                d = d.max((a - b).abs());
                if d >= best {
                    break;
                }
            }
            best = best.min(d);
        }
        best
    }
}

/// Evaluates the rule over the resolution-`k` lattice, splitting finite from
/// infinite scores.
///
/// `boundary_refinement` adds a geometric ladder of points approaching every
/// non-regular lattice vertex (point mass), which densifies score space near
/// infinite scores; zero disables it. The ladder runs from mix 0.3 down to
/// 1e-6 in `boundary_refinement` multiplicative steps.
pub fn build_sample(
    rule: &dyn ScoringRule,
    k: usize,
    boundary_refinement: usize,
) -> Result<FiniteScoreSample, GeometryError> {
    let space = rule.space();
    let mut points = Vec::new();
    let mut infinite = Vec::new();
    let mut push = |p: &Probability| -> Result<(), GeometryError> {
        let s = rule.score_probability(p)?;
        match s.finite_entries() {
            Some(score) => points.push(SamplePoint { weights: p.weights().to_vec(), score }),
            None => infinite.push(InfinitePoint { weights: p.weights().to_vec(), score: s }),
        }
        Ok(())
    };

    for p in sample_simplex(space, k, false) {
        push(&p)?;
    }
    if boundary_refinement > 0 {
        let anchor = Probability::uniform(space.clone());
        let ts = geometric_ladder(0.3, 1e-6, boundary_refinement);
        for outcome in 0..space.len() {
            let vertex = Probability::vertex(space.clone(), outcome);
            for p in converging_path(&vertex, &anchor, &ts) {
                push(&p)?;
            }
        }
    }
    Ok(FiniteScoreSample { rule: rule.name(), resolution: k, points, infinite })
}

pub(crate) fn geometric_ladder(hi: f64, lo: f64, steps: usize) -> Vec<f64> {
    let ratio = (lo / hi).powf(1.0 / steps as f64);
    (0..=steps).map(|j| hi * ratio.powi(j as i32)).collect()
}

/// Relative tie tolerance for support-face detection.
pub fn support_tie_tolerance(sigma: f64) -> f64 {
    1e-7 * (1.0 + sigma.abs())
}

/// Support function of the sample at `v`: the maximum of `<v, w>` over
/// sampled scores, along with every maximizer within the tie tolerance.
pub fn support_function(
    sample: &FiniteScoreSample,
    v: &[f64],
) -> Result<(f64, Vec<usize>), GeometryError> {
    if sample.points.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    if v.len() != sample.dim() {
        return Err(GeometryError::DimensionMismatch { got: v.len(), want: sample.dim() });
    }
    let sigma = sample.scores().map(|w| dot(v, w)).fold(f64::NEG_INFINITY, f64::max);
    let tie = support_tie_tolerance(sigma);
    let argmax = maximizers_within(sample, v, sigma, tie);
    Ok((sigma, argmax))
}

pub(crate) fn maximizers_within(
    sample: &FiniteScoreSample,
    v: &[f64],
    sigma: f64,
    tie: f64,
) -> Vec<usize> {
    sample
        .scores()
        .enumerate()
        .filter(|(_, w)| dot(v, w) >= sigma - tie)
        .map(|(i, _)| i)
        .collect()
}

/// A certified positive normal: `v` has every component at least 1 and
/// `<v, w> <= <v, point> + tol` for every sampled score `w`. The slack is
/// the least value of `<v, point - w>`; certificates are valid when it is
/// at least `-tol`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalCertificate {
    pub point: Vec<f64>,
    pub normal: Vec<f64>,
    pub slack: f64,
    pub tol: f64,
}

impl NormalCertificate {
    /// Builds a certificate from a strictly positive direction, rescaled so
    /// its least component is 1, and records the measured slack.
    pub fn from_direction(
        point: &[f64],
        direction: &[f64],
        scores: &FiniteScoreSample,
        tol: f64,
    ) -> Result<Self, GeometryError> {
        if let Some((i, &v)) = direction.iter().enumerate().find(|(_, v)| **v <= 0.0) {
            return Err(GeometryError::BadDirection { component: i, value: v });
        }
        let min = direction.iter().cloned().fold(f64::INFINITY, f64::min);
        let normal: Vec<f64> = direction.iter().map(|v| v / min).collect();
        let mut cert =
            Self { point: point.to_vec(), normal, slack: f64::INFINITY, tol };
        cert.slack = cert.verify(scores);
        Ok(cert)
    }

    /// Recomputes the slack against a sample, independently of how the
    /// certificate was produced.
    pub fn verify(&self, scores: &FiniteScoreSample) -> f64 {
        let at_point = dot(&self.normal, &self.point);
        scores
            .scores()
            .map(|w| at_point - dot(&self.normal, w))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_valid(&self) -> bool {
        self.slack >= -self.tol
    }

    /// The normal rescaled to simplex weights.
    pub fn to_probability(&self, space: SampleSpace) -> Probability {
        let sum: f64 = self.normal.iter().sum();
        let weights = self.normal.iter().map(|v| v / sum).collect();
        Probability::from_weights(space, weights).expect("positive rescaled normal is coherent")
    }
}

/// Radius within which nothing can be weakly dominated from outside the
/// epsilon ball, for points on the supporting hyperplane of a regular `p`:
/// `delta = factor * epsilon * min weight`, which lies strictly inside
/// `(0, epsilon / c)` for `c = 1 / min weight`.
pub fn safe_delta(p: &Probability, epsilon: f64, factor: f64) -> Result<f64, GeometryError> {
    if epsilon <= 0.0 {
        return Err(GeometryError::BadEpsilon(epsilon));
    }
    if !(0.0..1.0).contains(&factor) || factor == 0.0 {
        return Err(GeometryError::BadFactor(factor));
    }
    let (argmin, min) = p
        .weights()
        .iter()
        .cloned()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("probability has outcomes");
    if min == 0.0 {
        return Err(GeometryError::NotRegular { outcome: argmin });
    }
    Ok(factor * epsilon * min)
}

/// A convex combination of sampled scores that dominates a base point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HullDominator {
    pub point: Vec<f64>,
    /// Sparse convex weights over sample indices.
    pub weights: Vec<(usize, f64)>,
}

/// Finds a convex combination of the sampled scores that beats `z0` by at
/// least `margin` at every outcome with a finite `z0` entry; infinite
/// entries impose no constraint.
///
/// The hypothesis `<p, z0> < support(p)` is first checked on a probe grid of
/// strictly positive directions; a failure there or an infeasible program
/// both come back as [`GeometryError::Infeasible`].
pub fn find_hull_dominator(
    sample: &FiniteScoreSample,
    z0: &ScoreVector,
    margin: f64,
    probe_resolution: usize,
) -> Result<HullDominator, GeometryError> {
    if sample.points.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    let n = sample.dim();
    if z0.len() != n {
        return Err(GeometryError::DimensionMismatch { got: z0.len(), want: n });
    }

    // probe the separation hypothesis before running the program
    for probe in sample_simplex(z0.space(), probe_resolution.max(1), true) {
        let lhs = crate::ereal::extended_dot(probe.weights(), z0.entries());
        let (sigma, _) = support_function(sample, probe.weights())?;
        if let Some(x) = lhs.as_finite() {
            if x >= sigma {
                return Err(GeometryError::Infeasible(format!(
                    "<p, z0> = {x} reaches the support value {sigma} at probe {:?}",
                    probe.weights()
                )));
            }
        }
    }

    // feasibility program over convex weights
    let npts = sample.points.len();
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(lp::LpRow { coeffs: vec![1.0; npts], op: lp::LpOp::Eq, rhs: 1.0 });
    for (i, entry) in z0.entries().iter().enumerate() {
        if let Some(target) = entry.as_finite() {
            let coeffs = sample.points.iter().map(|p| p.score[i]).collect();
            rows.push(lp::LpRow { coeffs, op: lp::LpOp::Ge, rhs: target + margin });
        }
    }
    let problem = lp::LpProblem { objective: vec![0.0; npts], rows };
    match lp::solve(&problem) {
        lp::LpOutcome::Optimal { x, .. } => {
            let weights: Vec<(usize, f64)> =
                x.iter().cloned().enumerate().filter(|(_, w)| *w > 1e-12).collect();
            let mut point = vec![0.0; n];
            let total: f64 = weights.iter().map(|(_, w)| w).sum();
            for &(i, w) in &weights {
                for (acc, &s) in point.iter_mut().zip(&sample.points[i].score) {
                    *acc += w / total * s;
                }
            }
            Ok(HullDominator { point, weights })
        }
        lp::LpOutcome::Infeasible => Err(GeometryError::Infeasible(format!(
            "no convex combination clears z0 + {margin} at resolution {}",
            sample.resolution
        ))),
        other => Err(GeometryError::SolverFailure(format!("{other:?}"))),
    }
}
