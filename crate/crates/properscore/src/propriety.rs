//! Grid-based verification of propriety and its refinements.
//!
//! Verdicts here are sampling statements: "no violation found at resolution
//! k, tolerance tol", never proofs. Reports record the grid and tolerance
//! they were reached at.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::{validate_probability, Credence, Probability, COHERENCE_TOL};
use crate::ereal::{extended_dot, ExtendedReal};
use crate::geometry::{support_function, FiniteScoreSample, GeometryError};
use crate::rules::{RuleDomain, RuleError, ScoringRule};
use crate::score::{expected_score, ScoreError};
use crate::simplex::sample_simplex;
use crate::space::SampleSpace;

#[derive(Debug, Error)]
pub enum PropError {
    #[error("rule must be extended to all credences for quasi-strict checking")]
    NeedsExtension,
    #[error("self-score is infinite at probe {weights:?}; the support identity does not apply")]
    InfiniteSelfScore { weights: Vec<f64> },
    #[error("path does not converge: {0}")]
    PathNotConvergent(String),
    #[error("score on path point {index} has infinite entries")]
    InfiniteScoreOnPath { index: usize },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Score(#[from] ScoreError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProprietyMode {
    Proper,
    Strict,
    QuasiStrict,
}

#[derive(Clone, Debug)]
pub struct ProprietyConfig {
    pub resolution: usize,
    pub tol: f64,
    pub seed: u64,
    /// Incoherent challengers generated per grid point in quasi-strict mode.
    pub perturbations_per_point: usize,
}

impl Default for ProprietyConfig {
    fn default() -> Self {
        Self { resolution: 200, tol: 1e-9, seed: 42, perturbations_per_point: 2 }
    }
}

/// The forecast that beat (or tied) the probability it should not have.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Challenger {
    Probability { weights: Vec<f64> },
    Credence { values: Vec<f64> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViolatingPair {
    pub p_weights: Vec<f64>,
    pub challenger: Challenger,
    pub self_score: ExtendedReal,
    pub cross_score: ExtendedReal,
    pub margin: ExtendedReal,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProprietyReport {
    pub rule: String,
    pub mode: ProprietyMode,
    pub resolution: usize,
    pub tol: f64,
    pub pairs_checked: usize,
    pub passed: bool,
    pub worst_violation: Option<ViolatingPair>,
    /// Least strictness margin seen over finite-margin pairs.
    pub min_strict_margin: Option<f64>,
}

/// Margin `self - cross` in the extended sense.
fn margin_of(self_score: ExtendedReal, cross: ExtendedReal) -> ExtendedReal {
    match (self_score, cross) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::finite(a - b),
        (ExtendedReal::Finite(_), ExtendedReal::NegInf) => {
            // cross is -inf, self beats it by an unbounded margin; clamp to a
            // large finite sentinel so reports stay serializable
            ExtendedReal::finite(f64::MAX)
        }
        (ExtendedReal::NegInf, ExtendedReal::Finite(_)) => ExtendedReal::NegInf,
        (ExtendedReal::NegInf, ExtendedReal::NegInf) => ExtendedReal::finite(0.0),
    }
}

/// Checks `E_p s(p) >= E_p s(c)` over all grid pairs, with the strictness
/// the mode demands.
///
/// * `Proper`: no challenger may beat the self-score by more than `tol`.
/// * `Strict`: distinct grid probabilities must trail by more than `tol`.
/// * `QuasiStrict`: properness over grid probabilities, strictness against
///   seeded incoherent credences (offsets in `[-0.3, 0.3]` on non-singleton
///   events, resampled if accidentally coherent). Needs a rule defined on
///   all credences.
pub fn check_propriety(
    rule: &dyn ScoringRule,
    mode: ProprietyMode,
    config: &ProprietyConfig,
) -> Result<ProprietyReport, PropError> {
    if mode == ProprietyMode::QuasiStrict && rule.domain() == RuleDomain::ProbabilitiesOnly {
        return Err(PropError::NeedsExtension);
    }
    let grid = sample_simplex(rule.space(), config.resolution, false);
    let scores: Vec<_> =
        grid.iter().map(|p| rule.score_probability(p)).collect::<Result<_, _>>()?;
    let self_scores: Vec<ExtendedReal> = grid
        .iter()
        .zip(&scores)
        .map(|(p, s)| expected_score(p, s))
        .collect::<Result<_, _>>()?;

    let mut report = ProprietyReport {
        rule: rule.name(),
        mode,
        resolution: config.resolution,
        tol: config.tol,
        pairs_checked: 0,
        passed: true,
        worst_violation: None,
        min_strict_margin: None,
    };

    let consider = |report: &mut ProprietyReport,
                        p_weights: &[f64],
                        challenger: Challenger,
                        self_score: ExtendedReal,
                        cross: ExtendedReal,
                        strict: bool| {
        report.pairs_checked += 1;
        let margin = margin_of(self_score, cross);
        if let Some(m) = margin.as_finite() {
            if m != f64::MAX
                && report.min_strict_margin.map_or(true, |best| m < best)
            {
                report.min_strict_margin = Some(m);
            }
        }
        let violated = match margin {
            ExtendedReal::NegInf => true,
            ExtendedReal::Finite(m) => {
                if strict {
                    m <= config.tol
                } else {
                    m < -config.tol
                }
            }
        };
        if violated {
            let worse = report
                .worst_violation
                .as_ref()
                .map_or(true, |w| margin.total_cmp(&w.margin) == std::cmp::Ordering::Less);
            if worse {
                report.worst_violation = Some(ViolatingPair {
                    p_weights: p_weights.to_vec(),
                    challenger,
                    self_score,
                    cross_score: cross,
                    margin,
                });
            }
            report.passed = false;
        }
    };

    // probability challengers
    for (i, p) in grid.iter().enumerate() {
        for (j, challenger) in grid.iter().enumerate() {
            if i == j {
                continue;
            }
            let cross = extended_dot(p.weights(), scores[j].entries());
            let strict = mode == ProprietyMode::Strict;
            consider(
                &mut report,
                p.weights(),
                Challenger::Probability { weights: challenger.weights().to_vec() },
                self_scores[i],
                cross,
                strict,
            );
        }
    }

    // incoherent challengers for quasi-strictness
    if mode == ProprietyMode::QuasiStrict {
        let challengers = seeded_incoherent_credences(
            rule.space(),
            &grid,
            config.perturbations_per_point,
            config.seed,
            0.3,
            PerturbEvents::NonSingleton,
        );
        for c in &challengers {
            let s = rule.score_credence(c)?;
            for (i, p) in grid.iter().enumerate() {
                let cross = extended_dot(p.weights(), s.entries());
                consider(
                    &mut report,
                    p.weights(),
                    Challenger::Credence { values: c.values().to_vec() },
                    self_scores[i],
                    cross,
                    true,
                );
            }
        }
    }

    Ok(report)
}

/// Which events get perturbed when manufacturing incoherent credences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbEvents {
    /// Only events of size other than 1, leaving singletons coherent.
    NonSingleton,
    /// Every event except the empty set and the full space.
    AllProper,
}

/// Seeded incoherent credences: coherent tables induced by `bases`, offset
/// by uniform noise in `[-magnitude, magnitude]` on the selected events.
/// Accidentally coherent results are rejected and resampled.
pub fn seeded_incoherent_credences(
    space: &SampleSpace,
    bases: &[Probability],
    per_base: usize,
    seed: u64,
    magnitude: f64,
    events: PerturbEvents,
) -> Vec<Credence> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(bases.len() * per_base);
    for base in bases {
        let table = base.to_credence();
        for _ in 0..per_base {
            for _attempt in 0..64 {
                let mut values = table.values().to_vec();
                for event in space.events() {
                    let skip = match events {
                        PerturbEvents::NonSingleton => event.size() == 1,
                        PerturbEvents::AllProper => {
                            event.is_empty() || event == space.full_event()
                        }
                    };
                    if !skip {
                        values[event.mask() as usize] += rng.gen_range(-magnitude..=magnitude);
                    }
                }
                let c = Credence::new(space.clone(), values).expect("finite perturbation");
                if validate_probability(&c, COHERENCE_TOL).is_err() {
                    out.push(c);
                    break;
                }
            }
        }
    }
    out
}

/// Per-probe comparison of the sampled support value against the expected
/// self-score.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportProbe {
    pub weights: Vec<f64>,
    pub support_value: f64,
    pub self_score: f64,
    pub discrepancy: f64,
    /// Set when the support value falls short of the self-score beyond
    /// tolerance, the signature of a self-score limit failure.
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SupportIdentityReport {
    pub rule: String,
    pub sample_resolution: usize,
    pub tol: f64,
    pub max_discrepancy: f64,
    pub flagged_probes: usize,
    pub probes: Vec<SupportProbe>,
}

/// For each probe `p`, compares the support function of the sample at `p`
/// with `E_p s(p)`. For proper rules whose self-score map is continuous the
/// two agree in the limit; a persistent shortfall flags the probe.
pub fn check_support_identity(
    rule: &dyn ScoringRule,
    sample: &FiniteScoreSample,
    probes: &[Probability],
    tol: f64,
) -> Result<SupportIdentityReport, PropError> {
    let mut report = SupportIdentityReport {
        rule: rule.name(),
        sample_resolution: sample.resolution,
        tol,
        max_discrepancy: 0.0,
        flagged_probes: 0,
        probes: Vec::with_capacity(probes.len()),
    };
    for p in probes {
        let s = rule.score_probability(p)?;
        let self_score = expected_score(p, &s)?
            .as_finite()
            .ok_or_else(|| PropError::InfiniteSelfScore { weights: p.weights().to_vec() })?;
        let (sigma, _) = support_function(sample, p.weights())?;
        let discrepancy = (sigma - self_score).abs();
        let flagged = sigma < self_score - tol;
        if flagged {
            report.flagged_probes += 1;
        }
        report.max_discrepancy = report.max_discrepancy.max(discrepancy);
        report.probes.push(SupportProbe {
            weights: p.weights().to_vec(),
            support_value: sigma,
            self_score,
            discrepancy,
            flagged,
        });
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LimitReport {
    pub target_weights: Vec<f64>,
    pub path_len: usize,
    /// Extrapolated limit of the self-scores along the path.
    pub limit: f64,
    /// Successive extrapolation estimates, last one is `limit`.
    pub estimates: Vec<f64>,
    pub self_score: ExtendedReal,
    pub holds: bool,
    /// `|limit - self_score|`; `None` when the self-score is infinite.
    pub gap: Option<f64>,
}

/// Estimates the limit of `E_q s(q)` along a path converging to `target`
/// and compares it with the self-score at the target.
///
/// The path must approach the target monotonically with at least three
/// points, and scores along it must be finite. Extrapolation is
/// Richardson-style against the measured contraction ratio; the verdict
/// requires the estimates to have stabilized within `tol / 4`.
pub fn check_self_score_continuity(
    rule: &dyn ScoringRule,
    target: &Probability,
    path: &[Probability],
    tol: f64,
) -> Result<LimitReport, PropError> {
    if path.len() < 3 {
        return Err(PropError::PathNotConvergent(format!(
            "need at least 3 path points, got {}",
            path.len()
        )));
    }
    let distances: Vec<f64> = path.iter().map(|q| q.linf_distance(target)).collect();
    for pair in distances.windows(2) {
        if pair[1] >= pair[0] {
            return Err(PropError::PathNotConvergent(format!(
                "distance to target does not shrink: {} -> {}",
                pair[0], pair[1]
            )));
        }
    }

    let mut values = Vec::with_capacity(path.len());
    for (index, q) in path.iter().enumerate() {
        let s = rule.score_probability(q)?;
        if !s.is_finite() {
            return Err(PropError::InfiniteScoreOnPath { index });
        }
        let v = expected_score(q, &s)?.as_finite().expect("finite score has finite expectation");
        values.push(v);
    }

    // first-order extrapolation: phi(d) ~ L + C d, with the contraction
    // ratio read off the measured distances
    let mut estimates = Vec::new();
    for j in 1..values.len() {
        let r = distances[j - 1] / distances[j];
        estimates.push((r * values[j] - values[j - 1]) / (r - 1.0));
    }
    if estimates.len() >= 2 {
        let last_change =
            (estimates[estimates.len() - 1] - estimates[estimates.len() - 2]).abs();
        if last_change >= tol / 4.0 {
            return Err(PropError::PathNotConvergent(format!(
                "limit estimates still moving by {last_change} (need < {})",
                tol / 4.0
            )));
        }
    }
    let limit = *estimates.last().expect("at least two path points");

    let self_score = expected_score(target, &rule.score_probability(target)?)?;
    let (holds, gap) = match self_score.as_finite() {
        Some(v) => ((limit - v).abs() <= tol, Some((limit - v).abs())),
        None => (false, None),
    };
    Ok(LimitReport {
        target_weights: target.weights().to_vec(),
        path_len: path.len(),
        limit,
        estimates,
        self_score,
        holds,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{BoundaryBonusRule, BrierRule, LogRule, SphericalRule, TwoCircleRule};
    use crate::score::ScoreVector;
    use crate::simplex::{converging_path, doubling_steps};

    fn space2() -> SampleSpace {
        SampleSpace::with_outcomes(2).unwrap()
    }

    #[test]
    fn brier_is_strictly_proper_on_the_grid() {
        let rule = BrierRule::new(space2());
        let config = ProprietyConfig { resolution: 32, ..Default::default() };
        let report = check_propriety(&rule, ProprietyMode::Strict, &config).unwrap();
        assert!(report.passed, "{:?}", report.worst_violation);
        assert!(report.min_strict_margin.unwrap() > 1e-9);
    }

    #[test]
    fn two_circle_is_strictly_proper_on_the_grid() {
        let rule = TwoCircleRule::new(space2()).unwrap();
        let config = ProprietyConfig { resolution: 200, ..Default::default() };
        let report = check_propriety(&rule, ProprietyMode::Strict, &config).unwrap();
        assert!(report.passed, "{:?}", report.worst_violation);
        assert!(report.min_strict_margin.unwrap() > 0.0);
    }

    #[test]
    fn refining_the_grid_keeps_smooth_rules_passing() {
        for k in [8usize, 16, 32] {
            let config = ProprietyConfig { resolution: k, ..Default::default() };
            for rule in [
                Box::new(BrierRule::new(space2())) as Box<dyn ScoringRule>,
                Box::new(SphericalRule::new(space2())),
                Box::new(LogRule::new(space2())),
            ] {
                let report = check_propriety(rule.as_ref(), ProprietyMode::Strict, &config).unwrap();
                assert!(report.passed, "{} failed at k={k}", rule.name());
            }
        }
    }

    #[test]
    fn strict_margin_is_minimized_at_a_grid_neighbour() {
        let rule = BrierRule::new(space2());
        let k = 20usize;
        let grid = sample_simplex(rule.space(), k, false);
        let p = &grid[8];
        let sp = rule.score_probability(p).unwrap();
        let self_score = expected_score(p, &sp).unwrap().as_finite().unwrap();
        let mut best: Option<(usize, f64)> = None;
        for (j, q) in grid.iter().enumerate() {
            if q.same_weights(p) {
                continue;
            }
            let cross = extended_dot(p.weights(), rule.score_probability(q).unwrap().entries())
                .as_finite()
                .unwrap();
            let margin = self_score - cross;
            if best.map_or(true, |(_, m)| margin < m) {
                best = Some((j, margin));
            }
        }
        let (j, _) = best.unwrap();
        assert!(grid[j].linf_distance(p) <= 1.0 / k as f64 + 1e-12);
    }

    #[test]
    fn a_sign_flipped_rule_fails_with_a_witness() {
        #[derive(Debug)]
        struct Flipped(BrierRule);
        impl ScoringRule for Flipped {
            fn name(&self) -> String {
                "flipped-brier".into()
            }
            fn space(&self) -> &SampleSpace {
                self.0.space()
            }
            fn upper_bound(&self) -> f64 {
                8.0
            }
            fn domain(&self) -> RuleDomain {
                RuleDomain::AllCredences
            }
            fn finite_on_probabilities(&self) -> bool {
                true
            }
            fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
                let s = self.0.score_probability(p)?;
                let entries = s
                    .entries()
                    .iter()
                    .map(|e| ExtendedReal::finite(-e.as_finite().unwrap()))
                    .collect();
                Ok(ScoreVector::new(self.space().clone(), entries).unwrap())
            }
        }
        let rule = Flipped(BrierRule::new(space2()));
        let config = ProprietyConfig { resolution: 16, ..Default::default() };
        let report = check_propriety(&rule, ProprietyMode::Strict, &config).unwrap();
        assert!(!report.passed);
        assert!(report.worst_violation.is_some());
    }

    #[test]
    fn quasi_strict_needs_an_extension() {
        let rule = TwoCircleRule::new(space2()).unwrap();
        let config = ProprietyConfig { resolution: 16, ..Default::default() };
        let err = check_propriety(&rule, ProprietyMode::QuasiStrict, &config).unwrap_err();
        assert!(matches!(err, PropError::NeedsExtension));
    }

    #[test]
    fn extended_two_circle_is_quasi_strictly_proper() {
        let base = TwoCircleRule::new(space2()).unwrap();
        let fill = ScoreVector::from_f64(space2(), &[1.15711, 1.15711]).unwrap();
        let rule = crate::rules::ExtendedRule::new(Box::new(base), fill).unwrap();
        let config = ProprietyConfig { resolution: 200, ..Default::default() };
        let report = check_propriety(&rule, ProprietyMode::QuasiStrict, &config).unwrap();
        assert!(report.passed, "{:?}", report.worst_violation);
    }

    #[test]
    fn incoherent_generator_rejects_coherent_tables() {
        let grid = sample_simplex(&space2(), 5, false);
        let credences = seeded_incoherent_credences(
            &space2(),
            &grid,
            3,
            7,
            0.3,
            PerturbEvents::NonSingleton,
        );
        assert_eq!(credences.len(), grid.len() * 3);
        for c in &credences {
            assert!(validate_probability(&c, COHERENCE_TOL).is_err());
        }
    }

    #[test]
    fn support_identity_holds_for_brier_and_fails_for_boundary_bonus() {
        let rule = BrierRule::new(space2());
        let sample = crate::geometry::build_sample(&rule, 1000, 0).unwrap();
        let probes = sample_simplex(&space2(), 7, true);
        let report = check_support_identity(&rule, &sample, &probes, 1e-5).unwrap();
        assert!(report.max_discrepancy <= 1e-5, "{}", report.max_discrepancy);
        assert_eq!(report.flagged_probes, 0);

        let bonus = BoundaryBonusRule::new(space2()).unwrap();
        let sample = crate::geometry::build_sample(&bonus, 2000, 0).unwrap();
        let vertex = Probability::vertex(space2(), 0);
        let report = check_support_identity(&bonus, &sample, &[vertex], 1e-6).unwrap();
        assert_eq!(report.flagged_probes, 1);
        assert!((report.max_discrepancy - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn two_circle_arc_point_attains_its_support() {
        let rule = TwoCircleRule::new(space2()).unwrap();
        let sample = crate::geometry::build_sample(&rule, 1000, 0).unwrap();
        let probe =
            Probability::from_weights(space2(), vec![3.0 / 7.0, 4.0 / 7.0]).unwrap();
        let report = check_support_identity(&rule, &sample, &[probe], 1e-5).unwrap();
        assert!(report.max_discrepancy <= 1e-5, "{}", report.max_discrepancy);
        assert_eq!(report.flagged_probes, 0);
    }

    #[test]
    fn support_identity_discrepancy_shrinks_quadratically() {
        let rule = BrierRule::new(space2());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let probes: Vec<Probability> = (0..200)
            .map(|_| {
                let w = rng.gen_range(0.05..0.95);
                Probability::from_weights(space2(), vec![w, 1.0 - w]).unwrap()
            })
            .collect();
        let mut worst = Vec::new();
        for k in [250usize, 500, 1000] {
            let sample = crate::geometry::build_sample(&rule, k, 0).unwrap();
            let report = check_support_identity(&rule, &sample, &probes, 1e-3).unwrap();
            worst.push(report.max_discrepancy);
        }
        assert!(worst[0] / worst[1] >= 3.0, "{worst:?}");
        assert!(worst[1] / worst[2] >= 3.0, "{worst:?}");
    }

    #[test]
    fn log_rule_self_scores_vanish_toward_the_vertex() {
        let rule = LogRule::new(space2());
        let target = Probability::vertex(space2(), 0);
        let anchor = Probability::uniform(space2());
        let path = converging_path(&target, &anchor, &doubling_steps(10_000, 8));
        let report = check_self_score_continuity(&rule, &target, &path, 1e-3).unwrap();
        assert!(report.holds, "limit {} vs self {}", report.limit, report.self_score);
        assert!(report.limit.abs() <= 1e-3);
    }

    #[test]
    fn boundary_bonus_breaks_the_self_score_limit() {
        let rule = BoundaryBonusRule::new(space2()).unwrap();
        let target = Probability::vertex(space2(), 0);
        let anchor = Probability::uniform(space2());
        let path = converging_path(&target, &anchor, &doubling_steps(10_000, 8));
        let report = check_self_score_continuity(&rule, &target, &path, 1e-3).unwrap();
        assert!(!report.holds);
        assert!((report.limit + 3.0).abs() <= 1e-3, "limit {}", report.limit);
        assert!((report.gap.unwrap() - 1.0).abs() <= 1e-3);
    }

    #[test]
    fn interior_paths_hold_for_continuous_rules() {
        let rule = BrierRule::new(space2());
        let target = Probability::from_weights(space2(), vec![0.3, 0.7]).unwrap();
        let anchor = Probability::uniform(space2());
        let path = converging_path(&target, &anchor, &doubling_steps(4096, 6));
        let report = check_self_score_continuity(&rule, &target, &path, 1e-6).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn limits_of_scores_match_the_extended_dot_of_the_limit() {
        // if s(p_n) -> r componentwise then <p, r> equals the limit of
        // <p_n, s(p_n)>, including infinite coordinates killed by zero weight
        let rule = LogRule::new(space2());
        let target = Probability::vertex(space2(), 0);
        let anchor = Probability::uniform(space2());
        let path = converging_path(&target, &anchor, &doubling_steps(1 << 20, 12));
        let limit_score = ScoreVector::new(
            space2(),
            vec![ExtendedReal::finite(0.0), ExtendedReal::NegInf],
        )
        .unwrap();
        let r = extended_dot(target.weights(), limit_score.entries()).as_finite().unwrap();
        let report = check_self_score_continuity(&rule, &target, &path, 1e-3).unwrap();
        assert!((report.limit - r).abs() <= 1e-3);
    }

    #[test]
    fn bad_paths_are_rejected() {
        let rule = LogRule::new(space2());
        let target = Probability::vertex(space2(), 0);
        let anchor = Probability::uniform(space2());
        let two = converging_path(&target, &anchor, &[0.5, 0.25]);
        assert!(matches!(
            check_self_score_continuity(&rule, &target, &two, 1e-3),
            Err(PropError::PathNotConvergent(_))
        ));
        let wandering = converging_path(&target, &anchor, &[0.5, 0.25, 0.4]);
        assert!(matches!(
            check_self_score_continuity(&rule, &target, &wandering, 1e-3),
            Err(PropError::PathNotConvergent(_))
        ));
        // a path through a degenerate point has infinite scores
        let through_vertex = vec![
            converging_path(&target, &anchor, &[0.5])[0].clone(),
            Probability::vertex(space2(), 1),
            converging_path(&target, &anchor, &[0.01])[0].clone(),
        ];
        assert!(matches!(
            check_self_score_continuity(&rule, &target, &through_vertex, 1e-3),
            Err(PropError::PathNotConvergent(_) | PropError::InfiniteScoreOnPath { .. })
        ));
    }
}
