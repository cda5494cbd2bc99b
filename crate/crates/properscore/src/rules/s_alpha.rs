//! Zero-weight tweak: replace score entries at zero-probability outcomes by
//! a constant `alpha` below every attainable score.
//!
//! The tweak never changes expected self-scores (the replaced entries carry
//! zero weight), so strict propriety survives, but the rule becomes
//! discontinuous at every non-regular probability.

use crate::credence::{Credence, Probability};
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, sampled_score_floor, RuleDomain, RuleError, ScoringRule};

const FLOOR_SCAN_RESOLUTION: usize = 64;

#[derive(Debug)]
pub struct SAlphaRule {
    base: Box<dyn ScoringRule>,
    alpha: ExtendedReal,
}

impl SAlphaRule {
    /// Requires the base rule to be finite on probabilities and `alpha` to
    /// sit at or below the least base score entry. The bound is checked
    /// against the analytic floor where the base knows one, otherwise
    /// against a lattice scan.
    pub fn new(base: Box<dyn ScoringRule>, alpha: ExtendedReal) -> Result<Self, RuleError> {
        if !base.finite_on_probabilities() {
            return Err(RuleError::BadSpec(format!(
                "base rule `{}` takes infinite values on probabilities",
                base.name()
            )));
        }
        validate_alpha(base.as_ref(), alpha)?;
        Ok(Self { base, alpha })
    }

    pub fn alpha(&self) -> ExtendedReal {
        self.alpha
    }
}

fn validate_alpha(base: &dyn ScoringRule, alpha: ExtendedReal) -> Result<(), RuleError> {
    if alpha == ExtendedReal::NegInf {
        return Ok(());
    }
    let floor = match base.probability_score_floor() {
        Some(f) => f,
        None => sampled_score_floor(base, FLOOR_SCAN_RESOLUTION)?,
    };
    match (alpha, floor) {
        (_, ExtendedReal::NegInf) => Err(RuleError::BadAlpha {
            alpha: alpha.to_f64(),
            floor: f64::NEG_INFINITY,
        }),
        (ExtendedReal::Finite(a), ExtendedReal::Finite(f)) if a > f => {
            Err(RuleError::BadAlpha { alpha: a, floor: f })
        }
        _ => Ok(()),
    }
}

/// The tweak as a standalone transform: base score with entries at
/// zero-weight outcomes replaced by `alpha`. Validates `alpha` against the
/// base rule on every call.
pub fn s_alpha_transform(
    base: &dyn ScoringRule,
    alpha: ExtendedReal,
    p: &Probability,
) -> Result<ScoreVector, RuleError> {
    if !base.finite_on_probabilities() {
        return Err(RuleError::BadSpec(format!(
            "base rule `{}` takes infinite values on probabilities",
            base.name()
        )));
    }
    validate_alpha(base, alpha)?;
    apply(base, alpha, p)
}

fn apply(base: &dyn ScoringRule, alpha: ExtendedReal, p: &Probability) -> Result<ScoreVector, RuleError> {
    let score = base.score_probability(p)?;
    if p.is_regular() {
        return Ok(score);
    }
    let entries = score
        .entries()
        .iter()
        .zip(p.weights())
        .map(|(&e, &w)| if w == 0.0 { alpha } else { e })
        .collect();
    Ok(ScoreVector::new(base.space().clone(), entries).expect("entry per outcome"))
}

impl ScoringRule for SAlphaRule {
    fn name(&self) -> String {
        format!("s-alpha:base={},alpha={}", self.base.name(), self.alpha)
    }

    fn space(&self) -> &SampleSpace {
        self.base.space()
    }

    fn upper_bound(&self) -> f64 {
        self.base.upper_bound()
    }

    fn domain(&self) -> RuleDomain {
        self.base.domain()
    }

    fn finite_on_probabilities(&self) -> bool {
        self.alpha.is_finite()
    }

    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        let base = self.base.probability_score_floor()?;
        Some(if self.alpha.total_cmp(&base) == std::cmp::Ordering::Less { self.alpha } else { base })
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        apply(self.base.as_ref(), self.alpha, p)
    }

    /// Off the probabilities the tweak is the base rule unchanged.
    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        match crate::credence::validate_probability(c, crate::credence::COHERENCE_TOL) {
            Ok(p) => self.score_probability(&p),
            Err(_) => self.base.score_credence(c),
        }
    }
}
