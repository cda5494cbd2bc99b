//! Constant extension of a rule to all credences.

use crate::credence::{validate_probability, Credence, Probability, COHERENCE_TOL};
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// Scores probabilities through the base rule and returns a fixed fill
/// vector on everything else.
#[derive(Debug)]
pub struct ExtendedRule {
    base: Box<dyn ScoringRule>,
    fill: ScoreVector,
}

impl ExtendedRule {
    /// Fill entries must respect the base bound `M`.
    pub fn new(base: Box<dyn ScoringRule>, fill: ScoreVector) -> Result<Self, RuleError> {
        if fill.space() != base.space() {
            return Err(RuleError::SpaceMismatch);
        }
        if let Some(worst) = fill.max_entry() {
            if worst > base.upper_bound() {
                return Err(RuleError::EntryAboveM { entry: worst, bound: base.upper_bound() });
            }
        }
        Ok(Self { base, fill })
    }

    pub fn fill(&self) -> &ScoreVector {
        &self.fill
    }

    pub fn base(&self) -> &dyn ScoringRule {
        self.base.as_ref()
    }
}

/// Convenience constructor matching the registry's `extended:` spec.
pub fn extend_with_vector(
    base: Box<dyn ScoringRule>,
    fill: ScoreVector,
) -> Result<ExtendedRule, RuleError> {
    ExtendedRule::new(base, fill)
}

impl ScoringRule for ExtendedRule {
    fn name(&self) -> String {
        let entries: Vec<String> = self.fill.entries().iter().map(|e| e.to_string()).collect();
        format!("extended:base={},x=[{}]", self.base.name(), entries.join(","))
    }

    fn space(&self) -> &SampleSpace {
        self.base.space()
    }

    fn upper_bound(&self) -> f64 {
        self.base.upper_bound()
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::AllCredences
    }

    fn finite_on_probabilities(&self) -> bool {
        self.base.finite_on_probabilities()
    }

    fn probability_score_floor(&self) -> Option<crate::ereal::ExtendedReal> {
        self.base.probability_score_floor()
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        self.base.score_probability(p)
    }

    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        check_space(self, c.space())?;
        match validate_probability(c, COHERENCE_TOL) {
            Ok(p) => self.base.score_probability(&p),
            Err(_) => Ok(self.fill.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::TwoCircleRule;

    fn two_circle() -> Box<dyn ScoringRule> {
        Box::new(TwoCircleRule::new(SampleSpace::with_outcomes(2).unwrap()).unwrap())
    }

    fn fill(values: &[f64]) -> ScoreVector {
        ScoreVector::from_f64(SampleSpace::with_outcomes(2).unwrap(), values).unwrap()
    }

    #[test]
    fn incoherent_forecasts_get_the_fill() {
        let rule = ExtendedRule::new(two_circle(), fill(&[1.15711, 1.15711])).unwrap();
        let c = Credence::new(rule.space().clone(), vec![0.0, 0.6, 0.6, 1.0]).unwrap();
        let s = rule.score_credence(&c).unwrap();
        assert_eq!(s.finite_entries().unwrap(), vec![1.15711, 1.15711]);
    }

    #[test]
    fn probabilities_delegate_to_the_base() {
        let rule = ExtendedRule::new(two_circle(), fill(&[1.15711, 1.15711])).unwrap();
        let p = Probability::vertex(rule.space().clone(), 0);
        let s = rule.score_probability(&p).unwrap();
        assert_eq!(s.finite_entries().unwrap(), vec![2.0, 0.0]);
        // coherent credence tables take the same route
        let table = p.to_credence();
        assert_eq!(rule.score_credence(&table).unwrap(), s);
    }

    #[test]
    fn fill_above_the_bound_is_rejected() {
        let err = ExtendedRule::new(two_circle(), fill(&[3.0, 0.0])).unwrap_err();
        assert_eq!(err, RuleError::EntryAboveM { entry: 3.0, bound: 2.0 });
    }
}
