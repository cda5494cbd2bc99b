//! Spherical accuracy over singleton weights.

use crate::credence::{Credence, Probability};
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// `s(c)(w) = c({w}) / ||singletons of c||_2`, with `M = 1`.
///
/// On non-probability credences only the singleton weights enter; an
/// all-zero singleton vector is an explicit error rather than a convention.
#[derive(Clone, Debug)]
pub struct SphericalRule {
    space: SampleSpace,
}

impl SphericalRule {
    pub fn new(space: SampleSpace) -> Self {
        Self { space }
    }

    fn from_singletons(&self, singles: &[f64]) -> Result<ScoreVector, RuleError> {
        let norm = singles.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(RuleError::ZeroVector);
        }
        let entries = singles.iter().map(|&x| ExtendedReal::finite(x / norm)).collect();
        Ok(ScoreVector::new(self.space.clone(), entries).expect("entry per outcome"))
    }
}

impl ScoringRule for SphericalRule {
    fn name(&self) -> String {
        "spherical".into()
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        1.0
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::AllCredences
    }

    fn finite_on_probabilities(&self) -> bool {
        true
    }

    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        Some(ExtendedReal::finite(0.0))
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        self.from_singletons(p.weights())
    }

    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        check_space(self, c.space())?;
        let singles: Vec<f64> = (0..self.space.len()).map(|i| c.singleton_value(i)).collect();
        self.from_singletons(&singles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule2() -> SphericalRule {
        SphericalRule::new(SampleSpace::with_outcomes(2).unwrap())
    }

    #[test]
    fn scores_normalize_the_weight_vector() {
        let rule = rule2();
        let p = Probability::from_weights(rule.space().clone(), vec![0.6, 0.4]).unwrap();
        let s = rule.score_probability(&p).unwrap().finite_entries().unwrap();
        let norm = (0.36f64 + 0.16).sqrt();
        assert!((s[0] - 0.6 / norm).abs() < 1e-15);
        assert!((s[1] - 0.4 / norm).abs() < 1e-15);
        assert!(s.iter().all(|&x| x <= 1.0));
    }

    #[test]
    fn zero_singletons_error() {
        let rule = rule2();
        let c = Credence::new(rule.space().clone(), vec![0.3, 0.0, 0.0, 0.9]).unwrap();
        assert_eq!(rule.score_credence(&c).unwrap_err(), RuleError::ZeroVector);
    }
}
