//! Logarithmic accuracy on probabilities.

use crate::credence::Probability;
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// `s(p)(w) = ln p({w})` with `ln 0 = -inf`, `M = 0`. Defined on
/// probabilities only.
#[derive(Clone, Debug)]
pub struct LogRule {
    space: SampleSpace,
}

impl LogRule {
    pub fn new(space: SampleSpace) -> Self {
        Self { space }
    }
}

impl ScoringRule for LogRule {
    fn name(&self) -> String {
        "log".into()
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        0.0
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::ProbabilitiesOnly
    }

    fn finite_on_probabilities(&self) -> bool {
        false
    }

    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        Some(ExtendedReal::NegInf)
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        let entries = p
            .weights()
            .iter()
            .map(|&w| if w == 0.0 { ExtendedReal::NegInf } else { ExtendedReal::finite(w.ln()) })
            .collect();
        Ok(ScoreVector::new(self.space.clone(), entries).expect("entry per outcome"))
    }
}
