//! Quadratic (Brier) accuracy over the full power set.

use crate::credence::{Credence, Probability};
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// `s(c)(w) = -sum over events A of (1_A(w) - c(A))^2`, with `M = 0`.
#[derive(Clone, Debug)]
pub struct BrierRule {
    space: SampleSpace,
}

impl BrierRule {
    pub fn new(space: SampleSpace) -> Self {
        Self { space }
    }

    fn score_table(&self, value: impl Fn(u32) -> f64) -> ScoreVector {
        let n = self.space.len();
        let entries = (0..n)
            .map(|w| {
                let mut sum = 0.0;
                for mask in 0..self.space.event_count() as u32 {
                    let ind = (mask >> w & 1) as f64;
                    let d = ind - value(mask);
                    sum += d * d;
                }
                ExtendedReal::finite(-sum)
            })
            .collect();
        ScoreVector::new(self.space.clone(), entries).expect("entry per outcome")
    }
}

impl ScoringRule for BrierRule {
    fn name(&self) -> String {
        "brier".into()
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        0.0
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::AllCredences
    }

    fn finite_on_probabilities(&self) -> bool {
        true
    }

    /// Over probabilities the least entry is `-2^(n-1)`, attained at a point
    /// mass scored at an outcome outside its support.
    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        let n = self.space.len() as i32;
        Some(ExtendedReal::finite(-(2f64.powi(n - 1))))
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        Ok(self.score_table(|mask| p.event_value(crate::space::EventKey::from_mask(mask))))
    }

    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        check_space(self, c.space())?;
        Ok(self.score_table(|mask| c.value(crate::space::EventKey::from_mask(mask))))
    }
}
