//! The two-arc rule on a binary space.
//!
//! Scores lie on two unit-circle arcs: for forecasts at angle `theta` up to
//! `pi/4` the score sits on the circle centred at `(1,0)`, above `pi/4` on
//! the circle centred at `(0,1)`. The rule is strictly proper and everywhere
//! finite, yet the segment bridging the two arcs belongs to the
//! positive-facing boundary of the score hull while carrying no scores —
//! the canonical density-gap specimen.

use crate::credence::Probability;
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

#[derive(Clone, Debug)]
pub struct TwoCircleRule {
    space: SampleSpace,
}

impl TwoCircleRule {
    pub fn new(space: SampleSpace) -> Result<Self, RuleError> {
        if space.len() != 2 {
            return Err(RuleError::BadSpec(format!(
                "two-circle rule needs exactly 2 outcomes, got {}",
                space.len()
            )));
        }
        Ok(Self { space })
    }

    /// Angle of the weight vector with the first axis, in `[0, pi/2]`.
    pub fn angle(p: &Probability) -> f64 {
        p.weight(1).atan2(p.weight(0))
    }
}

impl ScoringRule for TwoCircleRule {
    fn name(&self) -> String {
        "two-circle".into()
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        2.0
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::ProbabilitiesOnly
    }

    fn finite_on_probabilities(&self) -> bool {
        true
    }

    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        Some(ExtendedReal::finite(0.0))
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        let theta = Self::angle(p);
        // the boundary angle belongs to the first arc, so its endpoint is an
        // attained score while the second arc's endpoint is not
        let (x, y) = if theta <= std::f64::consts::FRAC_PI_4 {
            (1.0 + theta.cos(), theta.sin())
        } else {
            (theta.cos(), 1.0 + theta.sin())
        };
        ScoreVector::from_f64(self.space.clone(), &[x, y]).map_err(|_| RuleError::SpaceMismatch)
    }
}
