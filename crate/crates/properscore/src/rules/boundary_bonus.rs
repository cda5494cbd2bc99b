//! A strictly proper rule whose self-score jumps at the simplex vertices.
//!
//! On regular binary probabilities this is the Brier accuracy shifted down
//! by 3, so expected self-scores approach -3 toward a vertex. At the
//! vertices themselves the finite entry is bumped to -2 and the other entry
//! is `-inf`, opening a gap of exactly 1 between the self-score and its
//! limit along any interior path.

use crate::credence::Probability;
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::SampleSpace;

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// Downward shift applied to the Brier accuracy on regular probabilities.
pub const SHIFT: f64 = 3.0;
/// Finite entry awarded at the two point masses.
pub const VERTEX_BONUS: f64 = -2.0;

#[derive(Clone, Debug)]
pub struct BoundaryBonusRule {
    space: SampleSpace,
}

impl BoundaryBonusRule {
    pub fn new(space: SampleSpace) -> Result<Self, RuleError> {
        if space.len() != 2 {
            return Err(RuleError::BadSpec(format!(
                "boundary-bonus rule needs exactly 2 outcomes, got {}",
                space.len()
            )));
        }
        Ok(Self { space })
    }
}

impl ScoringRule for BoundaryBonusRule {
    fn name(&self) -> String {
        "boundary-bonus".into()
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        VERTEX_BONUS
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
        let entries = if p.is_regular() {
            let q = p.weight(0);
            vec![
                ExtendedReal::finite(-2.0 * (1.0 - q) * (1.0 - q) - SHIFT),
                ExtendedReal::finite(-2.0 * q * q - SHIFT),
            ]
        } else if p.weight(0) == 1.0 {
            vec![ExtendedReal::finite(VERTEX_BONUS), ExtendedReal::NegInf]
        } else {
            vec![ExtendedReal::NegInf, ExtendedReal::finite(VERTEX_BONUS)]
        };
        Ok(ScoreVector::new(self.space.clone(), entries).expect("entry per outcome"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ereal::ExtendedReal::{Finite, NegInf};
    use crate::score::expected_score;
    use crate::simplex::{converging_path, doubling_steps};

    fn rule() -> BoundaryBonusRule {
        BoundaryBonusRule::new(SampleSpace::with_outcomes(2).unwrap()).unwrap()
    }

    #[test]
    fn vertices_get_the_bonus() {
        let r = rule();
        let s = r.score_probability(&Probability::vertex(r.space().clone(), 0)).unwrap();
        assert_eq!(s.entries(), &[Finite(-2.0), NegInf]);
        let s = r.score_probability(&Probability::vertex(r.space().clone(), 1)).unwrap();
        assert_eq!(s.entries(), &[NegInf, Finite(-2.0)]);
    }

    #[test]
    fn interior_scores_live_in_the_shifted_band() {
        let r = rule();
        for q in [0.1, 0.25, 0.5, 0.9] {
            let p = Probability::from_weights(r.space().clone(), vec![q, 1.0 - q]).unwrap();
            let s = r.score_probability(&p).unwrap().finite_entries().unwrap();
            assert!(s.iter().all(|&x| (-5.0..=-3.0).contains(&x)), "{s:?}");
        }
    }

    #[test]
    fn self_score_limit_misses_the_vertex_self_score_by_one() {
        let r = rule();
        let target = Probability::vertex(r.space().clone(), 0);
        let anchor = Probability::uniform(r.space().clone());
        let path = converging_path(&target, &anchor, &doubling_steps(4000, 6));
        let last = path.last().unwrap();
        let along = expected_score(last, &r.score_probability(last).unwrap())
            .unwrap()
            .as_finite()
            .unwrap();
        assert!((along + 3.0).abs() < 1e-3, "limit along path = {along}");
        let at = expected_score(&target, &r.score_probability(&target).unwrap()).unwrap();
        assert_eq!(at, Finite(-2.0));
    }
}
