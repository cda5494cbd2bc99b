//! Additive rules built from per-event component functions.

use std::sync::Arc;

use crate::credence::{Credence, Probability};
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::space::{EventKey, SampleSpace};

use super::{check_space, RuleDomain, RuleError, ScoringRule};

/// One component per event: `(credence value, indicator) -> score term`.
pub type Component = Arc<dyn Fn(f64, bool) -> f64 + Send + Sync>;

/// `s(c)(w) = sum over events A of s_A(c(A), 1_A(w))`.
pub struct AdditiveRule {
    space: SampleSpace,
    components: Vec<Component>,
    upper_bound: f64,
    label: String,
}

impl std::fmt::Debug for AdditiveRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdditiveRule")
            .field("label", &self.label)
            .field("outcomes", &self.space.len())
            .field("upper_bound", &self.upper_bound)
            .finish()
    }
}

impl AdditiveRule {
    /// One component per event, indexed by mask. `upper_bound` is the
    /// caller-asserted bound `M` on total entries.
    pub fn new(
        space: SampleSpace,
        components: Vec<Component>,
        upper_bound: f64,
        label: impl Into<String>,
    ) -> Result<Self, RuleError> {
        if components.len() != space.event_count() {
            return Err(RuleError::BadSpec(format!(
                "additive rule needs {} components, got {}",
                space.event_count(),
                components.len()
            )));
        }
        Ok(Self { space, components, upper_bound, label: label.into() })
    }

    /// The quadratic components whose sum reproduces the Brier rule exactly.
    pub fn brier_components(space: &SampleSpace) -> Vec<Component> {
        (0..space.event_count())
            .map(|_| {
                Arc::new(|value: f64, hit: bool| {
                    let ind = if hit { 1.0 } else { 0.0 };
                    -(ind - value) * (ind - value)
                }) as Component
            })
            .collect()
    }

    fn score_table(&self, value: impl Fn(EventKey) -> f64) -> ScoreVector {
        let entries = (0..self.space.len())
            .map(|w| {
                let mut sum = 0.0;
                for (mask, comp) in self.components.iter().enumerate() {
                    let key = EventKey::from_mask(mask as u32);
                    sum += comp(value(key), key.contains(w));
                }
                ExtendedReal::finite(sum)
            })
            .collect();
        ScoreVector::new(self.space.clone(), entries).expect("entry per outcome")
    }
}

impl ScoringRule for AdditiveRule {
    fn name(&self) -> String {
        format!("additive:{}", self.label)
    }

    fn space(&self) -> &SampleSpace {
        &self.space
    }

    fn upper_bound(&self) -> f64 {
        self.upper_bound
    }

    fn domain(&self) -> RuleDomain {
        RuleDomain::AllCredences
    }

    fn finite_on_probabilities(&self) -> bool {
        true
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError> {
        check_space(self, p.space())?;
        Ok(self.score_table(|key| p.event_value(key)))
    }

    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        check_space(self, c.space())?;
        Ok(self.score_table(|key| c.value(key)))
    }
}
