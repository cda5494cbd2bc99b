//! Grid summaries of a rule's finiteness behaviour.

use serde::{Deserialize, Serialize};

use crate::simplex::sample_simplex;

use super::{RuleDomain, RuleError, ScoringRule};

/// Which grid probabilities produce infinite score entries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleReport {
    pub rule: String,
    pub domain: RuleDomain,
    pub upper_bound: f64,
    pub grid_resolution: usize,
    pub grid_points: usize,
    pub finite_points: usize,
    /// Weights of grid probabilities with at least one infinite entry.
    pub infinite_points: Vec<Vec<f64>>,
}

pub fn rule_report(rule: &dyn ScoringRule, resolution: usize) -> Result<RuleReport, RuleError> {
    let grid = sample_simplex(rule.space(), resolution, false);
    let mut infinite_points = Vec::new();
    for p in &grid {
        let s = rule.score_probability(p)?;
        if !s.is_finite() {
            infinite_points.push(p.weights().to_vec());
        }
    }
    Ok(RuleReport {
        rule: rule.name(),
        domain: rule.domain(),
        upper_bound: rule.upper_bound(),
        grid_resolution: resolution,
        grid_points: grid.len(),
        finite_points: grid.len() - infinite_points.len(),
        infinite_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{BrierRule, LogRule};
    use crate::space::SampleSpace;

    #[test]
    fn log_rule_reports_the_degenerate_grid_points() {
        let space = SampleSpace::with_outcomes(2).unwrap();
        let report = rule_report(&LogRule::new(space), 4).unwrap();
        assert_eq!(report.grid_points, 5);
        assert_eq!(report.finite_points, 3);
        assert_eq!(report.infinite_points.len(), 2);
    }

    #[test]
    fn brier_is_finite_everywhere() {
        let space = SampleSpace::with_outcomes(3).unwrap();
        let report = rule_report(&BrierRule::new(space), 6).unwrap();
        assert_eq!(report.finite_points, report.grid_points);
        assert!(report.infinite_points.is_empty());
    }
}
