//! Credence functions (arbitrary forecasts) and probability functions
//! (coherent ones), plus the coherence validator connecting the two.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::space::{EventKey, SampleSpace};

#[derive(Debug, Error, PartialEq)]
pub enum CoherenceError {
    #[error("credence table has {got} entries, expected {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("value for event {event} is not finite")]
    NonFiniteValue { event: EventKey },
    #[error("additivity fails at event {event}: |c(A) - sum of singletons| = {discrepancy}")]
    Incoherent { event: EventKey, discrepancy: f64 },
    #[error("singleton weight for outcome {outcome} is negative: {value}")]
    NegativeWeight { outcome: usize, value: f64 },
    #[error("weights must be non-negative and sum to 1, got sum {sum}")]
    BadWeights { sum: f64 },
    #[error("credence file: {0}")]
    File(String),
}

/// Default tolerance for coherence checks and weight normalization.
pub const COHERENCE_TOL: f64 = 1e-9;

/// A forecast: one finite real per event of the power set. Need not be
/// coherent.
#[derive(Clone, Debug, PartialEq)]
pub struct Credence {
    space: SampleSpace,
    values: Vec<f64>,
}

impl Credence {
    /// `values[mask]` is the credence of the event with that mask; all
    /// `2^n` events must be present and finite.
    pub fn new(space: SampleSpace, values: Vec<f64>) -> Result<Self, CoherenceError> {
        if values.len() != space.event_count() {
            return Err(CoherenceError::LengthMismatch {
                got: values.len(),
                want: space.event_count(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(CoherenceError::NonFiniteValue { event: EventKey::from_mask(i as u32) });
        }
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn value(&self, event: EventKey) -> f64 {
        self.values[event.mask() as usize]
    }

    pub fn singleton_value(&self, outcome: usize) -> f64 {
        self.value(self.space.singleton(outcome))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Parses the JSON credence file format:
    /// `{"outcomes": [...], "credences": {"<mask>": value, ...}}`.
    pub fn from_json(text: &str) -> Result<Self, CoherenceError> {
        let file: CredenceFile =
            serde_json::from_str(text).map_err(|e| CoherenceError::File(e.to_string()))?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        let file = CredenceFile::from(self);
        serde_json::to_string_pretty(&file).expect("credence file serializes")
    }
}

/// On-disk form of a credence: outcome labels plus a dense mask-to-value map.
#[derive(Debug, Serialize, Deserialize)]
pub struct CredenceFile {
    pub outcomes: Vec<String>,
    pub credences: BTreeMap<String, f64>,
}

impl From<&Credence> for CredenceFile {
    fn from(c: &Credence) -> Self {
        let credences = c
            .values
            .iter()
            .enumerate()
            .map(|(mask, &v)| (mask.to_string(), v))
            .collect();
        Self { outcomes: c.space.labels().to_vec(), credences }
    }
}

impl TryFrom<CredenceFile> for Credence {
    type Error = CoherenceError;

    fn try_from(file: CredenceFile) -> Result<Self, CoherenceError> {
        let space = SampleSpace::new(file.outcomes).map_err(|e| CoherenceError::File(e.to_string()))?;
        let mut values = vec![f64::NAN; space.event_count()];
        for (key, value) in &file.credences {
            let mask: u32 = key
                .parse()
                .map_err(|_| CoherenceError::File(format!("bad event mask key {key:?}")))?;
            if mask as usize >= space.event_count() {
                return Err(CoherenceError::File(format!("mask {mask} out of range")));
            }
            values[mask as usize] = *value;
        }
        if let Some(mask) = values.iter().position(|v| v.is_nan()) {
            return Err(CoherenceError::File(format!("event mask {mask} missing from file")));
        }
        Credence::new(space, values)
    }
}

/// A probability function, stored by its singleton weights. Event values are
/// derived by additivity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Probability {
    space: SampleSpace,
    weights: Vec<f64>,
    regular: bool,
}

impl Probability {
    /// Validates non-negativity and unit total (within [`COHERENCE_TOL`]).
    pub fn from_weights(space: SampleSpace, weights: Vec<f64>) -> Result<Self, CoherenceError> {
        if weights.len() != space.len() {
            return Err(CoherenceError::LengthMismatch { got: weights.len(), want: space.len() });
        }
        if let Some((i, &w)) = weights.iter().enumerate().find(|(_, w)| **w < 0.0 || !w.is_finite())
        {
            return Err(CoherenceError::NegativeWeight { outcome: i, value: w });
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > COHERENCE_TOL {
            return Err(CoherenceError::BadWeights { sum });
        }
        let regular = weights.iter().all(|&w| w > 0.0);
        Ok(Self { space, weights, regular })
    }

    pub fn uniform(space: SampleSpace) -> Self {
        let n = space.len();
        Self::from_weights(space, vec![1.0 / n as f64; n]).expect("uniform weights are coherent")
    }

    /// Point mass on one outcome.
    pub fn vertex(space: SampleSpace, outcome: usize) -> Self {
        let mut w = vec![0.0; space.len()];
        w[outcome] = 1.0;
        Self::from_weights(space, w).expect("vertex weights are coherent")
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, outcome: usize) -> f64 {
        self.weights[outcome]
    }

    /// Strictly positive on every outcome.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// `p(A)` by additivity over the singletons in `A`.
    pub fn event_value(&self, event: EventKey) -> f64 {
        event.outcomes().map(|i| self.weights[i]).sum()
    }

    /// The induced credence table over the full power set.
    pub fn to_credence(&self) -> Credence {
        let values = self.space.events().map(|a| self.event_value(a)).collect();
        Credence::new(self.space.clone(), values).expect("induced table is well formed")
    }

    /// Exact weight-vector equality; grid points compare reliably because the
    /// lattice-to-float conversion happens once.
    pub fn same_weights(&self, other: &Probability) -> bool {
        self.weights == other.weights
    }

    pub fn linf_distance(&self, other: &Probability) -> f64 {
        self.weights
            .iter()
            .zip(&other.weights)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Checks a credence for coherence and returns the probability it induces.
///
/// Succeeds iff `c(∅) = 0`, `c(Ω) = 1`, and every event value equals the sum
/// of its singleton values within `tol`. Singleton values in `[-tol, 0)` are
/// clamped to zero; more negative ones are rejected.
pub fn validate_probability(c: &Credence, tol: f64) -> Result<Probability, CoherenceError> {
    assert!(tol >= 0.0);
    let space = c.space();
    let n = space.len();

    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let v = c.singleton_value(i);
        if v < -tol {
            return Err(CoherenceError::NegativeWeight { outcome: i, value: v });
        }
        weights.push(v.max(0.0));
    }

    // Worst additivity discrepancy over the whole power set; the Omega row
    // also enforces the unit total because c(Omega) must equal 1.
    let mut worst: Option<(EventKey, f64)> = None;
    for event in space.events() {
        let expect: f64 = event.outcomes().map(|i| weights[i]).sum();
        let target = if event == space.full_event() {
            // both c(Omega) = 1 and additivity must hold there
            if (c.value(event) - 1.0).abs() > tol {
                let d = (c.value(event) - 1.0).abs();
                if worst.map_or(true, |(_, w)| d > w) {
                    worst = Some((event, d));
                }
            }
            expect
        } else {
            expect
        };
        let d = (c.value(event) - target).abs();
        if d > tol && worst.map_or(true, |(_, w)| d > w) {
            worst = Some((event, d));
        }
    }
    if let Some((event, discrepancy)) = worst {
        return Err(CoherenceError::Incoherent { event, discrepancy });
    }

    // Additivity at Omega plus c(Omega) = 1 bounds the sum near 1; normalize
    // the residue so downstream weight invariants hold exactly.
    let sum: f64 = weights.iter().sum();
    let weights: Vec<f64> = weights.iter().map(|w| w / sum).collect();
    Probability::from_weights(space.clone(), weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space2() -> SampleSpace {
        SampleSpace::with_outcomes(2).unwrap()
    }

    #[test]
    fn superadditive_credence_is_flagged_at_omega() {
        // c(∅)=0, c({1})=0.6, c({2})=0.6, c(Ω)=1
        let c = Credence::new(space2(), vec![0.0, 0.6, 0.6, 1.0]).unwrap();
        match validate_probability(&c, COHERENCE_TOL) {
            Err(CoherenceError::Incoherent { event, discrepancy }) => {
                assert_eq!(event, space2().full_event());
                assert!((discrepancy - 0.2).abs() < 1e-12);
            }
            other => panic!("expected Incoherent, got {other:?}"),
        }
    }

    #[test]
    fn uniform_coherent_table_validates() {
        let c = Credence::new(space2(), vec![0.0, 0.5, 0.5, 1.0]).unwrap();
        let p = validate_probability(&c, COHERENCE_TOL).unwrap();
        assert_eq!(p.weights(), &[0.5, 0.5]);
        assert!(p.is_regular());
    }

    #[test]
    fn negative_singleton_is_rejected_first() {
        let c = Credence::new(space2(), vec![0.0, -0.1, 1.1, 1.0]).unwrap();
        match validate_probability(&c, COHERENCE_TOL) {
            Err(CoherenceError::NegativeWeight { outcome: 0, value }) => {
                assert!((value + 0.1).abs() < 1e-12)
            }
            other => panic!("expected NegativeWeight, got {other:?}"),
        }
    }

    #[test]
    fn vertex_probability_is_not_regular() {
        let p = Probability::vertex(space2(), 0);
        assert!(!p.is_regular());
        assert_eq!(p.event_value(space2().full_event()), 1.0);
    }

    #[test]
    fn credence_file_round_trips() {
        let c = Credence::new(space2(), vec![0.0, 0.6, 0.6, 1.0]).unwrap();
        let json = c.to_json();
        let back = Credence::from_json(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn credence_file_requires_every_mask() {
        let json = r#"{"outcomes": ["a", "b"], "credences": {"0": 0.0, "1": 0.5, "3": 1.0}}"#;
        assert!(matches!(Credence::from_json(json), Err(CoherenceError::File(_))));
    }

    proptest! {
        // validate ∘ (probability -> induced credence) is the identity up to tol
        #[test]
        fn induced_tables_validate_back(raw in proptest::collection::vec(0.01f64..1.0, 2..5)) {
            let sum: f64 = raw.iter().sum();
            let weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
            let space = SampleSpace::with_outcomes(weights.len()).unwrap();
            let p = Probability::from_weights(space, weights).unwrap();
            let back = validate_probability(&p.to_credence(), COHERENCE_TOL).unwrap();
            for (a, b) in p.weights().iter().zip(back.weights()) {
                prop_assert!((a - b).abs() <= COHERENCE_TOL);
            }
        }
    }
}
