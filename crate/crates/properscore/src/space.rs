//! Finite sample spaces and their events.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on outcomes so the dense power-set representation stays at
/// `2^n <= 65536` events.
pub const MAX_OUTCOMES: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("sample space needs between 1 and {MAX_OUTCOMES} outcomes, got {0}")]
    BadSize(usize),
    #[error("outcome labels must be distinct, `{0}` repeats")]
    DuplicateLabel(String),
    #[error("event mask {mask} out of range for {outcomes} outcomes")]
    MaskOutOfRange { mask: u32, outcomes: usize },
}

/// A finite sample space: outcomes `0..n` with human-readable labels.
///
/// Cloning is cheap (labels are shared), so values can carry their space
/// around freely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpace {
    labels: Arc<Vec<String>>,
}

impl SampleSpace {
    pub fn new(labels: Vec<String>) -> Result<Self, SpaceError> {
        if labels.is_empty() || labels.len() > MAX_OUTCOMES {
            return Err(SpaceError::BadSize(labels.len()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(SpaceError::DuplicateLabel(a.clone()));
            }
        }
        Ok(Self { labels: Arc::new(labels) })
    }

    /// Space with `n` outcomes labelled `o1..on`.
    pub fn with_outcomes(n: usize) -> Result<Self, SpaceError> {
        Self::new((1..=n).map(|i| format!("o{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of events, `2^n`.
    pub fn event_count(&self) -> usize {
        1usize << self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, outcome: usize) -> &str {
        &self.labels[outcome]
    }

    /// All event keys in mask order, `∅` first, the full space last.
    pub fn events(&self) -> impl Iterator<Item = EventKey> + '_ {
        (0..self.event_count() as u32).map(EventKey::from_mask)
    }

    pub fn empty_event(&self) -> EventKey {
        EventKey::from_mask(0)
    }

    pub fn full_event(&self) -> EventKey {
        EventKey::from_mask(self.event_count() as u32 - 1)
    }

    pub fn singleton(&self, outcome: usize) -> EventKey {
        debug_assert!(outcome < self.len());
        EventKey::from_mask(1 << outcome)
    }

    pub fn check_mask(&self, key: EventKey) -> Result<(), SpaceError> {
        if (key.mask() as usize) < self.event_count() {
            Ok(())
        } else {
            Err(SpaceError::MaskOutOfRange { mask: key.mask(), outcomes: self.len() })
        }
    }
}

/// An event as a bitmask over outcomes: bit `i` set means outcome `i` is in
/// the event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventKey(u32);

impl EventKey {
    pub fn from_mask(mask: u32) -> Self {
        Self(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, outcome: usize) -> bool {
        self.0 >> outcome & 1 == 1
    }

    /// Indicator `1_A(omega)` as a float, handy in score formulas.
    pub fn indicator(self, outcome: usize) -> f64 {
        if self.contains(outcome) {
            1.0
        } else {
            0.0
        }
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn outcomes(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

impl fmt::Display for EventKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_oversized_spaces() {
        assert_eq!(SampleSpace::new(vec![]), Err(SpaceError::BadSize(0)));
        assert!(SampleSpace::with_outcomes(MAX_OUTCOMES).is_ok());
        assert_eq!(
            SampleSpace::with_outcomes(MAX_OUTCOMES + 1),
            Err(SpaceError::BadSize(MAX_OUTCOMES + 1))
        );
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err = SampleSpace::new(vec!["a".into(), "a".into()]).unwrap_err();
        assert_eq!(err, SpaceError::DuplicateLabel("a".into()));
    }

    #[test]
    fn event_enumeration_is_dense() {
        let space = SampleSpace::with_outcomes(3).unwrap();
        let events: Vec<_> = space.events().collect();
        assert_eq!(events.len(), 8);
        assert_eq!(events[0], space.empty_event());
        assert_eq!(events[7], space.full_event());
        assert_eq!(space.full_event().size(), 3);
        assert!(space.check_mask(EventKey::from_mask(8)).is_err());
    }

    #[test]
    fn masks_index_outcomes() {
        let key = EventKey::from_mask(0b101);
        assert!(key.contains(0));
        assert!(!key.contains(1));
        assert!(key.contains(2));
        assert_eq!(key.outcomes().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(key.indicator(1), 0.0);
    }
}
