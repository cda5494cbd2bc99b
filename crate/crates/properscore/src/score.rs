//! Per-outcome score vectors and expectations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::Probability;
use crate::ereal::{extended_dot, ExtendedReal};
use crate::space::SampleSpace;

#[derive(Debug, Error, PartialEq)]
pub enum ScoreError {
    #[error("score vector has {got} entries for a space of {want} outcomes")]
    LengthMismatch { got: usize, want: usize },
    #[error("operands live on different sample spaces")]
    SpaceMismatch,
}

/// A score vector: one entry in `[-inf, M]` per outcome.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreVector {
    space: SampleSpace,
    entries: Vec<ExtendedReal>,
}

impl ScoreVector {
    pub fn new(space: SampleSpace, entries: Vec<ExtendedReal>) -> Result<Self, ScoreError> {
        if entries.len() != space.len() {
            return Err(ScoreError::LengthMismatch { got: entries.len(), want: space.len() });
        }
        Ok(Self { space, entries })
    }

    /// Builds from finite values; `f64::NEG_INFINITY` maps to the infinite
    /// entry, other non-finite values panic.
    pub fn from_f64(space: SampleSpace, values: &[f64]) -> Result<Self, ScoreError> {
        let entries = values.iter().map(|&x| ExtendedReal::from(x)).collect();
        Self::new(space, entries)
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ExtendedReal] {
        &self.entries
    }

    pub fn get(&self, outcome: usize) -> ExtendedReal {
        self.entries[outcome]
    }

    /// A score is finite when every entry is.
    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| e.is_finite())
    }

    pub fn finite_entries(&self) -> Option<Vec<f64>> {
        self.entries.iter().map(|e| e.as_finite()).collect()
    }

    /// Largest entry; `None` on all-infinite vectors.
    pub fn max_entry(&self) -> Option<f64> {
        self.entries.iter().filter_map(|e| e.as_finite()).fold(None, |m, x| {
            Some(match m {
                None => x,
                Some(y) => y.max(x),
            })
        })
    }

    /// True when `self` beats `other` at every outcome. An infinite entry in
    /// `self` can never strictly exceed anything at that outcome.
    pub fn strictly_dominates(&self, other: &ScoreVector) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.total_cmp(b) == std::cmp::Ordering::Greater)
    }

    pub fn weakly_dominates(&self, other: &ScoreVector) -> bool {
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a.total_cmp(b) != std::cmp::Ordering::Less)
    }
}

/// Expected score of `f` by the lights of `p`: zero-weight outcomes
/// contribute nothing even when their score is `-inf`.
pub fn expected_score(p: &Probability, f: &ScoreVector) -> Result<ExtendedReal, ScoreError> {
    if p.space() != f.space() {
        return Err(ScoreError::SpaceMismatch);
    }
    Ok(extended_dot(p.weights(), f.entries()))
}

/// Sup-norm distance between score vectors.
///
/// `|-inf - finite|` is reported as `f64::INFINITY`; two infinite entries at
/// the same outcome are at distance zero.
pub fn linf_distance(f: &ScoreVector, g: &ScoreVector) -> Result<f64, ScoreError> {
    if f.space() != g.space() {
        return Err(ScoreError::SpaceMismatch);
    }
    let mut max = 0.0f64;
    for (a, b) in f.entries().iter().zip(g.entries()) {
        let d = match (a.as_finite(), b.as_finite()) {
            (Some(x), Some(y)) => (x - y).abs(),
            (None, None) => 0.0,
            _ => return Ok(f64::INFINITY),
        };
        max = max.max(d);
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ereal::ExtendedReal::{Finite, NegInf};

    fn space2() -> SampleSpace {
        SampleSpace::with_outcomes(2).unwrap()
    }

    #[test]
    fn expected_score_follows_the_stipulation() {
        let sp = space2();
        let p = Probability::from_weights(sp.clone(), vec![1.0, 0.0]).unwrap();
        let f = ScoreVector::new(sp.clone(), vec![Finite(-3.0), NegInf]).unwrap();
        assert_eq!(expected_score(&p, &f).unwrap(), Finite(-3.0));

        let q = Probability::from_weights(sp.clone(), vec![0.5, 0.5]).unwrap();
        let g = ScoreVector::new(sp.clone(), vec![Finite(-1.0), Finite(-3.0)]).unwrap();
        assert_eq!(expected_score(&q, &g).unwrap(), Finite(-2.0));

        let h = ScoreVector::new(sp, vec![NegInf, Finite(0.0)]).unwrap();
        assert_eq!(expected_score(&q, &h).unwrap(), NegInf);
    }

    #[test]
    fn expected_score_rejects_space_mismatch() {
        let p = Probability::from_weights(space2(), vec![0.5, 0.5]).unwrap();
        let other = SampleSpace::with_outcomes(3).unwrap();
        let f = ScoreVector::from_f64(other, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(expected_score(&p, &f), Err(ScoreError::SpaceMismatch));
    }

    #[test]
    fn linf_distance_handles_infinities() {
        let sp = space2();
        let f = ScoreVector::from_f64(sp.clone(), &[1.0, 2.0]).unwrap();
        let g = ScoreVector::from_f64(sp.clone(), &[1.5, 1.8]).unwrap();
        assert_eq!(linf_distance(&f, &g).unwrap(), 0.5);

        let a = ScoreVector::new(sp.clone(), vec![NegInf, Finite(0.0)]).unwrap();
        let b = ScoreVector::new(sp.clone(), vec![NegInf, Finite(0.0)]).unwrap();
        assert_eq!(linf_distance(&a, &b).unwrap(), 0.0);

        let c = ScoreVector::from_f64(sp, &[0.0, 0.0]).unwrap();
        assert_eq!(linf_distance(&a, &c).unwrap(), f64::INFINITY);
    }

    #[test]
    fn domination_is_strict_everywhere() {
        let sp = space2();
        let lo = ScoreVector::new(sp.clone(), vec![Finite(-1.0), NegInf]).unwrap();
        let hi = ScoreVector::from_f64(sp.clone(), &[0.0, 0.0]).unwrap();
        assert!(hi.strictly_dominates(&lo));
        assert!(!lo.strictly_dominates(&hi));
        // -inf never strictly exceeds -inf
        let also_inf = ScoreVector::new(sp, vec![Finite(0.0), NegInf]).unwrap();
        assert!(!also_inf.strictly_dominates(&lo));
        assert!(also_inf.weakly_dominates(&lo));
    }
}
