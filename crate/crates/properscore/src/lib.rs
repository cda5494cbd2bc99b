//! Accuracy scoring rules over finite sample spaces.
//!
//! A forecast (credence function) assigns a real number to every event of a
//! finite sample space; coherent forecasts are probability functions. An
//! accuracy scoring rule maps forecasts to per-outcome scores in `[-inf, M]`,
//! higher being better. This crate makes the surrounding theory executable:
//!
//! * [`rules`] — a catalog of scoring rules (Brier, spherical, logarithmic,
//!   additive, a two-arc rule with a positive-facing hull gap, a
//!   boundary-bonus rule with a self-score limit jump, zero-weight tweaks,
//!   and constant extensions to incoherent forecasts), each behind the
//!   [`rules::ScoringRule`] trait and constructible by name through
//!   [`rules::RuleRegistry`].
//! * [`propriety`] — grid-based verification of propriety, strict propriety
//!   and quasi-strict propriety, the support-function identity, and
//!   self-score limits along paths to degenerate probabilities.
//! * [`geometry`] — finite score samples, support functions, positive-normal
//!   certificates, density-gap scans of the positive-facing hull boundary,
//!   a product-of-coordinates maximizer over polytopes, and the safe radius
//!   below which no point can be weakly dominated from outside a band.
//! * [`dominance`] — repair of incoherent forecasts by probabilities whose
//!   scores strictly dominate them, Brier-specific projection repair,
//!   counterexample witnesses when repair is impossible, and the aggregate
//!   condition check that separates the two regimes.
//!
//! All computation is desk-scale and deterministic: grids are rational
//! lattices, randomness is seeded, and every verdict records the resolution
//! and tolerance it was reached at.

pub mod credence;
pub mod dominance;
pub mod ereal;
pub mod geometry;
pub mod propriety;
pub mod rules;
pub mod score;
pub mod simplex;
pub mod space;

pub use credence::{validate_probability, CoherenceError, Credence, Probability};
pub use ereal::{extended_dot, ExtendedReal};
pub use score::{expected_score, linf_distance, ScoreVector};
pub use simplex::sample_simplex;
pub use space::{EventKey, SampleSpace};
