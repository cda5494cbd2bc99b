//! Scoring-rule catalog.
//!
//! Every rule variant sits behind [`ScoringRule`] and is registered by name
//! in [`RuleRegistry`], so callers select rules at runtime from spec strings
//! like `brier`, `two-circle`, `s-alpha:base=brier,alpha=-3`, or
//! `extended:base=two-circle,x=[1.15711,1.15711]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::credence::{validate_probability, Credence, Probability, COHERENCE_TOL};
use crate::ereal::ExtendedReal;
use crate::score::ScoreVector;
use crate::simplex::sample_simplex;
use crate::space::SampleSpace;

mod additive;
mod boundary_bonus;
mod brier;
mod extended;
mod logarithmic;
mod report;
mod s_alpha;
mod spherical;
mod two_circle;

pub use additive::AdditiveRule;
pub use boundary_bonus::BoundaryBonusRule;
pub use brier::BrierRule;
pub use extended::{extend_with_vector, ExtendedRule};
pub use logarithmic::LogRule;
pub use report::{rule_report, RuleReport};
pub use s_alpha::{s_alpha_transform, SAlphaRule};
pub use spherical::SphericalRule;
pub use two_circle::TwoCircleRule;

#[derive(Debug, Error, PartialEq)]
pub enum RuleError {
    #[error("rule `{rule}` cannot score this input: {detail}")]
    DomainViolation { rule: String, detail: String },
    #[error("spherical score undefined: all singleton weights are zero")]
    ZeroVector,
    #[error("alpha = {alpha} exceeds the least score entry {floor} of the base rule")]
    BadAlpha { alpha: f64, floor: f64 },
    #[error("bad rule specification: {0}")]
    BadSpec(String),
    #[error("fill entry {entry} exceeds the rule bound M = {bound}")]
    EntryAboveM { entry: f64, bound: f64 },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("input lives on a different sample space")]
    SpaceMismatch,
}

/// Which forecasts a rule can score directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleDomain {
    AllCredences,
    ProbabilitiesOnly,
}

/// An accuracy scoring rule: per-outcome scores in `[-inf, M]`, higher is
/// more accurate. Rules are immutable descriptors; scoring is pure, so
/// concurrent evaluation is safe.
pub trait ScoringRule: Send + Sync + std::fmt::Debug {
    /// Identity string, including parameters, matching the registry syntax.
    fn name(&self) -> String;

    fn space(&self) -> &SampleSpace;

    /// Finite upper bound `M` on every score entry.
    fn upper_bound(&self) -> f64;

    fn domain(&self) -> RuleDomain;

    /// Whether every probability receives an all-finite score.
    fn finite_on_probabilities(&self) -> bool;

    /// Analytic infimum of score entries over all probabilities, where known.
    fn probability_score_floor(&self) -> Option<ExtendedReal> {
        None
    }

    fn score_probability(&self, p: &Probability) -> Result<ScoreVector, RuleError>;

    /// Scores an arbitrary credence. The default accepts coherent tables by
    /// validating them into probabilities and rejects the rest, which is the
    /// right behaviour for `ProbabilitiesOnly` rules.
    fn score_credence(&self, c: &Credence) -> Result<ScoreVector, RuleError> {
        match validate_probability(c, COHERENCE_TOL) {
            Ok(p) => self.score_probability(&p),
            Err(_) => Err(RuleError::DomainViolation {
                rule: self.name(),
                detail: "rule is defined on probabilities only".into(),
            }),
        }
    }
}

pub(crate) fn check_space(rule: &dyn ScoringRule, other: &SampleSpace) -> Result<(), RuleError> {
    if rule.space() == other {
        Ok(())
    } else {
        Err(RuleError::SpaceMismatch)
    }
}

/// Least score entry observed on a lattice grid; an upper bound on the true
/// infimum, used to vet `alpha` parameters when no analytic floor is known.
pub fn sampled_score_floor(rule: &dyn ScoringRule, k: usize) -> Result<ExtendedReal, RuleError> {
    let mut floor = ExtendedReal::finite(rule.upper_bound());
    for p in sample_simplex(rule.space(), k, false) {
        let s = rule.score_probability(&p)?;
        for e in s.entries() {
            if e.total_cmp(&floor) == std::cmp::Ordering::Less {
                floor = *e;
            }
        }
    }
    Ok(floor)
}

/// Key-value parameters parsed from a rule spec string.
#[derive(Clone, Debug, Default)]
pub struct RuleParams(BTreeMap<String, String>);

impl RuleParams {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, RuleError> {
        self.get(key)
            .ok_or_else(|| RuleError::BadSpec(format!("missing parameter `{key}`")))
    }

    pub fn f64(&self, key: &str) -> Result<f64, RuleError> {
        let raw = self.require(key)?;
        if raw == "-inf" {
            return Ok(f64::NEG_INFINITY);
        }
        raw.parse()
            .map_err(|_| RuleError::BadSpec(format!("parameter `{key}`: {raw:?} is not a number")))
    }

    /// Score-vector parameter: inline JSON array (`[1.0,"-inf"]`) or a path
    /// to a JSON file holding one.
    pub fn score_vector(&self, key: &str, space: &SampleSpace) -> Result<ScoreVector, RuleError> {
        let raw = self.require(key)?;
        let text = if raw.trim_start().starts_with('[') {
            raw.to_string()
        } else {
            std::fs::read_to_string(raw)
                .map_err(|e| RuleError::BadSpec(format!("cannot read `{raw}`: {e}")))?
        };
        let entries: Vec<ExtendedReal> = serde_json::from_str(&text)
            .map_err(|e| RuleError::BadSpec(format!("parameter `{key}`: {e}")))?;
        ScoreVector::new(space.clone(), entries)
            .map_err(|e| RuleError::BadSpec(format!("parameter `{key}`: {e}")))
    }
}

type RuleBuilder =
    fn(&RuleRegistry, &SampleSpace, &RuleParams) -> Result<Box<dyn ScoringRule>, RuleError>;

/// Name-keyed registry of rule constructors.
pub struct RuleRegistry {
    builders: BTreeMap<&'static str, RuleBuilder>,
}

impl RuleRegistry {
    /// Registry holding the built-in catalog.
    pub fn with_catalog() -> Self {
        let mut reg = Self { builders: BTreeMap::new() };
        reg.register("brier", |_, space, _| {
            Ok(Box::new(BrierRule::new(space.clone())) as Box<dyn ScoringRule>)
        });
        reg.register("spherical", |_, space, _| Ok(Box::new(SphericalRule::new(space.clone()))));
        reg.register("log", |_, space, _| Ok(Box::new(LogRule::new(space.clone()))));
        reg.register("two-circle", |_, space, _| {
            TwoCircleRule::new(space.clone()).map(|r| Box::new(r) as Box<dyn ScoringRule>)
        });
        reg.register("boundary-bonus", |_, space, _| {
            BoundaryBonusRule::new(space.clone()).map(|r| Box::new(r) as Box<dyn ScoringRule>)
        });
        reg.register("s-alpha", |reg, space, params| {
            let base = reg.build(params.require("base")?, space)?;
            let alpha = ExtendedReal::from(params.f64("alpha")?);
            SAlphaRule::new(base, alpha).map(|r| Box::new(r) as Box<dyn ScoringRule>)
        });
        reg.register("extended", |reg, space, params| {
            let base = reg.build(params.require("base")?, space)?;
            let fill = params.score_vector("x", space)?;
            ExtendedRule::new(base, fill).map(|r| Box::new(r) as Box<dyn ScoringRule>)
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, builder: RuleBuilder) {
        self.builders.insert(name, builder);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.builders.keys().copied()
    }

    /// Builds a rule from a spec string `name` or `name:key=value,...`.
    pub fn build(&self, spec: &str, space: &SampleSpace) -> Result<Box<dyn ScoringRule>, RuleError> {
        let (name, params) = parse_spec(spec)?;
        let builder = self
            .builders
            .get(name.as_str())
            .ok_or_else(|| RuleError::UnknownRule(name.clone()))?;
        builder(self, space, &params)
    }
}

/// Splits `name:key=value,key=value`. Values may contain `[...]` lists with
/// embedded commas (used for inline score vectors).
fn parse_spec(spec: &str) -> Result<(String, RuleParams), RuleError> {
    let spec = spec.trim();
    let (name, rest) = match spec.split_once(':') {
        None => return Ok((spec.to_string(), RuleParams::default())),
        Some((n, r)) => (n.trim().to_string(), r),
    };
    let mut params = BTreeMap::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let bytes = rest.as_bytes();
    let mut pieces = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'[' => depth += 1,
            b']' => depth = depth.saturating_sub(1),
            b',' if depth == 0 => {
                pieces.push(&rest[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(&rest[start..]);
    for piece in pieces {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (k, v) = piece
            .split_once('=')
            .ok_or_else(|| RuleError::BadSpec(format!("expected key=value, got {piece:?}")))?;
        params.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok((name, RuleParams(params)))
}
