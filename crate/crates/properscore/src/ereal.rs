//! Extended reals `[-inf, +inf)` and the extended scalar product.
//!
//! Accuracy scores live in `[-inf, M]`, so only negative infinity occurs.
//! Multiplication follows the stipulation `a * 0 = 0 * a = 0` for every `a`,
//! finite or not, which is what makes expectations of infinite scores under
//! zero-weight outcomes well defined.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// A finite real or negative infinity. Never NaN, never `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub enum ExtendedReal {
    NegInf,
    Finite(f64),
}

use ExtendedReal::{Finite, NegInf};

impl ExtendedReal {
    /// Wraps a finite value.
    ///
    /// Panics on NaN or infinities: those never arise from valid score
    /// arithmetic, so hitting one is a bug at the call site.
    pub fn finite(x: f64) -> Self {
        assert!(x.is_finite(), "ExtendedReal::finite called with {x}");
        Finite(x)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            NegInf => None,
            Finite(x) => Some(x),
        }
    }

    /// Collapses to `f64`, mapping `NegInf` to `f64::NEG_INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            NegInf => f64::NEG_INFINITY,
            Finite(x) => x,
        }
    }

    /// Scales by a strictly positive factor; infinity stays infinite.
    pub fn scale(self, factor: f64) -> Self {
        debug_assert!(factor > 0.0 && factor.is_finite());
        match self {
            NegInf => NegInf,
            Finite(x) => Self::finite(factor * x),
        }
    }

    /// Weighted value under the `0 * a = 0` stipulation.
    pub fn weighted(self, weight: f64) -> Self {
        debug_assert!(weight >= 0.0, "weights must be non-negative, got {weight}");
        if weight == 0.0 {
            return Finite(0.0);
        }
        match self {
            NegInf => NegInf,
            Finite(x) => Self::finite(weight * x),
        }
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (NegInf, NegInf) => Ordering::Equal,
            (NegInf, Finite(_)) => Ordering::Less,
            (Finite(_), NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.total_cmp(b),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        if x == f64::NEG_INFINITY {
            NegInf
        } else {
            Self::finite(x)
        }
    }
}

impl Add for ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Self::finite(a + b),
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => write!(f, "-inf"),
            Finite(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            NegInf => serializer.serialize_str("-inf"),
            Finite(x) => serializer.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> Result<ExtendedReal, E> {
                if x.is_finite() {
                    Ok(Finite(x))
                } else {
                    Err(E::custom(format!("non-finite number {x}")))
                }
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> Result<ExtendedReal, E> {
                Ok(Finite(x as f64))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> Result<ExtendedReal, E> {
                Ok(Finite(x as f64))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<ExtendedReal, E> {
                match s {
                    "-inf" | "-Infinity" => Ok(NegInf),
                    other => Err(E::custom(format!("expected \"-inf\", got {other:?}"))),
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

/// Extended scalar product `sum_i f(i) * g(i)` for `f` in `[0,1]^n` and `g`
/// in `[-inf, inf)^n`, under the `0 * a = 0` stipulation.
///
/// Any strictly positive weight on a `-inf` entry makes the whole product
/// `-inf`; zero weights contribute nothing regardless of `g`.
pub fn extended_dot(weights: &[f64], values: &[ExtendedReal]) -> ExtendedReal {
    assert_eq!(weights.len(), values.len(), "extended_dot length mismatch");
    let mut sum = 0.0;
    for (&w, &v) in weights.iter().zip(values) {
        debug_assert!(w >= 0.0, "extended_dot weight {w} is negative");
        if w == 0.0 {
            continue;
        }
        match v {
            NegInf => return NegInf,
            Finite(x) => sum += w * x,
        }
    }
    ExtendedReal::finite(sum)
}

/// Plain dot product for finite slices; used on hot geometry paths where
/// scores are known finite. Agrees with [`extended_dot`] there.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
