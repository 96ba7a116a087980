use std::fmt;

use serde::Serialize;

use super::RelianceError;
use crate::TOLERANCE;

/// A unitless quantity in `[0, 1]`.
///
/// Values within [`TOLERANCE`] outside the unit interval are clamped onto it, so results
/// of affine formulas that land at `-1e-17` stay representable.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct Fraction(f64);

impl Fraction {
    pub const ZERO: Fraction = Fraction(0.0);
    pub const ONE: Fraction = Fraction(1.0);

    pub fn new(value: f64) -> Result<Self, RelianceError> {
        Self::named("fraction", value)
    }

    pub(crate) fn named(name: &'static str, value: f64) -> Result<Self, RelianceError> {
        if value.is_nan() || !(-TOLERANCE..=1.0 + TOLERANCE).contains(&value) {
            return Err(RelianceError::Domain { name, value });
        }
        Ok(Fraction(value.clamp(0.0, 1.0)))
    }

    /// For results that are in `[0, 1]` by construction.
    pub(crate) fn clamped(value: f64) -> Self {
        debug_assert!(
            (-TOLERANCE..=1.0 + TOLERANCE).contains(&value),
            "value {value} escaped the unit interval"
        );
        Fraction(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Fraction {
        Fraction(1.0 - self.0)
    }

    pub fn approx_eq(self, other: Fraction, tolerance: f64) -> bool {
        (self.0 - other.0).abs() <= tolerance
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.1}%", self.0 * 100.0)
    }
}

impl From<Fraction> for f64 {
    fn from(f: Fraction) -> f64 {
        f.0
    }
}

/// Accuracy of the AI recommender, strictly better than chance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct AiAccuracy(Fraction);

impl AiAccuracy {
    pub fn new(value: f64) -> Result<Self, RelianceError> {
        Self::from_fraction(Fraction::named("AI accuracy", value)?)
    }

    pub fn from_fraction(acc: Fraction) -> Result<Self, RelianceError> {
        if acc.value() - 0.5 <= TOLERANCE {
            return Err(RelianceError::OutOfScopeAiAccuracy { value: acc.value() });
        }
        Ok(AiAccuracy(acc))
    }

    pub fn fraction(self) -> Fraction {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0.value()
    }
}

impl fmt::Display for AiAccuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
