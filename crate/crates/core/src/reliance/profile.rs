use serde::{Deserialize, Serialize};

use super::envelope::envelope;
use super::{AiAccuracy, Fraction, RelianceError};
use crate::TOLERANCE;

/// Trial counts of the four adherence/override cells.
///
/// |                | AI correct          | AI wrong            |
/// |----------------|---------------------|---------------------|
/// | adhere         | `correct_adherence` | `wrong_adherence`   |
/// | override       | `wrong_override`    | `correct_override`  |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RelianceCounts {
    pub correct_adherence: u64,
    pub wrong_adherence: u64,
    pub correct_override: u64,
    pub wrong_override: u64,
}

impl RelianceCounts {
    pub fn new(
        correct_adherence: u64,
        wrong_adherence: u64,
        correct_override: u64,
        wrong_override: u64,
    ) -> Self {
        RelianceCounts {
            correct_adherence,
            wrong_adherence,
            correct_override,
            wrong_override,
        }
    }

    pub fn total(&self) -> u64 {
        self.correct_adherence + self.wrong_adherence + self.correct_override + self.wrong_override
    }

    /// Cell that a single trial falls into.
    pub fn record(&mut self, ai_correct: bool, adhered: bool) {
        match (ai_correct, adhered) {
            (true, true) => self.correct_adherence += 1,
            (false, true) => self.wrong_adherence += 1,
            (false, false) => self.correct_override += 1,
            (true, false) => self.wrong_override += 1,
        }
    }
}

/// Four-way decomposition of one condition's behavior, as fractions of all trials.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelianceProfile {
    correct_adherence: Fraction,
    wrong_adherence: Fraction,
    correct_override: Fraction,
    wrong_override: Fraction,
}

impl RelianceProfile {
    /// Builds a profile from fractions that must sum to one within tolerance.
    pub fn new(
        correct_adherence: f64,
        wrong_adherence: f64,
        correct_override: f64,
        wrong_override: f64,
    ) -> Result<Self, RelianceError> {
        let profile = RelianceProfile {
            correct_adherence: Fraction::named("correct adherence", correct_adherence)?,
            wrong_adherence: Fraction::named("wrong adherence", wrong_adherence)?,
            correct_override: Fraction::named("correct override", correct_override)?,
            wrong_override: Fraction::named("wrong override", wrong_override)?,
        };
        let sum = profile.total();
        if (sum - 1.0).abs() > TOLERANCE {
            return Err(RelianceError::NotNormalized { sum });
        }
        Ok(profile)
    }

    pub fn from_counts(counts: RelianceCounts) -> Result<Self, RelianceError> {
        let n = counts.total();
        if n == 0 {
            return Err(RelianceError::EmptyCondition);
        }
        let n = n as f64;
        Ok(RelianceProfile {
            correct_adherence: Fraction::clamped(counts.correct_adherence as f64 / n),
            wrong_adherence: Fraction::clamped(counts.wrong_adherence as f64 / n),
            correct_override: Fraction::clamped(counts.correct_override as f64 / n),
            wrong_override: Fraction::clamped(counts.wrong_override as f64 / n),
        })
    }

    /// Fields known to be valid by construction (closed forms).
    pub(crate) fn from_parts(
        correct_adherence: f64,
        wrong_adherence: f64,
        correct_override: f64,
        wrong_override: f64,
    ) -> Self {
        let profile = RelianceProfile {
            correct_adherence: Fraction::clamped(correct_adherence),
            wrong_adherence: Fraction::clamped(wrong_adherence),
            correct_override: Fraction::clamped(correct_override),
            wrong_override: Fraction::clamped(wrong_override),
        };
        debug_assert!((profile.total() - 1.0).abs() <= TOLERANCE);
        profile
    }

    fn total(&self) -> f64 {
        self.correct_adherence.value()
            + self.wrong_adherence.value()
            + self.correct_override.value()
            + self.wrong_override.value()
    }

    pub fn correct_adherence(&self) -> Fraction {
        self.correct_adherence
    }

    pub fn wrong_adherence(&self) -> Fraction {
        self.wrong_adherence
    }

    pub fn correct_override(&self) -> Fraction {
        self.correct_override
    }

    pub fn wrong_override(&self) -> Fraction {
        self.wrong_override
    }

    /// Share of trials where the human followed the AI.
    pub fn adherence(&self) -> Fraction {
        Fraction::clamped(self.correct_adherence.value() + self.wrong_adherence.value())
    }

    pub fn override_rate(&self) -> Fraction {
        Fraction::clamped(self.correct_override.value() + self.wrong_override.value())
    }

    /// Share of trials where the AI recommendation was correct.
    pub fn ai_accuracy(&self) -> Fraction {
        Fraction::clamped(self.correct_adherence.value() + self.wrong_override.value())
    }

    /// Share of trials where the human's final decision was correct.
    pub fn final_accuracy(&self) -> Fraction {
        Fraction::clamped(self.correct_adherence.value() + self.correct_override.value())
    }

    /// The AI accuracy, validated against the better-than-chance scope.
    pub fn checked_ai_accuracy(&self) -> Result<AiAccuracy, RelianceError> {
        AiAccuracy::from_fraction(self.ai_accuracy())
    }

    /// No wrong adherence and no wrong override, i.e. every decision correct.
    pub fn is_perfect_reliance(&self) -> bool {
        self.wrong_adherence.value() <= TOLERANCE && self.wrong_override.value() <= TOLERANCE
    }

    pub fn quality(&self) -> Result<Option<Fraction>, RelianceError> {
        quality(self)
    }
}

/// Reliance quality: where the final accuracy sits in the attainable range at the
/// profile's adherence, 0 at the minimum and 1 at the maximum.
///
/// Returns `Ok(None)` where the range collapses to a point (adherence 0 or 1).
pub fn quality(profile: &RelianceProfile) -> Result<Option<Fraction>, RelianceError> {
    let acc = profile.checked_ai_accuracy()?;
    let env = envelope(acc, profile.adherence());
    let width = env.width().value();
    if width <= TOLERANCE {
        return Ok(None);
    }
    let q = (profile.final_accuracy().value() - env.lo().value()) / width;
    Ok(Some(Fraction::clamped(q.clamp(0.0, 1.0))))
}
