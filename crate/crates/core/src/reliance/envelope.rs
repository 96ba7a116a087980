use serde::Serialize;

use super::{AiAccuracy, Fraction, RelianceProfile};

/// Which piece of the piecewise-linear envelope an adherence level falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeBranch {
    /// `A <= 1 - acc`
    Low,
    /// `1 - acc < A <= acc`
    Middle,
    /// `A > acc`
    High,
}

impl EnvelopeBranch {
    pub fn of(acc: AiAccuracy, adherence: Fraction) -> Self {
        let (a, acc) = (adherence.value(), acc.value());
        if a <= 1.0 - acc {
            EnvelopeBranch::Low
        } else if a <= acc {
            EnvelopeBranch::Middle
        } else {
            EnvelopeBranch::High
        }
    }
}

/// Minimum and maximum final accuracy attainable at one adherence level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AccuracyEnvelope {
    adherence: Fraction,
    lo: Fraction,
    hi: Fraction,
    width: Fraction,
}

impl AccuracyEnvelope {
    pub fn adherence(&self) -> Fraction {
        self.adherence
    }

    pub fn lo(&self) -> Fraction {
        self.lo
    }

    pub fn hi(&self) -> Fraction {
        self.hi
    }

    pub fn width(&self) -> Fraction {
        self.width
    }

    pub fn contains(&self, final_accuracy: Fraction, tolerance: f64) -> bool {
        let x = final_accuracy.value();
        x >= self.lo.value() - tolerance && x <= self.hi.value() + tolerance
    }
}

/// Range of final accuracy attainable at `adherence` with an AI of accuracy `acc`.
pub fn envelope(acc: AiAccuracy, adherence: Fraction) -> AccuracyEnvelope {
    let (a, p) = (adherence.value(), acc.value());
    let (lo, hi) = match EnvelopeBranch::of(acc, adherence) {
        EnvelopeBranch::Low => (1.0 - p - a, 1.0 - p + a),
        EnvelopeBranch::Middle => (-1.0 + p + a, 1.0 - p + a),
        EnvelopeBranch::High => (-1.0 + p + a, 1.0 + p - a),
    };
    let (lo, hi) = (Fraction::clamped(lo), Fraction::clamped(hi));
    AccuracyEnvelope {
        adherence,
        lo,
        hi,
        width: Fraction::clamped(hi.value() - lo.value()),
    }
}

/// Width of the attainable range, from its own closed form rather than `hi - lo`.
pub fn envelope_width(acc: AiAccuracy, adherence: Fraction) -> Fraction {
    let (a, p) = (adherence.value(), acc.value());
    Fraction::clamped(match EnvelopeBranch::of(acc, adherence) {
        EnvelopeBranch::Low => 2.0 * a,
        EnvelopeBranch::Middle => 2.0 * (1.0 - p),
        EnvelopeBranch::High => 2.0 * (1.0 - a),
    })
}

/// Closed interval of adherence levels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdherenceInterval {
    pub lo: Fraction,
    pub hi: Fraction,
}

impl AdherenceInterval {
    pub fn contains(&self, adherence: Fraction, tolerance: f64) -> bool {
        let a = adherence.value();
        a >= self.lo.value() - tolerance && a <= self.hi.value() + tolerance
    }
}

/// All adherence levels whose envelope contains `final_accuracy`, or `None` when no
/// adherence level can reach it.
///
/// Solved directly from the four half-planes bounding the region:
/// `A >= 1 - acc - x`, `A >= x + acc - 1`, `A <= 1 + x - acc`, `A <= 1 + acc - x`.
pub fn invert_accuracy(acc: AiAccuracy, final_accuracy: Fraction) -> Option<AdherenceInterval> {
    let (x, p) = (final_accuracy.value(), acc.value());
    let lo = 0.0_f64.max(1.0 - p - x).max(x + p - 1.0);
    let hi = 1.0_f64.min(1.0 + x - p).min(1.0 + p - x);
    if lo > hi + crate::TOLERANCE {
        return None;
    }
    Some(AdherenceInterval {
        lo: Fraction::clamped(lo),
        hi: Fraction::clamped(hi.max(lo)),
    })
}

/// Expected final accuracy when adherence does not depend on whether the AI is correct.
pub fn expected_accuracy_nondiscerning(acc: AiAccuracy, adherence: Fraction) -> Fraction {
    let (a, p) = (adherence.value(), acc.value());
    Fraction::clamped((1.0 - p) + (2.0 * p - 1.0) * a)
}

/// Profile of a human who adheres to the same share of correct and wrong recommendations.
pub fn nondiscerning_profile(acc: AiAccuracy, adherence: Fraction) -> RelianceProfile {
    let (a, p) = (adherence.value(), acc.value());
    RelianceProfile::from_parts(a * p, a * (1.0 - p), (1.0 - a) * (1.0 - p), (1.0 - a) * p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalProfiles {
    /// Reaches the envelope's upper bound.
    pub best: RelianceProfile,
    /// Reaches the envelope's lower bound.
    pub worst: RelianceProfile,
}

/// Behaviors attaining the maximum and minimum final accuracy at a given adherence.
pub fn extremal_profiles(acc: AiAccuracy, adherence: Fraction) -> ExtremalProfiles {
    let (a, p) = (adherence.value(), acc.value());
    let o = 1.0 - a;
    let branch = EnvelopeBranch::of(acc, adherence);

    // Up to acc, the best behavior spends all adherence on correct recommendations;
    // above acc, all overrides go to wrong recommendations.
    let best = match branch {
        EnvelopeBranch::Low | EnvelopeBranch::Middle => {
            RelianceProfile::from_parts(a, 0.0, 1.0 - p, p - a)
        }
        EnvelopeBranch::High => RelianceProfile::from_parts(p, 1.0 - p - o, o, 0.0),
    };
    // Below 1 - acc, all adherence can go to wrong recommendations; beyond that, all
    // overrides go to correct ones.
    let worst = match branch {
        EnvelopeBranch::Low => RelianceProfile::from_parts(0.0, a, 1.0 - p - a, p),
        EnvelopeBranch::Middle | EnvelopeBranch::High => {
            RelianceProfile::from_parts(p - o, 1.0 - p, 0.0, o)
        }
    };
    ExtremalProfiles { best, worst }
}
