use std::fmt;

use serde::Serialize;

use super::{AiAccuracy, RelianceError, RelianceProfile};
use crate::TOLERANCE;

/// Global reliance regime: adherence compared with AI accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelianceTag {
    UnderReliance,
    OverReliance,
    MatchedAdherence,
}

impl fmt::Display for RelianceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelianceTag::UnderReliance => "under-reliance",
            RelianceTag::OverReliance => "over-reliance",
            RelianceTag::MatchedAdherence => "matched adherence",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelianceClass {
    pub tag: RelianceTag,
    /// Whether some behavior at this adherence could beat the AI alone.
    pub complementarity_feasible: bool,
}

/// Smallest adherence above which final accuracy can exceed AI accuracy.
pub fn complementarity_threshold(acc: AiAccuracy) -> f64 {
    2.0 * acc.value() - 1.0
}

pub fn classify(profile: &RelianceProfile) -> Result<RelianceClass, RelianceError> {
    let acc = profile.checked_ai_accuracy()?;
    let a = profile.adherence().value();
    let tag = if (a - acc.value()).abs() <= TOLERANCE {
        RelianceTag::MatchedAdherence
    } else if a < acc.value() {
        RelianceTag::UnderReliance
    } else {
        RelianceTag::OverReliance
    };
    // Strict: at the threshold itself the best attainable accuracy equals the AI's.
    let complementarity_feasible = a - complementarity_threshold(acc) > TOLERANCE;
    Ok(RelianceClass {
        tag,
        complementarity_feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reliance::{nondiscerning_profile, Fraction};

    fn nd(acc: f64, a: f64) -> RelianceProfile {
        nondiscerning_profile(AiAccuracy::new(acc).unwrap(), Fraction::new(a).unwrap())
    }

    #[test]
    fn classification_examples() {
        let c = classify(&nd(0.7, 0.3)).unwrap();
        assert_eq!(c.tag, RelianceTag::UnderReliance);
        assert!(!c.complementarity_feasible);

        let c = classify(&nd(0.9, 0.85)).unwrap();
        assert_eq!(c.tag, RelianceTag::UnderReliance);
        assert!(c.complementarity_feasible);

        let c = classify(&nd(0.7, 0.9)).unwrap();
        assert_eq!(c.tag, RelianceTag::OverReliance);
        assert!(c.complementarity_feasible);

        let c = classify(&nd(0.7, 0.7)).unwrap();
        assert_eq!(c.tag, RelianceTag::MatchedAdherence);
    }

    #[test]
    fn threshold_itself_is_infeasible() {
        assert!(!classify(&nd(0.7, 0.4)).unwrap().complementarity_feasible);
        assert!(!classify(&nd(0.9, 0.8)).unwrap().complementarity_feasible);
        assert!(classify(&nd(0.7, 0.41)).unwrap().complementarity_feasible);
    }
}
