use serde::Serialize;

use super::SimError;
use crate::reliance::{AiAccuracy, Fraction, RelianceProfile};

/// Adherence probabilities conditioned on whether the AI recommendation is correct.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BehaviorModel {
    pub p_adhere_given_correct: Fraction,
    pub p_adhere_given_wrong: Fraction,
}

impl BehaviorModel {
    pub fn new(p_adhere_given_correct: f64, p_adhere_given_wrong: f64) -> Result<Self, SimError> {
        let check = |name: &str, p: f64| {
            Fraction::new(p).map_err(|_| SimError::Config(format!("{name} = {p} is outside [0, 1]")))
        };
        Ok(BehaviorModel {
            p_adhere_given_correct: check("p-adhere-correct", p_adhere_given_correct)?,
            p_adhere_given_wrong: check("p-adhere-wrong", p_adhere_given_wrong)?,
        })
    }

    /// Same adherence probability regardless of AI correctness.
    pub fn nondiscerning(adherence: Fraction) -> Self {
        BehaviorModel {
            p_adhere_given_correct: adherence,
            p_adhere_given_wrong: adherence,
        }
    }

    pub fn is_nondiscerning(&self) -> bool {
        self.p_adhere_given_correct == self.p_adhere_given_wrong
    }

    pub(crate) fn p_adhere(&self, ai_correct: bool) -> f64 {
        if ai_correct {
            self.p_adhere_given_correct.value()
        } else {
            self.p_adhere_given_wrong.value()
        }
    }
}

/// Population profile generated by `model` under an AI of accuracy `acc`.
pub fn expected_profile(acc: AiAccuracy, model: &BehaviorModel) -> RelianceProfile {
    let p = acc.value();
    let pc = model.p_adhere_given_correct.value();
    let pw = model.p_adhere_given_wrong.value();
    RelianceProfile::from_parts(p * pc, (1.0 - p) * pw, (1.0 - p) * (1.0 - pw), p * (1.0 - pc))
}
