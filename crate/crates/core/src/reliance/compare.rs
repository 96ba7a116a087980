use serde::Serialize;

use super::{classify, RelianceClass, RelianceError, RelianceProfile};
use crate::TOLERANCE;

/// Movement of a treatment condition relative to a baseline under the same AI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterventionEffect {
    pub delta_adherence: f64,
    pub delta_final_accuracy: f64,
    /// `None` when either condition's quality is undefined.
    pub delta_quality: Option<f64>,
    pub baseline: RelianceClass,
    pub treatment: RelianceClass,
}

pub fn compare_conditions(
    baseline: &RelianceProfile,
    treatment: &RelianceProfile,
) -> Result<InterventionEffect, RelianceError> {
    compare_conditions_with_tolerance(baseline, treatment, TOLERANCE)
}

/// `tolerance` bounds how far the two conditions' AI accuracies may differ.
pub fn compare_conditions_with_tolerance(
    baseline: &RelianceProfile,
    treatment: &RelianceProfile,
    tolerance: f64,
) -> Result<InterventionEffect, RelianceError> {
    let (acc_b, acc_t) = (baseline.ai_accuracy().value(), treatment.ai_accuracy().value());
    if (acc_b - acc_t).abs() > tolerance {
        return Err(RelianceError::AiAccuracyMismatch {
            baseline: acc_b,
            treatment: acc_t,
        });
    }
    let baseline_class = classify(baseline)?;
    let treatment_class = classify(treatment)?;
    let delta_quality = match (baseline.quality()?, treatment.quality()?) {
        (Some(qb), Some(qt)) => Some(qt.value() - qb.value()),
        _ => None,
    };
    Ok(InterventionEffect {
        delta_adherence: treatment.adherence().value() - baseline.adherence().value(),
        delta_final_accuracy: treatment.final_accuracy().value()
            - baseline.final_accuracy().value(),
        delta_quality,
        baseline: baseline_class,
        treatment: treatment_class,
    })
}
