use std::fmt;

use serde::Serialize;

use super::{fixed, ConditionReport, ReportError};
use crate::reliance::compare_conditions_with_tolerance;
use crate::TOLERANCE;

/// What drove a treatment's movement relative to the baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NarrativeTag {
    /// Quality rose without more adherence.
    QualityDriven,
    /// Adherence rose without better quality.
    QuantityDriven,
    Mixed,
    /// No movement at all.
    #[serde(rename = "Mixed-degenerate")]
    MixedDegenerate,
}

impl fmt::Display for NarrativeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NarrativeTag::QualityDriven => "QualityDriven",
            NarrativeTag::QuantityDriven => "QuantityDriven",
            NarrativeTag::Mixed => "Mixed",
            NarrativeTag::MixedDegenerate => "Mixed-degenerate",
        })
    }
}

/// `QualityDriven` needs `dQ > quality` with `dA <= 0`; `QuantityDriven` needs
/// `dA > quantity` with `dQ <= 0`. Anything else is `Mixed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TagThresholds {
    pub quality: f64,
    pub quantity: f64,
}

impl Default for TagThresholds {
    fn default() -> Self {
        TagThresholds {
            quality: 0.05,
            quantity: 0.05,
        }
    }
}

impl TagThresholds {
    pub fn tag(&self, delta_adherence: f64, delta_final_accuracy: f64, delta_quality: Option<f64>) -> NarrativeTag {
        let still = |d: f64| d.abs() <= TOLERANCE;
        if still(delta_adherence) && still(delta_final_accuracy) && delta_quality.is_none_or(still) {
            return NarrativeTag::MixedDegenerate;
        }
        match delta_quality {
            Some(dq) if dq > self.quality && delta_adherence <= TOLERANCE => NarrativeTag::QualityDriven,
            Some(dq) if delta_adherence > self.quantity && dq <= TOLERANCE => NarrativeTag::QuantityDriven,
            _ => NarrativeTag::Mixed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreatmentComparison {
    pub report: ConditionReport,
    #[serde(serialize_with = "fixed::serialize")]
    pub delta_adherence: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub delta_final_accuracy: f64,
    #[serde(serialize_with = "fixed::option::serialize")]
    pub delta_quality: Option<f64>,
    pub tag: NarrativeTag,
}

impl TreatmentComparison {
    pub fn new(
        baseline: &ConditionReport,
        treatment: &ConditionReport,
        tolerance: f64,
        thresholds: &TagThresholds,
    ) -> Result<Self, ReportError> {
        let effect =
            compare_conditions_with_tolerance(&baseline.profile(), &treatment.profile(), tolerance)?;
        Ok(TreatmentComparison {
            report: treatment.clone(),
            delta_adherence: effect.delta_adherence,
            delta_final_accuracy: effect.delta_final_accuracy,
            delta_quality: effect.delta_quality,
            tag: thresholds.tag(
                effect.delta_adherence,
                effect.delta_final_accuracy,
                effect.delta_quality,
            ),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub baseline: ConditionReport,
    pub treatments: Vec<TreatmentComparison>,
}

/// Compares every other condition against `baseline_id`. `tolerance` bounds the allowed
/// AI-accuracy difference between conditions.
pub fn compare_reports(
    reports: &[ConditionReport],
    baseline_id: &str,
    tolerance: f64,
    thresholds: &TagThresholds,
) -> Result<CompareReport, ReportError> {
    let baseline = reports
        .iter()
        .find(|r| r.condition == baseline_id)
        .ok_or_else(|| ReportError::UnknownCondition(baseline_id.to_string()))?;
    if reports.len() < 2 {
        return Err(ReportError::TooFewConditions(reports.len()));
    }
    let treatments = reports
        .iter()
        .filter(|r| r.condition != baseline_id)
        .map(|r| TreatmentComparison::new(baseline, r, tolerance, thresholds))
        .collect::<Result<_, _>>()?;
    Ok(CompareReport {
        baseline: baseline.clone(),
        treatments,
    })
}
