//! Per-condition metric bundles and baseline comparisons.
//!
//! JSON keys follow struct field order and fractions are rounded to nine decimals.

mod bootstrap;
mod compare;
pub mod fixed;

pub use bootstrap::{bootstrap, BootstrapConfig, BootstrapIntervals};
pub use compare::{compare_reports, CompareReport, NarrativeTag, TagThresholds, TreatmentComparison};

use std::fmt::Write;

use serde::Serialize;
use thiserror::Error;

use crate::ingest::{to_profile, ConditionAggregate, IngestError};
use crate::reliance::{
    envelope, expected_accuracy_nondiscerning, RelianceClass, RelianceCounts, RelianceError,
    RelianceProfile,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unknown condition {0:?}")]
    UnknownCondition(String),

    #[error("comparison needs at least two conditions, found {0}")]
    TooFewConditions(usize),

    #[error(transparent)]
    Ingest(#[from] IngestError),

    #[error(transparent)]
    Reliance(#[from] RelianceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeSummary {
    #[serde(serialize_with = "fixed::serialize")]
    pub lo: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub hi: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub width: f64,
}

/// Macro averages over participants of one condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParticipantSummary {
    pub participants: usize,
    #[serde(serialize_with = "fixed::serialize")]
    pub adherence: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub ai_accuracy: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub final_accuracy: f64,
    /// Mean over participants with a defined quality.
    #[serde(serialize_with = "fixed::option::serialize")]
    pub quality: Option<f64>,
    pub quality_defined: usize,
    /// Participants whose own AI accuracy is at or below chance.
    pub out_of_scope: usize,
}

impl ParticipantSummary {
    pub fn from_counts(per_participant: &[RelianceCounts]) -> Option<Self> {
        let profiles: Vec<RelianceProfile> = per_participant
            .iter()
            .filter_map(|c| RelianceProfile::from_counts(*c).ok())
            .collect();
        if profiles.is_empty() {
            return None;
        }
        let k = profiles.len() as f64;
        let mean = |f: fn(&RelianceProfile) -> f64| profiles.iter().map(f).sum::<f64>() / k;
        let mut out_of_scope = 0;
        let mut qualities = Vec::new();
        for p in &profiles {
            match p.quality() {
                Ok(Some(q)) => qualities.push(q.value()),
                Ok(None) => {}
                Err(_) => out_of_scope += 1,
            }
        }
        Some(ParticipantSummary {
            participants: profiles.len(),
            adherence: mean(|p| p.adherence().value()),
            ai_accuracy: mean(|p| p.ai_accuracy().value()),
            final_accuracy: mean(|p| p.final_accuracy().value()),
            quality: (!qualities.is_empty())
                .then(|| qualities.iter().sum::<f64>() / qualities.len() as f64),
            quality_defined: qualities.len(),
            out_of_scope,
        })
    }
}

/// Every metric of one condition, all recomputable from `counts`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub n: u64,
    pub counts: RelianceCounts,
    #[serde(serialize_with = "fixed::serialize")]
    pub adherence: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub ai_accuracy: f64,
    #[serde(serialize_with = "fixed::serialize")]
    pub final_accuracy: f64,
    /// `None` (JSON `null`) where the attainable range has zero width.
    #[serde(serialize_with = "fixed::option::serialize")]
    pub quality: Option<f64>,
    pub classification: RelianceClass,
    pub envelope: EnvelopeSummary,
    #[serde(serialize_with = "fixed::serialize")]
    pub expected_nondiscerning_accuracy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<BootstrapIntervals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_participant: Option<ParticipantSummary>,
}

impl ConditionReport {
    pub fn from_aggregate(agg: &ConditionAggregate) -> Result<Self, ReportError> {
        let profile = to_profile(agg)?;
        let acc = profile.checked_ai_accuracy()?;
        let adherence = profile.adherence();
        let env = envelope(acc, adherence);
        Ok(ConditionReport {
            condition: agg.condition_id.clone(),
            n: agg.n,
            counts: agg.counts,
            adherence: adherence.value(),
            ai_accuracy: acc.value(),
            final_accuracy: profile.final_accuracy().value(),
            quality: profile.quality()?.map(|q| q.value()),
            classification: crate::reliance::classify(&profile)?,
            envelope: EnvelopeSummary {
                lo: env.lo().value(),
                hi: env.hi().value(),
                width: env.width().value(),
            },
            expected_nondiscerning_accuracy: expected_accuracy_nondiscerning(acc, adherence).value(),
            bootstrap: None,
            per_participant: None,
        })
    }

    pub fn profile(&self) -> RelianceProfile {
        RelianceProfile::from_counts(self.counts).expect("report counts are non-empty")
    }

    pub fn with_bootstrap(mut self, config: &BootstrapConfig, stream: u64) -> Self {
        self.bootstrap = bootstrap(self.counts, config, stream);
        self
    }
}

/// Reports for every aggregate, in aggregate order.
pub fn condition_reports(aggregates: &[ConditionAggregate]) -> Result<Vec<ConditionReport>, ReportError> {
    aggregates.iter().map(ConditionReport::from_aggregate).collect()
}

fn pct(x: f64) -> String {
    format!("{:.1}%", x * 100.0)
}

/// Human-readable view with percentages.
pub fn render_table(reports: &[ConditionReport]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:>6} {:>8} {:>8} {:>8} {:>7} {:>17} {:<18} {:>11}",
        "condition", "n", "A", "Acc_AI", "Acc", "Q", "envelope", "regime", "complement"
    );
    for r in reports {
        let q = r.quality.map(|q| format!("{q:.3}")).unwrap_or_else(|| "undef".into());
        let env = format!("[{}, {}]", pct(r.envelope.lo), pct(r.envelope.hi));
        let _ = writeln!(
            s,
            "{:<16} {:>6} {:>8} {:>8} {:>8} {:>7} {:>17} {:<18} {:>11}",
            r.condition,
            r.n,
            pct(r.adherence),
            pct(r.ai_accuracy),
            pct(r.final_accuracy),
            q,
            env,
            r.classification.tag.to_string(),
            if r.classification.complementarity_feasible { "feasible" } else { "infeasible" }
        );
    }
    s
}
