use std::collections::BTreeMap;

use serde::Serialize;

use super::{IngestError, TrialRecord};
use crate::reliance::{RelianceCounts, RelianceError, RelianceProfile};

/// Four-cell counts of one condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionAggregate {
    pub condition_id: String,
    pub counts: RelianceCounts,
    pub n: u64,
}

impl ConditionAggregate {
    pub fn new(condition_id: impl Into<String>, counts: RelianceCounts) -> Self {
        ConditionAggregate {
            condition_id: condition_id.into(),
            n: counts.total(),
            counts,
        }
    }
}

/// Pools records per condition, ordered by condition id.
pub fn aggregate(records: &[TrialRecord]) -> Result<Vec<ConditionAggregate>, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyDataset);
    }
    let mut by_condition: BTreeMap<&str, RelianceCounts> = BTreeMap::new();
    for r in records {
        by_condition
            .entry(&r.condition_id)
            .or_default()
            .record(r.ai_correct, r.adhered);
    }
    Ok(by_condition
        .into_iter()
        .map(|(id, counts)| ConditionAggregate::new(id, counts))
        .collect())
}

/// Per-condition, per-participant counts, both levels ordered by id.
///
/// Records without a participant id are grouped under the empty string.
pub fn aggregate_by_participant(
    records: &[TrialRecord],
) -> Result<BTreeMap<String, Vec<(String, RelianceCounts)>>, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyDataset);
    }
    let mut nested: BTreeMap<&str, BTreeMap<&str, RelianceCounts>> = BTreeMap::new();
    for r in records {
        nested
            .entry(&r.condition_id)
            .or_default()
            .entry(r.participant.as_deref().unwrap_or(""))
            .or_default()
            .record(r.ai_correct, r.adhered);
    }
    Ok(nested
        .into_iter()
        .map(|(c, ps)| {
            (
                c.to_string(),
                ps.into_iter().map(|(p, counts)| (p.to_string(), counts)).collect(),
            )
        })
        .collect())
}

/// Profile of an aggregate, requiring AI accuracy strictly above chance.
pub fn to_profile(agg: &ConditionAggregate) -> Result<RelianceProfile, IngestError> {
    let profile = RelianceProfile::from_counts(agg.counts).map_err(|_| IngestError::EmptyDataset)?;
    match profile.checked_ai_accuracy() {
        Ok(_) => Ok(profile),
        Err(RelianceError::OutOfScopeAiAccuracy { value }) => Err(IngestError::OutOfScopeAiAccuracy {
            condition: agg.condition_id.clone(),
            value,
        }),
        Err(e) => unreachable!("profile from counts is always valid: {e}"),
    }
}
