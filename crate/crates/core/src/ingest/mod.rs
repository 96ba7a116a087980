//! Experiment logs in, per-condition reliance counts out.
//!
//! Two schemas are accepted, each as CSV or JSON:
//!
//! * derived: `condition,trial,ai_correct,adhered` with 0/1 flags
//! * raw: `condition,trial,ai_decision,human_decision,ground_truth` with labels from a
//!   two-value alphabet; `ai_correct = ai_decision == ground_truth` and
//!   `adhered = human_decision == ai_decision`
//!
//! An optional participant column (named `participant` unless configured otherwise)
//! enables per-participant aggregation.

mod aggregate;
mod parse;
mod write;

pub use aggregate::{aggregate, aggregate_by_participant, to_profile, ConditionAggregate};
pub use parse::{parse_dataset, parse_raw_decisions, ParseOptions};
pub use write::write_dataset;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const COL_CONDITION: &str = "condition";
pub const COL_TRIAL: &str = "trial";
pub const COL_AI_CORRECT: &str = "ai_correct";
pub const COL_ADHERED: &str = "adhered";
pub const COL_AI_DECISION: &str = "ai_decision";
pub const COL_HUMAN_DECISION: &str = "human_decision";
pub const COL_GROUND_TRUTH: &str = "ground_truth";
pub const DEFAULT_PARTICIPANT_COLUMN: &str = "participant";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Derived,
    Raw,
}

/// One decision: was the AI right, and did the human follow it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub condition_id: String,
    pub trial_id: String,
    pub ai_correct: bool,
    pub adhered: bool,
    pub participant: Option<String>,
}

/// One decision as logged by an experiment platform, before reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDecisionRecord {
    pub condition_id: String,
    pub trial_id: String,
    pub ai_decision: String,
    pub human_decision: String,
    pub ground_truth: String,
    pub participant: Option<String>,
}

impl RawDecisionRecord {
    pub fn to_trial(&self) -> TrialRecord {
        TrialRecord {
            condition_id: self.condition_id.clone(),
            trial_id: self.trial_id.clone(),
            ai_correct: self.ai_decision == self.ground_truth,
            adhered: self.human_decision == self.ai_decision,
            participant: self.participant.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("record {record}{}: {message}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Parse {
        record: usize,
        line: Option<u64>,
        message: String,
    },

    #[error("duplicate trial {trial:?} in condition {condition:?}")]
    DuplicateTrial { condition: String, trial: String },

    #[error("record {record}: label {label:?} is outside the alphabet {{{}}}", alphabet.join(", "))]
    Label {
        record: usize,
        label: String,
        alphabet: Vec<String>,
    },

    #[error("dataset contains no records")]
    EmptyDataset,

    #[error(
        "condition {condition:?} has AI accuracy {value}; the framework only covers AI \
         strictly better than chance, accuracy in (0.5, 1]"
    )]
    OutOfScopeAiAccuracy { condition: String, value: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
