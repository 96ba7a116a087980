//! Reliance decomposition and the geometry of attainable accuracy.
//!
//! Every function here is pure. Profiles built from integer counts are exact up to one
//! division per field; all further formulas are affine, so `f64` suffices and equality
//! checks use [`crate::TOLERANCE`].

mod classify;
mod compare;
mod envelope;
mod fraction;
mod profile;

pub use classify::{classify, complementarity_threshold, RelianceClass, RelianceTag};
pub use compare::{compare_conditions, compare_conditions_with_tolerance, InterventionEffect};
pub use envelope::{
    envelope, envelope_width, expected_accuracy_nondiscerning, extremal_profiles, invert_accuracy,
    nondiscerning_profile, AccuracyEnvelope, AdherenceInterval, EnvelopeBranch, ExtremalProfiles,
};
pub use fraction::{AiAccuracy, Fraction};
pub use profile::{quality, RelianceCounts, RelianceProfile};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RelianceError {
    #[error("{name} = {value} is outside [0, 1]")]
    Domain { name: &'static str, value: f64 },

    /// AI accuracy at or below chance is outside the framework.
    #[error(
        "AI accuracy {value} is not strictly better than chance; \
         the framework only covers AI accuracy in (0.5, 1]"
    )]
    OutOfScopeAiAccuracy { value: f64 },

    #[error("condition has no trials")]
    EmptyCondition,

    #[error("profile fields sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("AI accuracy differs between conditions: {baseline} vs {treatment}")]
    AiAccuracyMismatch { baseline: f64, treatment: f64 },
}
