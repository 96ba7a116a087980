//! Reliance analytics for AI-assisted binary decision-making.
//!
//! A human working with an AI recommender either adheres to or overrides each
//! recommendation, and each recommendation is either correct or wrong. This crate
//! decomposes observed behavior into those four cells, computes the range of decision
//! accuracy attainable at a given adherence level, scores where an observed accuracy
//! sits inside that range, simulates parametric reliance behaviors, and renders the
//! adherence/accuracy plane as SVG.
//!
//! All quantities are fractions in `[0, 1]`. Percentages only appear in formatted
//! output.
//!
//! ```
//! use reliance_lens_core::reliance::{envelope, AiAccuracy, Fraction};
//!
//! let acc = AiAccuracy::new(0.7).unwrap();
//! let env = envelope(acc, Fraction::new(0.2).unwrap());
//! assert!((env.lo().value() - 0.1).abs() < 1e-12);
//! assert!((env.hi().value() - 0.5).abs() < 1e-12);
//! ```

pub mod ingest;
pub mod plot;
pub mod reliance;
pub mod report;
pub mod sim;

/// Tolerance used for identity and equality checks on fractions.
pub const TOLERANCE: f64 = 1e-9;
