//! Synthetic reliance behavior and the exhaustive attainability oracle.

mod model;
mod oracle;
mod rng;
mod simulate;

pub use model::{expected_profile, BehaviorModel};
pub use oracle::{enumerate_attainable, OracleResult, OracleRow, MAX_ORACLE_TRIALS};
pub use rng::PortableRng;
pub use simulate::{simulate, simulate_replication, AiComposition, SimConfig};

use thiserror::Error;

use crate::reliance::RelianceError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    Config(String),

    #[error("oracle precondition violated: {0}")]
    Domain(String),

    #[error(transparent)]
    Reliance(#[from] RelianceError),
}
