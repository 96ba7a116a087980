use serde::Serialize;

use super::{BehaviorModel, PortableRng, SimError};
use crate::ingest::TrialRecord;
use crate::reliance::AiAccuracy;

/// How AI correctness is assigned across trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum AiComposition {
    /// Each recommendation is independently correct with probability `acc`.
    Bernoulli,
    /// Exactly `n * acc` correct recommendations, shuffled.
    #[default]
    FixedCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimConfig {
    pub acc: AiAccuracy,
    pub model: BehaviorModel,
    pub n_trials: u64,
    pub seed: u64,
    pub composition: AiComposition,
    /// Condition id stamped on every generated record.
    pub condition: String,
}

impl SimConfig {
    pub fn new(acc: AiAccuracy, model: BehaviorModel, n_trials: u64, seed: u64) -> Self {
        SimConfig {
            acc,
            model,
            n_trials,
            seed,
            composition: AiComposition::default(),
            condition: "sim".to_string(),
        }
    }

    pub fn with_composition(mut self, composition: AiComposition) -> Self {
        self.composition = composition;
        self
    }

    pub fn with_condition(mut self, condition: impl Into<String>) -> Self {
        self.condition = condition.into();
        self
    }

    fn correct_count(&self) -> Result<u64, SimError> {
        let exact = self.n_trials as f64 * self.acc.value();
        let rounded = exact.round();
        if (exact - rounded).abs() > 1e-9 * self.n_trials.max(1) as f64 {
            return Err(SimError::Config(format!(
                "fixed counts need n * acc to be an integer, got {} * {} = {exact}",
                self.n_trials,
                self.acc.value()
            )));
        }
        Ok(rounded as u64)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_trials == 0 {
            return Err(SimError::Config("n_trials must be at least 1".into()));
        }
        if self.condition.is_empty() {
            return Err(SimError::Config("condition id must not be empty".into()));
        }
        if self.composition == AiComposition::FixedCounts {
            self.correct_count()?;
        }
        Ok(())
    }
}

/// Generates one dataset. Identical configs produce identical records.
pub fn simulate(config: &SimConfig) -> Result<Vec<TrialRecord>, SimError> {
    simulate_replication(config, 0)
}

/// Replication `index` draws from its own generator stream of the configured seed;
/// replication 0 is what [`simulate`] returns.
///
/// Draw order: AI correctness for all trials first (one uniform per trial for
/// Bernoulli, a Fisher-Yates shuffle for fixed counts), then one uniform per trial for
/// adherence.
pub fn simulate_replication(config: &SimConfig, index: u64) -> Result<Vec<TrialRecord>, SimError> {
    config.validate()?;
    let mut rng = PortableRng::new(config.seed, index);
    let n = config.n_trials as usize;

    let ai_correct: Vec<bool> = match config.composition {
        AiComposition::Bernoulli => (0..n).map(|_| rng.bernoulli(config.acc.value())).collect(),
        AiComposition::FixedCounts => {
            let k = config.correct_count()? as usize;
            let mut v: Vec<bool> = (0..n).map(|i| i < k).collect();
            rng.shuffle(&mut v);
            v
        }
    };

    let width = n.to_string().len();
    Ok(ai_correct
        .into_iter()
        .enumerate()
        .map(|(i, correct)| TrialRecord {
            condition_id: config.condition.clone(),
            trial_id: format!("t{:0width$}", i + 1),
            ai_correct: correct,
            adhered: rng.bernoulli(config.model.p_adhere(correct)),
            participant: None,
        })
        .collect())
}
