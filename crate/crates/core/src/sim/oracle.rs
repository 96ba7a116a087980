use std::collections::BTreeSet;

use serde::Serialize;

use super::SimError;
use crate::reliance::{envelope, AiAccuracy, Fraction};

/// Largest trial count the oracle accepts.
pub const MAX_ORACLE_TRIALS: u64 = 20;

/// Exact sets of attainable correct-decision counts for every adherence count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: u64,
    pub acc_numerator: u64,
    /// Indexed by adherence count `k` in `0..=n`.
    pub per_adherence: Vec<BTreeSet<u64>>,
}

/// Enumerates every split of `k` adherences between correct and wrong recommendations
/// for `n` trials of which `acc_numerator` have a correct AI recommendation.
pub fn enumerate_attainable(n: u64, acc_numerator: u64) -> Result<OracleResult, SimError> {
    if n == 0 || n > MAX_ORACLE_TRIALS {
        return Err(SimError::Domain(format!(
            "n = {n} must be between 1 and {MAX_ORACLE_TRIALS}"
        )));
    }
    if acc_numerator > n || 2 * acc_numerator <= n {
        return Err(SimError::Domain(format!(
            "AI must be correct on more than half of the trials, got {acc_numerator} of {n}"
        )));
    }
    let wrong_ai = n - acc_numerator;
    let per_adherence = (0..=n)
        .map(|k| {
            (0..=k.min(acc_numerator))
                .filter(|&correct_adherence| k - correct_adherence <= wrong_ai)
                .map(|correct_adherence| {
                    let wrong_adherence = k - correct_adherence;
                    let correct_override = wrong_ai - wrong_adherence;
                    correct_adherence + correct_override
                })
                .collect()
        })
        .collect();
    Ok(OracleResult {
        n,
        acc_numerator,
        per_adherence,
    })
}

/// One adherence count checked against the continuous envelope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub adherence_count: u64,
    pub attainable: Vec<u64>,
    pub min: u64,
    pub max: u64,
    /// Envelope bounds scaled to counts.
    pub envelope_lo: f64,
    pub envelope_hi: f64,
    /// Both scaled bounds are whole numbers.
    pub exact: bool,
    pub pass: bool,
}

impl OracleResult {
    pub fn attainable(&self, adherence_count: u64) -> Option<&BTreeSet<u64>> {
        self.per_adherence.get(adherence_count as usize)
    }

    pub fn ai_accuracy(&self) -> AiAccuracy {
        AiAccuracy::new(self.acc_numerator as f64 / self.n as f64)
            .expect("validated in enumerate_attainable")
    }

    /// Compares integer extremes with the analytic envelope at every adherence count.
    ///
    /// Where the scaled envelope bounds are whole numbers the extremes must match them;
    /// elsewhere every attainable count must lie inside the envelope.
    pub fn verify(&self) -> Vec<OracleRow> {
        let acc = self.ai_accuracy();
        let n = self.n as f64;
        self.per_adherence
            .iter()
            .enumerate()
            .map(|(k, set)| {
                let adherence = Fraction::new(k as f64 / n).expect("k <= n");
                let env = envelope(acc, adherence);
                let lo = env.lo().value() * n;
                let hi = env.hi().value() * n;
                let is_whole = |x: f64| (x - x.round()).abs() < 1e-9;
                let exact = is_whole(lo) && is_whole(hi);
                let min = *set.first().expect("non-empty");
                let max = *set.last().expect("non-empty");
                let pass = if exact {
                    min == lo.round() as u64 && max == hi.round() as u64
                } else {
                    min as f64 >= lo - 1e-9 && max as f64 <= hi + 1e-9
                };
                OracleRow {
                    adherence_count: k as u64,
                    attainable: set.iter().copied().collect(),
                    min,
                    max,
                    envelope_lo: lo,
                    envelope_hi: hi,
                    exact,
                    pass,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn ten_trials_seventy_percent() {
        let r = enumerate_attainable(10, 7).unwrap();
        assert_eq!(r.attainable(7), Some(&set(&[4, 6, 8, 10])));
        assert_eq!(r.attainable(10), Some(&set(&[7])));
        assert_eq!(r.attainable(0), Some(&set(&[3])));
        assert_eq!(r.attainable(2), Some(&set(&[1, 3, 5])));
        assert!(r.verify().iter().all(|row| row.pass && row.exact));
    }

    #[test]
    fn rejects_chance_level_and_oversized() {
        assert!(matches!(enumerate_attainable(10, 5), Err(SimError::Domain(_))));
        assert!(matches!(enumerate_attainable(10, 11), Err(SimError::Domain(_))));
        assert!(matches!(enumerate_attainable(21, 15), Err(SimError::Domain(_))));
        assert!(matches!(enumerate_attainable(0, 0), Err(SimError::Domain(_))));
        assert!(enumerate_attainable(20, 11).is_ok());
    }

    #[test]
    fn attainable_sets_step_by_two() {
        for n in 1..=MAX_ORACLE_TRIALS {
            for m in (n / 2 + 1)..=n {
                let r = enumerate_attainable(n, m).unwrap();
                for s in &r.per_adherence {
                    assert!(!s.is_empty());
                    let v: Vec<u64> = s.iter().copied().collect();
                    assert!(v.windows(2).all(|w| w[1] - w[0] == 2), "{v:?}");
                    assert!(v.iter().all(|&x| x <= n));
                }
            }
        }
    }
}
