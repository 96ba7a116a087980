//! Percentile bootstrap over the trials of one condition.

use serde::Serialize;

use super::fixed;
use crate::reliance::{RelianceCounts, RelianceProfile};
use crate::sim::PortableRng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BootstrapConfig {
    pub resamples: usize,
    /// Two-sided coverage, e.g. 0.95.
    pub confidence: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapIntervals {
    pub resamples: usize,
    #[serde(serialize_with = "fixed::serialize")]
    pub confidence: f64,
    #[serde(serialize_with = "fixed::pair::serialize")]
    pub adherence: (f64, f64),
    #[serde(serialize_with = "fixed::pair::serialize")]
    pub final_accuracy: (f64, f64),
    /// `None` when no resample had a defined quality.
    #[serde(serialize_with = "fixed::option_pair::serialize")]
    pub quality: Option<(f64, f64)>,
    /// Resamples contributing to the quality interval.
    pub quality_defined: usize,
}

/// Linear interpolation between order statistics; `sorted` must be non-empty.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}

fn interval(mut xs: Vec<f64>, confidence: f64) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let alpha = (1.0 - confidence) / 2.0;
    Some((quantile(&xs, alpha), quantile(&xs, 1.0 - alpha)))
}

/// Resamples `n` trials with replacement from the condition's cells. `stream`
/// separates conditions sharing one seed.
///
/// Resamples whose AI accuracy falls to chance or whose quality is undefined are
/// left out of the quality interval only.
pub fn bootstrap(counts: RelianceCounts, config: &BootstrapConfig, stream: u64) -> Option<BootstrapIntervals> {
    let n = counts.total();
    if n == 0 || config.resamples == 0 {
        return None;
    }
    let bounds = [
        counts.correct_adherence,
        counts.correct_adherence + counts.wrong_adherence,
        counts.correct_adherence + counts.wrong_adherence + counts.correct_override,
    ];
    let mut rng = PortableRng::new(config.seed, stream);
    let mut adherence = Vec::with_capacity(config.resamples);
    let mut final_accuracy = Vec::with_capacity(config.resamples);
    let mut quality = Vec::new();
    for _ in 0..config.resamples {
        let mut c = RelianceCounts::default();
        for _ in 0..n {
            let i = rng.below(n);
            if i < bounds[0] {
                c.correct_adherence += 1;
            } else if i < bounds[1] {
                c.wrong_adherence += 1;
            } else if i < bounds[2] {
                c.correct_override += 1;
            } else {
                c.wrong_override += 1;
            }
        }
        let p = RelianceProfile::from_counts(c).expect("n > 0");
        adherence.push(p.adherence().value());
        final_accuracy.push(p.final_accuracy().value());
        if let Ok(Some(q)) = p.quality() {
            quality.push(q.value());
        }
    }
    let quality_defined = quality.len();
    Some(BootstrapIntervals {
        resamples: config.resamples,
        confidence: config.confidence,
        adherence: interval(adherence, config.confidence)?,
        final_accuracy: interval(final_accuracy, config.confidence)?,
        quality: interval(quality, config.confidence),
        quality_defined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config() -> BootstrapConfig {
        BootstrapConfig {
            resamples: 400,
            confidence: 0.95,
            seed: 9,
        }
    }

    #[test]
    fn quantile_interpolates() {
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&xs, 0.0), 0.0);
        assert_eq!(quantile(&xs, 0.5), 2.0);
        assert_eq!(quantile(&xs, 0.125), 0.5);
        assert_eq!(quantile(&xs, 1.0), 4.0);
    }

    #[test]
    fn intervals_cover_point_estimate() {
        let counts = RelianceCounts::new(49, 21, 9, 21);
        let b = bootstrap(counts, &config(), 0).unwrap();
        let p = RelianceProfile::from_counts(counts).unwrap();
        let a = p.adherence().value();
        assert!(b.adherence.0 <= a && a <= b.adherence.1);
        let f = p.final_accuracy().value();
        assert!(b.final_accuracy.0 <= f && f <= b.final_accuracy.1);
        let q = p.quality().unwrap().unwrap().value();
        let (lo, hi) = b.quality.unwrap();
        assert!(lo <= q && q <= hi);
        assert!(b.adherence.1 - b.adherence.0 < 0.25);
    }

    #[test]
    fn deterministic_per_seed_and_stream() {
        let counts = RelianceCounts::new(30, 10, 5, 5);
        assert_eq!(bootstrap(counts, &config(), 0), bootstrap(counts, &config(), 0));
        assert_ne!(bootstrap(counts, &config(), 0), bootstrap(counts, &config(), 1));
    }

    #[test]
    fn degenerate_condition() {
        // every trial adhered: quality never defined
        let b = bootstrap(RelianceCounts::new(7, 3, 0, 0), &config(), 0).unwrap();
        assert_eq!(b.adherence, (1.0, 1.0));
        assert_eq!(b.quality, None);
        assert_eq!(b.quality_defined, 0);
        assert!(bootstrap(RelianceCounts::default(), &config(), 0).is_none());
    }
}
