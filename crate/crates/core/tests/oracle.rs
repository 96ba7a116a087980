//! Closed forms checked against brute force over every adherence assignment.

use std::collections::BTreeSet;

use reliance_lens_core::reliance::{
    envelope, extremal_profiles, invert_accuracy, AiAccuracy, Fraction, RelianceCounts,
    RelianceProfile,
};
use reliance_lens_core::sim::enumerate_attainable;

/// For `n` trials whose first `m` AI recommendations are correct, tries every subset of
/// trials to adhere to and records the number of correct final decisions.
fn brute_force(n: u32, m: u32) -> Vec<BTreeSet<u64>> {
    let mut out = vec![BTreeSet::new(); n as usize + 1];
    for mask in 0u32..(1 << n) {
        let k = mask.count_ones() as usize;
        let correct = (0..n)
            .filter(|&i| {
                let adhered = mask & (1 << i) != 0;
                let ai_correct = i < m;
                adhered == ai_correct
            })
            .count() as u64;
        out[k].insert(correct);
    }
    out
}

fn scaled(x: Fraction, n: u32) -> f64 {
    x.value() * n as f64
}

#[test]
fn enumeration_matches_brute_force() {
    for n in 1..=12u32 {
        for m in (n / 2 + 1)..=n {
            let r = enumerate_attainable(n as u64, m as u64).unwrap();
            assert_eq!(r.per_adherence, brute_force(n, m), "n={n} m={m}");
        }
    }
}

#[test]
fn small_case_has_step_two() {
    // n = 4, three correct recommendations, two adherences
    let sets = brute_force(4, 3);
    assert_eq!(sets[2], [1, 3].into_iter().collect());
    assert_eq!(enumerate_attainable(4, 3).unwrap().per_adherence[2], sets[2]);
}

#[test]
fn envelope_bounds_match_integer_extremes() {
    for n in 4..=12u32 {
        for m in (n / 2 + 1)..=n {
            let acc = AiAccuracy::new(m as f64 / n as f64).unwrap();
            let sets = brute_force(n, m);
            for (k, set) in sets.iter().enumerate() {
                let env = envelope(acc, Fraction::new(k as f64 / n as f64).unwrap());
                let min = *set.first().unwrap() as f64;
                let max = *set.last().unwrap() as f64;
                assert!((scaled(env.lo(), n) - min).abs() < 1e-9, "n={n} m={m} k={k}");
                assert!((scaled(env.hi(), n) - max).abs() < 1e-9, "n={n} m={m} k={k}");
            }
        }
    }
}

#[test]
fn extremal_profiles_are_attained_by_integer_behaviors() {
    let (n, m) = (10u32, 7u32);
    let acc = AiAccuracy::new(0.7).unwrap();
    let sets = brute_force(n, m);
    for k in 0..=n {
        let a = Fraction::new(k as f64 / n as f64).unwrap();
        let ex = extremal_profiles(acc, a);
        for p in [ex.best, ex.worst] {
            // all four cells are whole trial counts
            for cell in [
                p.correct_adherence(),
                p.wrong_adherence(),
                p.correct_override(),
                p.wrong_override(),
            ] {
                let c = scaled(cell, n);
                assert!((c - c.round()).abs() < 1e-9);
            }
            let counts = RelianceCounts::new(
                scaled(p.correct_adherence(), n).round() as u64,
                scaled(p.wrong_adherence(), n).round() as u64,
                scaled(p.correct_override(), n).round() as u64,
                scaled(p.wrong_override(), n).round() as u64,
            );
            let from_counts = RelianceProfile::from_counts(counts).unwrap();
            assert!((from_counts.ai_accuracy().value() - 0.7).abs() < 1e-12);
            assert!((from_counts.adherence().value() - a.value()).abs() < 1e-12);
        }
        let best = (scaled(ex.best.final_accuracy(), n)).round() as u64;
        let worst = (scaled(ex.worst.final_accuracy(), n)).round() as u64;
        assert_eq!(best, *sets[k as usize].last().unwrap());
        assert_eq!(worst, *sets[k as usize].first().unwrap());
    }
}

#[test]
fn inverse_matches_enumeration() {
    // For every attainable correct count x, the adherence counts reaching it.
    let (n, m) = (10u32, 7u32);
    let acc = AiAccuracy::new(0.7).unwrap();
    let sets = brute_force(n, m);
    for x in 0..=n as u64 {
        let ks: Vec<u64> = (0..=n as u64).filter(|&k| sets[k as usize].contains(&x)).collect();
        let interval = invert_accuracy(acc, Fraction::new(x as f64 / n as f64).unwrap())
            .expect("every accuracy in [0, 1] is reachable");
        let lo = scaled(interval.lo, n);
        let hi = scaled(interval.hi, n);
        // Integer k reaching x step by two inside the continuous interval.
        let min_k = *ks.first().unwrap() as f64;
        let max_k = *ks.last().unwrap() as f64;
        assert!((lo - min_k).abs() < 1e-9, "x={x}: {lo} vs {min_k}");
        assert!((hi - max_k).abs() < 1e-9, "x={x}: {hi} vs {max_k}");
        // symmetric shape: the inverse equals the envelope at A = x / n
        let env = envelope(acc, Fraction::new(x as f64 / n as f64).unwrap());
        assert!((env.lo().value() - interval.lo.value()).abs() < 1e-12);
        assert!((env.hi().value() - interval.hi.value()).abs() < 1e-12);
    }
}

#[test]
fn zero_accuracy_only_at_one_adherence_level() {
    let sets = brute_force(10, 7);
    let ks: Vec<usize> = (0..=10).filter(|&k| sets[k].contains(&0)).collect();
    assert_eq!(ks, [3]);
    let i = invert_accuracy(AiAccuracy::new(0.7).unwrap(), Fraction::ZERO).unwrap();
    assert!((i.lo.value() - 0.3).abs() < 1e-12 && (i.hi.value() - 0.3).abs() < 1e-12);
}
