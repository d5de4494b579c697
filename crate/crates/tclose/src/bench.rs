//! Micro-benchmark harness comparing the quadratic definition-style EMD
//! against the single-pass scan.
//!
//! Pairs are generated with a shared denominator so machine-word rationals
//! stay exact; every timed pair is also checked for value equality between
//! the two routes.

use std::time::Instant;

use num_rational::Ratio;
use rand::distributions::Uniform;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::emd::{emd_definition_slice, emd_efficient_slice};

/// Timings for one domain size, in nanoseconds per evaluation.
#[derive(Debug, Clone)]
pub struct BenchResult {
    pub m: usize,
    pub efficient_ns: f64,
    /// Absent when the naive route was skipped.
    pub naive_ns: Option<f64>,
}

impl BenchResult {
    pub fn ratio(&self) -> Option<f64> {
        self.naive_ns.map(|n| n / self.efficient_ns)
    }
}

/// A random exact distribution of length m: integer counts summing to
/// 1000*m, drawn by cutting that total at m-1 uniform points. Every
/// distribution of a given length shares the same denominator, so prefix
/// sums stay small during the timed passes.
pub fn random_distribution(m: usize, rng: &mut impl Rng) -> Vec<Ratio<i128>> {
    let total = 1000 * m as i128;
    if m == 1 {
        return vec![Ratio::new(total, total)];
    }
    let mut cuts: Vec<i128> = rng
        .sample_iter(Uniform::new_inclusive(0, total))
        .take(m - 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(total);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let count = c - prev;
            prev = c;
            Ratio::new(count, total)
        })
        .collect()
}

/// Times both routes (or only the scan) over `reps` random pairs per size.
/// Asserts the two routes agree on every timed pair.
pub fn run(sizes: &[usize], reps: usize, include_naive: bool, seed: u64) -> Vec<BenchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::with_capacity(sizes.len());

    for &m in sizes {
        let mut efficient_total = 0.0;
        let mut naive_total = 0.0;
        for _ in 0..reps.max(1) {
            let p = random_distribution(m, &mut rng);
            let q = random_distribution(m, &mut rng);

            let start = Instant::now();
            let fast = emd_efficient_slice(&p, &q).expect("aligned by construction");
            efficient_total += start.elapsed().as_nanos() as f64;

            if include_naive {
                let start = Instant::now();
                let slow = emd_definition_slice(&p, &q).expect("aligned by construction");
                naive_total += start.elapsed().as_nanos() as f64;
                assert_eq!(fast, slow, "routes disagree at m = {m}");
            }
        }
        let reps = reps.max(1) as f64;
        results.push(BenchResult {
            m,
            efficient_ns: efficient_total / reps,
            naive_ns: include_naive.then_some(naive_total / reps),
        });
    }
    results
}

/// Formats results as an aligned table.
pub fn render(results: &[BenchResult]) -> String {
    let mut out = format!(
        "{:>10}  {:>14}  {:>14}  {:>8}\n",
        "m", "efficient (ns)", "naive (ns)", "ratio"
    );
    for r in results {
        let naive = r
            .naive_ns
            .map(|n| format!("{n:.0}"))
            .unwrap_or_else(|| "-".to_string());
        let ratio = r
            .ratio()
            .map(|x| format!("{x:.1}x"))
            .unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{:>10}  {:>14.0}  {:>14}  {:>8}\n",
            r.m, r.efficient_ns, naive, ratio
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn random_distributions_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in [1, 2, 17, 256] {
            let p = random_distribution(m, &mut rng);
            assert_eq!(p.len(), m);
            let total: Ratio<i128> = p.iter().sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn size_two_routes_agree() {
        let results = run(&[2], 50, true, 42);
        assert_eq!(results.len(), 1);
        assert!(results[0].naive_ns.is_some());
    }

    #[test]
    fn render_includes_every_size() {
        let results = run(&[2, 4], 3, false, 1);
        let table = render(&results);
        assert!(table.contains('2'));
        assert!(table.contains('4'));
    }
}
