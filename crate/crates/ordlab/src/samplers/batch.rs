//! Deterministic batch estimation: N draws of a seed-deterministic sampler
//! merged into an empirical order distribution. Each sample runs on its own
//! derived stream keyed by (seed, sample index), so the result is identical
//! for any worker count.

use crate::error::Result;
use crate::orders::{OrderDistribution, Perm};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Draws `samples` orders in parallel and counts them. `draw` receives the
/// sample's private RNG stream.
pub fn sample_empirical(
    n_universe: usize,
    samples: usize,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> Result<Perm> + Sync,
) -> Result<OrderDistribution> {
    let counts = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = crate::rng::sample_stream(seed, i);
            draw(&mut rng)
        })
        .try_fold(BTreeMap::<Perm, u64>::new, |mut acc, p| {
            *acc.entry(p?).or_insert(0) += 1;
            Ok::<_, crate::error::Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (p, c) in b {
                *a.entry(p).or_insert(0) += c;
            }
            Ok(a)
        })?;
    OrderDistribution::from_counts(n_universe, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Hypergraph;

    #[test]
    fn matches_a_serial_loop() {
        let g = Hypergraph::path(3).unwrap();
        let n = 2_000;
        let par = sample_empirical(3, n, 77, |rng| {
            crate::samplers::sample_gaussian_ordering(&g, 2, rng)
        })
        .unwrap();
        let mut counts = BTreeMap::new();
        for i in 0..n as u64 {
            let mut rng = crate::rng::sample_stream(77, i);
            let p = crate::samplers::sample_gaussian_ordering(&g, 2, &mut rng).unwrap();
            *counts.entry(p).or_insert(0u64) += 1;
        }
        let serial = OrderDistribution::from_counts(3, counts).unwrap();
        assert_eq!(par, serial);
    }

    #[test]
    fn error_in_any_sample_propagates() {
        let g = Hypergraph::new(3, 2, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        // Degree cap below the max degree fails on every sample.
        assert!(sample_empirical(3, 100, 5, |rng| {
            crate::samplers::sample_gaussian_ordering(&g, 1, rng)
        })
        .is_err());
    }
}
