//! Monte-Carlo event estimation over sampled orders, with a Wilson score
//! interval. Each sample runs on its own derived stream keyed by
//! (seed, index), so the estimate is identical for any worker count.

use crate::error::{Error, Result};
use crate::orders::Perm;
use crate::stats::wilson_interval;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Minimum sample count for an estimate to be meaningful at all.
pub const MIN_MC_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MCEstimate {
    pub estimate: f64,
    /// 99% Wilson interval.
    pub ci_low: f64,
    pub ci_high: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

/// Estimates P(event) under the order law induced by `sampler`.
pub fn mc_estimate(
    event: impl Fn(&Perm) -> bool + Sync,
    sampler: impl Fn(&mut ChaCha8Rng) -> Result<Perm> + Sync,
    samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    let hits = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = crate::rng::sample_stream(seed, i);
            sampler(&mut rng).map(|p| u64::from(event(&p)))
        })
        .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
    let (ci_low, ci_high) = wilson_interval(hits, samples as u64);
    Ok(MCEstimate {
        estimate: hits as f64 / samples as f64,
        ci_low,
        ci_high,
        hits,
        samples: samples as u64,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::Hypergraph;
    use rand::seq::SliceRandom;

    fn uniform_order(n: usize) -> impl Fn(&mut ChaCha8Rng) -> Result<Perm> + Sync {
        move |rng| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            Ok(p)
        }
    }

    #[test]
    fn constant_event_pins_the_interval() {
        let est = mc_estimate(|_| true, uniform_order(3), 1_000, 9).unwrap();
        assert_eq!(est.hits, 1_000);
        assert_eq!(est.estimate, 1.0);
        assert!(est.ci_low > 0.99);
        assert_eq!(est.ci_high, 1.0);
    }

    #[test]
    fn uniform_pair_event_covers_half() {
        // P(0 precedes 1) = 1/2 under the uniform order on 4 elements.
        let pos = |p: &Perm, v: usize| p.iter().position(|&x| x == v).unwrap();
        let est = mc_estimate(
            |p| pos(p, 0) < pos(p, 1),
            uniform_order(4),
            20_000,
            11,
        )
        .unwrap();
        assert!(est.ci_low <= 0.5 && 0.5 <= est.ci_high, "{est:?}");
    }

    #[test]
    fn gaussian_path_identity_order_covers_quarter() {
        // Degree-2 padding on the 3-path: orders with the degree-2 vertex in
        // the middle position carry mass 1/4 each, the rest 1/8. [0, 1, 2]
        // is one of the former.
        let g = Hypergraph::path(3).unwrap();
        let est = mc_estimate(
            |p| p == &vec![0, 1, 2],
            |rng| crate::samplers::sample_gaussian_ordering(&g, 2, rng),
            100_000,
            13,
        )
        .unwrap();
        assert!(est.ci_low <= 0.25 && 0.25 <= est.ci_high, "{est:?}");
    }

    #[test]
    fn worker_invariant_by_construction() {
        let a = mc_estimate(|p| p[0] == 0, uniform_order(5), 2_000, 21).unwrap();
        let b = mc_estimate(|p| p[0] == 0, uniform_order(5), 2_000, 21).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_tiny_sample_counts() {
        assert!(mc_estimate(|_| true, uniform_order(2), 99, 1).is_err());
    }

    #[test]
    fn sampler_errors_propagate() {
        let g = Hypergraph::new(3, 2, [vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let r = mc_estimate(
            |_| true,
            |rng| crate::samplers::sample_gaussian_ordering(&g, 1, rng),
            500,
            3,
        );
        assert!(r.is_err());
    }
}
