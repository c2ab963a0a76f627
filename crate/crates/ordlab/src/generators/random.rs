use crate::error::{Error, Result};
use crate::rng::stream;
use crate::structures::Hypergraph;
use itertools::Itertools;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use std::collections::BTreeSet;

/// Above this many candidate hyperedges, per-edge Bernoulli enumeration is
/// replaced by a binomial count draw plus rejection sampling of distinct
/// r-subsets. Both paths realize the same product measure.
const ENUMERATION_LIMIT: u128 = 1 << 20;

fn binom(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// G(n, r, p): each of the (n choose r) hyperedges is present independently
/// with probability p.
pub fn random_hypergraph(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = stream(seed, "gen/random");
    let total = binom(n, r);
    if total <= ENUMERATION_LIMIT {
        let edges: Vec<Vec<usize>> = (0..n)
            .combinations(r)
            .filter(|_| rng.gen::<f64>() < p)
            .collect();
        return Hypergraph::new(n, r, edges);
    }
    let count = Binomial::new(total as u64, p)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?
        .sample(&mut rng);
    let mut chosen: BTreeSet<Vec<usize>> = BTreeSet::new();
    while (chosen.len() as u64) < count {
        let mut edge = rand::seq::index::sample(&mut rng, n, r).into_vec();
        edge.sort_unstable();
        chosen.insert(edge);
    }
    Hypergraph::new(n, r, chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extreme_probabilities() {
        let empty = random_hypergraph(6, 2, 0.0, 1).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = random_hypergraph(6, 2, 1.0, 1).unwrap();
        assert_eq!(full.edge_count(), 15);
        let full3 = random_hypergraph(6, 3, 1.0, 1).unwrap();
        assert_eq!(full3.edge_count(), 20);
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(random_hypergraph(6, 2, -0.1, 1).is_err());
        assert!(random_hypergraph(6, 2, 1.5, 1).is_err());
    }

    #[test]
    fn edge_count_is_binomial() {
        // n=6, r=2, p=1/2: count ~ Binomial(15, 1/2), mean 7.5, var 3.75.
        let runs = 10_000usize;
        let mut total = 0usize;
        for s in 0..runs {
            total += random_hypergraph(6, 2, 0.5, s as u64).unwrap().edge_count();
        }
        let mean = total as f64 / runs as f64;
        let sigma = (3.75f64 / runs as f64).sqrt();
        assert!(
            (mean - 7.5).abs() < 3.0 * sigma,
            "mean {mean} vs 7.5 (3 sigma = {:.4})",
            3.0 * sigma
        );
    }

    #[test]
    fn large_candidate_space_uses_count_sampling() {
        // (40 choose 3) = 9880 <= 2^20 enumerates; (n choose r) > 2^20 takes
        // the binomial path. n=60, r=5: 5461512 candidates.
        let g = random_hypergraph(60, 5, 1e-5, 9).unwrap();
        for e in g.edges() {
            assert_eq!(e.len(), 5);
        }
        // Mean count 54.6; assert a sane band rather than a tight law.
        assert!(g.edge_count() < 300, "count {}", g.edge_count());
    }

    #[test]
    fn seed_determinism() {
        let a = random_hypergraph(12, 3, 0.3, 5).unwrap();
        let b = random_hypergraph(12, 3, 0.3, 5).unwrap();
        let c = random_hypergraph(12, 3, 0.3, 6).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a.edges(), c.edges());
    }
}
