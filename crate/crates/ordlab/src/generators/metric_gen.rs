use super::girth_gen::{large_girth_hypergraph, GirthParams};
use crate::error::{Error, Result};
use crate::rng::{derive_seed, stream};
use crate::scalar::Scalar;
use crate::structures::{Embedding, Hypergraph, MetricSpace, METRIC_TOL};
use crate::Rational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use std::collections::BTreeSet;

/// Gluing construction: a k-uniform large-girth scaffold hosts one random
/// isometric copy of the seed space per hyperedge; the ambient metric is the
/// shortest-path extension of the planted distances, with unreachable pairs
/// capped at the largest finite distance.
#[derive(Debug, Clone)]
pub struct MetricOutput<T: Scalar> {
    pub space: MetricSpace<T>,
    pub hypergraph: Hypergraph,
    /// placements[i][s] = host vertex of seed point s on hyperedge i.
    pub placements: Vec<Embedding>,
    pub restricted: Vec<Embedding>,
    /// Cap applied to unreachable pairs; None when the scaffold is connected.
    pub beta: T,
}

/// ceil(max distance / min distance), the number of minimum-length steps
/// needed to cover the largest distance. A 1e-12 slack keeps ratios that are
/// integers up to float noise from rounding up.
pub fn spread<T: Scalar>(x: &MetricSpace<T>) -> Result<usize> {
    let (Some(min), Some(max)) = (x.min_distance(), x.max_distance()) else {
        return Err(Error::InvalidArgument(
            "spread needs at least two points".into(),
        ));
    };
    if !(min.to_f64_lossy() > 0.0) {
        return Err(Error::InvalidStructure(
            "distances must be strictly positive".into(),
        ));
    }
    let ratio = max.to_f64_lossy() / min.to_f64_lossy();
    Ok(((ratio - 1e-12).ceil() as usize).max(1))
}

pub fn metric_construction<T: Scalar>(
    x: &MetricSpace<T>,
    n: usize,
    seed: u64,
) -> Result<MetricOutput<T>> {
    metric_construction_with_a(x, n, 0.5, seed)
}

pub fn metric_construction_with_a<T: Scalar>(
    x: &MetricSpace<T>,
    n: usize,
    a: f64,
    seed: u64,
) -> Result<MetricOutput<T>> {
    let k = x.n();
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "seed space has {k} points, need at least 3"
        )));
    }
    if !x.check_metric() {
        return Err(Error::InvalidStructure(
            "seed space fails the metric axioms".into(),
        ));
    }
    let alpha = spread(x)?;
    let g = (alpha + 1).max(3);
    let params = GirthParams { n, r: k, g, a };
    let scaffold = large_girth_hypergraph(params, derive_seed(seed, "gen/metric/scaffold"))?;
    let mut rng = stream(seed, "gen/metric/plant");

    let mut placements: Vec<Embedding> = Vec::with_capacity(scaffold.edge_count());
    let mut dist: Vec<Vec<Option<T>>> = vec![vec![None; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(T::zero());
    }
    for e in scaffold.edges() {
        let mut hosts = e.clone();
        hosts.shuffle(&mut rng);
        for s in 0..k {
            for t in 0..s {
                let (u, v) = (hosts[s], hosts[t]);
                // Girth >= 3: no vertex pair lies in two hyperedges, so each
                // slot is written once.
                debug_assert!(dist[u][v].is_none());
                dist[u][v] = Some(x.dist(s, t).clone());
                dist[v][u] = Some(x.dist(s, t).clone());
            }
        }
        placements.push(hosts);
    }

    // All-pairs shortest paths over the planted edges.
    for mid in 0..n {
        for i in 0..n {
            let Some(di) = dist[i][mid].clone() else { continue };
            for j in 0..n {
                let Some(dj) = &dist[mid][j] else { continue };
                let via = di.clone() + dj.clone();
                if dist[i][j].as_ref().is_none_or(|c| via < *c) {
                    dist[i][j] = Some(via);
                }
            }
        }
    }

    let mut beta: Option<T> = None;
    for i in 0..n {
        for j in 0..i {
            if let Some(d) = &dist[i][j] {
                if beta.as_ref().is_none_or(|b| d > b) {
                    beta = Some(d.clone());
                }
            }
        }
    }
    let beta = beta.expect("scaffold is nonempty, so some pair is reachable");
    let rows: Vec<Vec<T>> = dist
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|d| d.unwrap_or_else(|| beta.clone()))
                .collect()
        })
        .collect();
    let space = MetricSpace::new(rows)?;

    if !space.check_metric() {
        return Err(Error::VerificationFailed(
            "shortest-path extension violates the metric axioms".into(),
        ));
    }
    for hosts in &placements {
        for s in 0..k {
            for t in 0..s {
                if !space.dist(hosts[s], hosts[t]).approx_eq(x.dist(s, t), METRIC_TOL) {
                    return Err(Error::VerificationFailed(format!(
                        "planted distance distorted between hosts {} and {}",
                        hosts[s], hosts[t]
                    )));
                }
            }
        }
    }

    let auts = x.automorphisms();
    let mut restricted: Vec<Embedding> = Vec::with_capacity(auts.len() * placements.len());
    for hosts in &placements {
        for alpha in &auts {
            restricted.push(alpha.iter().map(|&s| hosts[s]).collect());
        }
    }
    Ok(MetricOutput {
        space,
        hypergraph: scaffold,
        placements,
        restricted,
        beta,
    })
}

/// Exact-lane check that every off-diagonal distance of `y` is a finite sum
/// of (not necessarily distinct) nonzero distances of `x`. Sums are grown
/// breadth-first up to the largest distance of `y`; generators exceeding the
/// cap are discarded up front.
pub fn distances_in_semigroup(y: &MetricSpace<Rational>, x: &MetricSpace<Rational>) -> bool {
    let Some(cap) = y.max_distance().cloned() else {
        return true;
    };
    let generators: BTreeSet<Rational> = (0..x.n())
        .flat_map(|i| (0..i).map(move |j| x.dist(i, j).clone()))
        .filter(|d| !d.is_zero() && *d <= cap)
        .collect();
    let mut sums: BTreeSet<Rational> = generators.clone();
    let mut frontier: Vec<Rational> = sums.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for g in &generators {
            let next = s.clone() + g.clone();
            if next <= cap && sums.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    (0..y.n()).all(|i| (0..i).all(|j| sums.contains(y.dist(i, j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn equilateral() -> MetricSpace<f64> {
        MetricSpace::new(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn spread_examples() {
        assert_eq!(spread(&equilateral()).unwrap(), 1);
        let stretched = MetricSpace::new(vec![
            vec![0.0, 1.0, 1.2],
            vec![1.0, 0.0, 1.0],
            vec![1.2, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(spread(&stretched).unwrap(), 2);
        // Ratio exactly 2 stays at 2 instead of rounding to 3.
        let path = MetricSpace::new(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(spread(&path).unwrap(), 2);
    }

    #[test]
    fn rejects_degenerate_seeds() {
        let two = MetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(metric_construction(&two, 10, 1).is_err());
        let zeroed = MetricSpace::new(vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(metric_construction(&zeroed, 10, 1).is_err());
    }

    #[test]
    fn equal_distances_restrict_exactly() {
        let x = equilateral();
        let out = metric_construction(&x, 12, 3).unwrap();
        for hosts in &out.placements {
            for s in 0..3 {
                for t in 0..s {
                    assert_eq!(*out.space.dist(hosts[s], hosts[t]), 1.0);
                }
            }
        }
    }

    #[test]
    fn float_triangle_passes_all_verification() {
        let x = MetricSpace::new(vec![
            vec![0.0, 1.0, 1.2],
            vec![1.0, 0.0, 1.0],
            vec![1.2, 1.0, 0.0],
        ])
        .unwrap();
        for seed in 0..5 {
            let out = metric_construction(&x, 20, seed).unwrap();
            assert!(out.space.check_metric());
            assert_eq!(out.space.n(), 20);
        }
    }

    #[test]
    fn restricted_embeddings_are_isometric_and_counted() {
        let x = equilateral();
        let out = metric_construction(&x, 12, 9).unwrap();
        // All 6 permutations of an equilateral triangle are isometries.
        assert_eq!(out.restricted.len(), 6 * out.placements.len());
        for emb in &out.restricted {
            for s in 0..3 {
                for t in 0..s {
                    assert_eq!(out.space.dist(emb[s], emb[t]), x.dist(s, t));
                }
            }
        }
    }

    #[test]
    fn rational_lane_lands_in_semigroup() {
        let x = MetricSpace::new(vec![
            vec![rat(0, 1), rat(1, 1), rat(6, 5)],
            vec![rat(1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(6, 5), rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        for seed in 0..3 {
            let out = metric_construction(&x, 20, seed).unwrap();
            assert!(out.space.check_metric());
            assert!(distances_in_semigroup(&out.space, &x));
        }
    }

    #[test]
    fn semigroup_check_rejects_outsiders() {
        let x = MetricSpace::new(vec![
            vec![rat(0, 1), rat(2, 1), rat(2, 1)],
            vec![rat(2, 1), rat(0, 1), rat(2, 1)],
            vec![rat(2, 1), rat(2, 1), rat(0, 1)],
        ])
        .unwrap();
        // Distance 3 is not a sum of 2s.
        let y = MetricSpace::new(vec![
            vec![rat(0, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(0, 1), rat(2, 1)],
            vec![rat(3, 1), rat(2, 1), rat(0, 1)],
        ])
        .unwrap();
        assert!(!distances_in_semigroup(&y, &x));
        assert!(distances_in_semigroup(&x, &x));
    }

    #[test]
    fn beta_caps_cross_component_pairs() {
        // Small n with modest a keeps the scaffold sparse; whatever the
        // draw, every distance is finite and no larger than beta.
        let x = equilateral();
        let out = metric_construction(&x, 9, 4).unwrap();
        let max = out.space.max_distance().unwrap();
        assert_eq!(*max, out.beta);
        for i in 0..out.space.n() {
            for j in 0..i {
                assert!(*out.space.dist(i, j) <= out.beta);
                assert!(*out.space.dist(i, j) > 0.0);
            }
        }
    }

    #[test]
    fn construction_is_seed_deterministic() {
        let x = equilateral();
        let a = metric_construction(&x, 12, 8).unwrap();
        let b = metric_construction(&x, 12, 8).unwrap();
        assert_eq!(a.placements, b.placements);
        for i in 0..a.space.n() {
            for j in 0..i {
                assert_eq!(a.space.dist(i, j), b.space.dist(i, j));
            }
        }
    }
}
