//! Bipartite part-ordering sampler: name the two parts in random order,
//! shuffle each part uniformly, and concatenate.

use crate::error::{Error, Result};
use crate::orders::Perm;
use crate::structures::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// The two color classes of a connected bipartite graph, the class of vertex
/// 0 first. Connectivity makes the classes canonical.
pub fn bipartition(g: &Hypergraph) -> Result<(Vec<usize>, Vec<usize>)> {
    if !g.is_graph() {
        return Err(Error::InvalidArgument("bipartition needs a graph".into()));
    }
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::InvalidStructure(
            "bipartite ordering needs a connected graph".into(),
        ));
    }
    let mut side = vec![usize::MAX; g.n()];
    side[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if side[w] == usize::MAX {
                side[w] = 1 - side[u];
                queue.push_back(w);
            } else if side[w] == side[u] {
                return Err(Error::InvalidStructure("graph is not bipartite".into()));
            }
        }
    }
    Ok((
        (0..g.n()).filter(|&v| side[v] == 0).collect(),
        (0..g.n()).filter(|&v| side[v] == 1).collect(),
    ))
}

/// One draw: a fair coin picks which part goes below, then each part is
/// ordered uniformly at random.
pub fn sample_bipartite_ordering<R: Rng>(g: &Hypergraph, rng: &mut R) -> Result<Perm> {
    let (mut a, mut b) = bipartition(g)?;
    if rng.gen::<bool>() {
        std::mem::swap(&mut a, &mut b);
    }
    a.shuffle(rng);
    b.shuffle(rng);
    a.extend(b);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::OrderDistribution;
    use crate::scalar::Scalar;
    use crate::stats::tv_threshold;

    #[test]
    fn recognizes_parts_and_rejects_bad_inputs() {
        let path = Hypergraph::path(3).unwrap();
        assert_eq!(bipartition(&path).unwrap(), (vec![0, 2], vec![1]));
        let triangle = Hypergraph::cycle(3).unwrap();
        assert!(bipartition(&triangle).is_err());
        let disconnected = Hypergraph::new(4, 2, [vec![0, 1]]).unwrap();
        assert!(bipartition(&disconnected).is_err());
    }

    #[test]
    fn k2_is_a_fair_coin() {
        let k2 = Hypergraph::complete(2, 2).unwrap();
        let mut rng = crate::rng::stream(31, "bi-k2");
        let n = 20_000;
        let mut first_is_zero = 0u64;
        for _ in 0..n {
            if sample_bipartite_ordering(&k2, &mut rng).unwrap()[0] == 0 {
                first_is_zero += 1;
            }
        }
        let p = first_is_zero as f64 / n as f64;
        assert!((p - 0.5).abs() < 4.0 * (0.25f64 / n as f64).sqrt());
    }

    #[test]
    fn path3_law_is_quarter_on_four_orders() {
        let path = Hypergraph::path(3).unwrap();
        let mut rng = crate::rng::stream(33, "bi-path3");
        let n = 40_000;
        let dist = OrderDistribution::from_samples(
            3,
            (0..n).map(|_| sample_bipartite_ordering(&path, &mut rng).unwrap()),
        )
        .unwrap();
        // Parts {0,2} and {1}; the four reachable orders each carry 1/4, and
        // orders splitting part {0,2} around vertex 1 never occur.
        for p in [vec![1, 0, 2], vec![1, 2, 0], vec![0, 2, 1], vec![2, 0, 1]] {
            let w = dist.weight(&p).to_f64_lossy();
            assert!((w - 0.25).abs() < 4.0 * (0.25f64 / n as f64).sqrt(), "{p:?}: {w}");
        }
        assert!(dist.weight(&[0, 1, 2]).to_f64_lossy() == 0.0);
        assert!(dist.weight(&[2, 1, 0]).to_f64_lossy() == 0.0);
        // And as a distribution it matches the exact construction law.
        let exact = OrderDistribution::from_exact_weights(
            3,
            [vec![1, 0, 2], vec![1, 2, 0], vec![0, 2, 1], vec![2, 0, 1]]
                .into_iter()
                .map(|p| (p, crate::Rational::new(1.into(), 4.into())))
                .collect(),
        )
        .unwrap();
        assert!(dist.tv_distance_f64(&exact).unwrap() < tv_threshold(3, n));
    }

    #[test]
    fn star_center_leads_half_the_time() {
        let star = Hypergraph::new(4, 2, [vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let mut rng = crate::rng::stream(37, "bi-star");
        let n = 20_000;
        let mut center_first = 0u64;
        for _ in 0..n {
            if sample_bipartite_ordering(&star, &mut rng).unwrap()[0] == 0 {
                center_first += 1;
            }
        }
        let p = center_first as f64 / n as f64;
        assert!((p - 0.5).abs() < 4.0 * (0.25f64 / n as f64).sqrt());
    }
}
