//! Gaussian degree orderings: the padded edge-variable construction for
//! graphs, and its hypergraph variant built from exchangeable normal blocks.

use super::numeric::normal_quantile;
use crate::error::{Error, Result};
use crate::orders::Perm;
use crate::structures::Hypergraph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Attempts before a persistent floating-point tie aborts the sample.
pub(crate) const TIE_ATTEMPTS: u32 = 64;

fn check_degree_cap(g: &Hypergraph, d_cap: usize) -> Result<()> {
    let max = g.max_degree();
    if max > d_cap {
        return Err(Error::InvalidArgument(format!(
            "max degree {max} exceeds the degree cap {d_cap}"
        )));
    }
    Ok(())
}

/// Sorts vertices by ascending score; None on an exact tie.
pub(crate) fn order_by_scores(scores: &[f64]) -> Option<Perm> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[a].partial_cmp(&scores[b]).expect("scores are finite"));
    if idx.windows(2).any(|w| scores[w[0]] == scores[w[1]]) {
        return None;
    }
    Some(idx)
}

pub(crate) fn sample_until_untied(
    n: usize,
    mut draw: impl FnMut() -> Vec<f64>,
) -> Result<Perm> {
    for _ in 0..TIE_ATTEMPTS {
        let scores = draw();
        debug_assert_eq!(scores.len(), n);
        if let Some(p) = order_by_scores(&scores) {
            return Ok(p);
        }
    }
    Err(Error::ConstructionFailed {
        attempts: TIE_ATTEMPTS,
        reason: "persistent tie in Gaussian scores".into(),
    })
}

/// One draw of the padded Gaussian degree ordering on a graph: every vertex
/// is topped up to degree exactly `d_cap` with fresh auxiliary edges, every
/// edge carries an independent standard normal, and vertices are ranked by
/// the sum over their incident edges. Auxiliary vertices are not ordered.
pub fn sample_gaussian_ordering<R: Rng>(
    g: &Hypergraph,
    d_cap: usize,
    rng: &mut R,
) -> Result<Perm> {
    if !g.is_graph() {
        return Err(Error::InvalidArgument(
            "gaussian ordering is defined on graphs".into(),
        ));
    }
    check_degree_cap(g, d_cap)?;
    sample_until_untied(g.n(), || {
        let mut y = vec![0.0f64; g.n()];
        for e in g.edges() {
            let z: f64 = StandardNormal.sample(rng);
            y[e[0]] += z;
            y[e[1]] += z;
        }
        for (x, yx) in y.iter_mut().enumerate() {
            for _ in g.degree(x)..d_cap {
                let z: f64 = StandardNormal.sample(rng);
                *yx += z;
            }
        }
        y
    })
}

/// Exchangeable standard normal block: T_1..T_{r-1} iid uniform, the last
/// coordinate closes the sum to 0 mod 1, and each Z_i is the normal quantile
/// of T_i. Every (r-1)-subset is iid; the full vector is dependent.
pub fn sample_exchangeable_block<R: Rng>(r: usize, rng: &mut R) -> Result<Vec<f64>> {
    if r < 2 {
        return Err(Error::InvalidArgument("block size must be at least 2".into()));
    }
    let ts = loop {
        let mut ts: Vec<f64> = (0..r - 1).map(|_| rng.gen::<f64>()).collect();
        let sum: f64 = ts.iter().sum();
        ts.push((-sum).rem_euclid(1.0));
        if ts.iter().all(|&t| t > 0.0 && t < 1.0) {
            break ts;
        }
    };
    ts.into_iter().map(normal_quantile).collect()
}

/// Hypergraph variant: each hyperedge contributes one exchangeable block,
/// its slots matched to the hyperedge's vertices by a uniform bijection so
/// the law is invariant under automorphisms; vertices below the degree cap
/// get independent normal top-ups.
pub fn sample_hypergraph_gaussian_ordering<R: Rng>(
    g: &Hypergraph,
    d_cap: usize,
    rng: &mut R,
) -> Result<Perm> {
    check_degree_cap(g, d_cap)?;
    let r = g.r();
    let mut result = Err(Error::ConstructionFailed {
        attempts: 0,
        reason: "unreachable".into(),
    });
    for _ in 0..TIE_ATTEMPTS {
        let mut y = vec![0.0f64; g.n()];
        for e in g.edges() {
            let block = sample_exchangeable_block(r, rng)?;
            let mut slots: Vec<usize> = (0..r).collect();
            slots.shuffle(rng);
            for (i, &x) in e.iter().enumerate() {
                y[x] += block[slots[i]];
            }
        }
        for (x, yx) in y.iter_mut().enumerate() {
            for _ in g.degree(x)..d_cap {
                let z: f64 = StandardNormal.sample(rng);
                *yx += z;
            }
        }
        match order_by_scores(&y) {
            Some(p) => return Ok(p),
            None => {
                result = Err(Error::ConstructionFailed {
                    attempts: TIE_ATTEMPTS,
                    reason: "persistent tie in Gaussian scores".into(),
                });
            }
        }
    }
    result
}
