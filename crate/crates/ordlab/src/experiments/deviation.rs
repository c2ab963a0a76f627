use super::counts::pulled_back_order;
use crate::error::{Error, Result};
use crate::orders::{all_perms, factorial, Perm};
use crate::rng::stream;
use crate::structures::{Embedding, Structure};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Exact mode enumerates every host order; infeasible past this size.
pub const MAX_EXACT_UNIVERSE: usize = 7;

/// Where the tested host orders come from. Exact mode is the true maximum;
/// the other two are declared lower bounds on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdSource {
    Exact,
    Sampled { orders: usize, seed: u64 },
    /// Sampled orders plus degree-sorted and per-root breadth-first orders.
    Heuristics { orders: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationProfile {
    pub k: usize,
    pub n_ind: u64,
    pub orders_tested: usize,
    /// max over tested host orders and all k! pattern orders of
    /// |n_ord / n_ind - 1/k!|.
    pub max_dev: Rational,
    /// max_dev * k!/2.
    pub tv_bound: Rational,
}

impl DeviationProfile {
    pub fn max_dev_f64(&self) -> f64 {
        self.max_dev.to_f64().unwrap_or(f64::NAN)
    }
    pub fn tv_bound_f64(&self) -> f64 {
        self.tv_bound.to_f64().unwrap_or(f64::NAN)
    }
}

/// delta * k!/2, the total-variation bound induced by a uniform deviation
/// delta of the ordered-embedding proportions.
pub fn tv_bound_from_delta(delta: &Rational, k: usize) -> Result<Rational> {
    if delta.is_negative() {
        return Err(Error::InvalidArgument(format!("delta {delta} < 0")));
    }
    Ok(delta * Rational::new(factorial(k), BigInt::from(2)))
}

pub fn tv_bound_from_delta_f64(delta: f64, k: usize) -> Result<f64> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidArgument(format!("delta {delta} < 0")));
    }
    Ok(delta * factorial(k).to_f64().unwrap_or(f64::NAN) / 2.0)
}

fn degree_sorted_orders(g: &Structure) -> Vec<Perm> {
    let Structure::Hypergraph(hg) = g else {
        return vec![];
    };
    let mut asc: Perm = (0..hg.n()).collect();
    asc.sort_by_key(|&v| (hg.degree(v), v));
    let mut desc = asc.clone();
    desc.reverse();
    vec![asc, desc]
}

fn bfs_orders(g: &Structure) -> Vec<Perm> {
    let Structure::Hypergraph(hg) = g else {
        return vec![];
    };
    let n = hg.n();
    (0..n)
        .map(|root| {
            let mut seen = vec![false; n];
            let mut order: Perm = Vec::with_capacity(n);
            let mut queue = std::collections::VecDeque::from([root]);
            seen[root] = true;
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for w in hg.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            for v in 0..n {
                if !seen[v] {
                    order.push(v);
                }
            }
            order
        })
        .collect()
}

fn host_orders(g: &Structure, source: OrdSource) -> Result<Vec<Perm>> {
    let n = g.size();
    match source {
        OrdSource::Exact => {
            if n > MAX_EXACT_UNIVERSE {
                return Err(Error::SizeLimit {
                    what: "exact deviation universe",
                    got: n,
                    max: MAX_EXACT_UNIVERSE,
                });
            }
            Ok(all_perms(n))
        }
        OrdSource::Sampled { orders, seed } => {
            let mut rng = stream(seed, "deviation/sample");
            Ok((0..orders)
                .map(|_| {
                    let mut p: Perm = (0..n).collect();
                    p.shuffle(&mut rng);
                    p
                })
                .collect())
        }
        OrdSource::Heuristics { orders, seed } => {
            let mut out = host_orders(g, OrdSource::Sampled { orders, seed })?;
            out.extend(degree_sorted_orders(g));
            out.extend(bfs_orders(g));
            Ok(out)
        }
    }
}

/// Largest observed |n_ord/n_ind - 1/k!| over the tested host orders, with
/// zero-count pattern orders included in the maximization.
pub fn deviation_profile(
    h: &Structure,
    g: &Structure,
    source: OrdSource,
) -> Result<DeviationProfile> {
    let k = h.size();
    let embeddings: Vec<Embedding> = Structure::embeddings(h, g)?;
    if embeddings.is_empty() {
        return Err(Error::InvalidArgument(
            "pattern has no embeddings into the host".into(),
        ));
    }
    let n_ind = embeddings.len() as u64;
    let orders = host_orders(g, source)?;
    let orders_tested = orders.len();
    let k_fact = factorial(k);
    let pattern_orders = k_fact
        .to_usize()
        .filter(|&f| f <= 40320)
        .ok_or(Error::SizeLimit {
            what: "pattern universe",
            got: k,
            max: 8,
        })?;

    // deviation of a count c: |c * k! - n_ind| / (n_ind * k!).
    let denom = Rational::new(BigInt::from(n_ind) * &k_fact, BigInt::from(1));
    let max_dev = orders
        .par_iter()
        .map(|ord_g| {
            let rank = crate::orders::position_of(ord_g);
            let mut by_pattern: BTreeMap<Perm, u64> = BTreeMap::new();
            for phi in &embeddings {
                *by_pattern.entry(pulled_back_order(phi, &rank)).or_insert(0) += 1;
            }
            let mut worst = BigInt::zero();
            if by_pattern.len() < pattern_orders {
                worst = BigInt::from(n_ind);
            }
            for c in by_pattern.values() {
                let diff = (BigInt::from(*c) * &k_fact - BigInt::from(n_ind)).abs();
                if diff > worst {
                    worst = diff;
                }
            }
            Rational::new(worst, BigInt::from(1)) / &denom
        })
        .reduce(Rational::zero, |a, b| if b > a { b } else { a });

    let tv_bound = tv_bound_from_delta(&max_dev, k)?;
    Ok(DeviationProfile {
        k,
        n_ind,
        orders_tested,
        max_dev,
        tv_bound,
    })
}
