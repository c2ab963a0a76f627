use super::perm::{is_perm, parse_perm_key, perm_key, pushforward_perm, restrict_perm, Perm};
use crate::error::{Error, Result};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Probability distribution over the linear orders of 0..n-1. Exact mode
/// carries arbitrary-precision rational weights so equalities are decidable;
/// empirical mode carries sample counts. Entries with zero weight are never
/// stored, so structural equality on exact distributions is semantic equality.
#[derive(Debug, Clone, PartialEq)]
pub enum OrderDistribution {
    Exact {
        n: usize,
        weights: BTreeMap<Perm, Rational>,
    },
    Empirical {
        n: usize,
        counts: BTreeMap<Perm, u64>,
        total: u64,
    },
}

/// Exact enumeration bound: distributions are dense over n! orders.
pub const MAX_EXACT_N: usize = 8;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl OrderDistribution {
    pub fn n(&self) -> usize {
        match self {
            OrderDistribution::Exact { n, .. } | OrderDistribution::Empirical { n, .. } => *n,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OrderDistribution::Exact { .. })
    }

    /// The uniform measure: every one of the n! orders gets weight 1/n!.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_EXACT_N {
            return Err(Error::SizeLimit {
                what: "universe for exact uniform distribution",
                got: n,
                max: MAX_EXACT_N,
            });
        }
        let w = Rational::new(BigInt::one(), factorial(n));
        let weights = super::perm::all_perms(n)
            .into_iter()
            .map(|p| (p, w.clone()))
            .collect();
        Ok(OrderDistribution::Exact { n, weights })
    }

    pub fn point_mass(p: Perm) -> Result<Self> {
        if !is_perm(&p) {
            return Err(Error::InvalidArgument("point mass needs a permutation".into()));
        }
        let n = p.len();
        let mut weights = BTreeMap::new();
        weights.insert(p, Rational::one());
        Ok(OrderDistribution::Exact { n, weights })
    }

    /// Exact distribution from explicit weights; zero entries dropped, sum
    /// must be exactly 1.
    pub fn from_exact_weights(n: usize, weights: BTreeMap<Perm, Rational>) -> Result<Self> {
        let mut sum = Rational::zero();
        let mut clean = BTreeMap::new();
        for (p, w) in weights {
            if p.len() != n || !is_perm(&p) {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is not an order on 0..{n}",
                    perm_key(&p)
                )));
            }
            if w.is_negative() {
                return Err(Error::InvalidArgument("negative weight".into()));
            }
            sum += &w;
            if !w.is_zero() {
                clean.insert(p, w);
            }
        }
        if !sum.is_one() {
            return Err(Error::InvalidArgument(format!(
                "weights sum to {sum}, expected 1"
            )));
        }
        Ok(OrderDistribution::Exact { n, weights: clean })
    }

    pub fn from_samples(n: usize, samples: impl IntoIterator<Item = Perm>) -> Result<Self> {
        let mut counts: BTreeMap<Perm, u64> = BTreeMap::new();
        let mut total = 0u64;
        for p in samples {
            if p.len() != n || !is_perm(&p) {
                return Err(Error::InvalidArgument(format!(
                    "sample `{}` is not an order on 0..{n}",
                    perm_key(&p)
                )));
            }
            *counts.entry(p).or_insert(0) += 1;
            total += 1;
        }
        if total == 0 {
            return Err(Error::InvalidArgument("empty sample set".into()));
        }
        Ok(OrderDistribution::Empirical { n, counts, total })
    }

    /// Builds an empirical distribution from already-tallied counts.
    pub fn from_counts(n: usize, counts: BTreeMap<Perm, u64>) -> Result<Self> {
        for p in counts.keys() {
            if p.len() != n || !is_perm(p) {
                return Err(Error::InvalidArgument(format!(
                    "count key `{}` is not an order on 0..{n}",
                    perm_key(p)
                )));
            }
        }
        let counts: BTreeMap<Perm, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let total: u64 = counts.values().sum();
        if total == 0 {
            return Err(Error::InvalidArgument("empty sample set".into()));
        }
        Ok(OrderDistribution::Empirical { n, counts, total })
    }

    pub fn total_samples(&self) -> Option<u64> {
        match self {
            OrderDistribution::Exact { .. } => None,
            OrderDistribution::Empirical { total, .. } => Some(*total),
        }
    }

    /// Probability of one order, exact in both modes (empirical = count/total).
    pub fn weight(&self, p: &[usize]) -> Rational {
        match self {
            OrderDistribution::Exact { weights, .. } => {
                weights.get(p).cloned().unwrap_or_else(Rational::zero)
            }
            OrderDistribution::Empirical { counts, total, .. } => {
                let c = counts.get(p).copied().unwrap_or(0);
                Rational::new(BigInt::from(c), BigInt::from(*total))
            }
        }
    }

    pub fn support(&self) -> Vec<&Perm> {
        match self {
            OrderDistribution::Exact { weights, .. } => weights.keys().collect(),
            OrderDistribution::Empirical { counts, .. } => counts.keys().collect(),
        }
    }

    /// Push-forward along a bijection of the universe; mode preserved.
    pub fn pushforward(&self, phi: &[usize]) -> Result<Self> {
        match self {
            OrderDistribution::Exact { n, weights } => {
                let mut out = BTreeMap::new();
                for (p, w) in weights {
                    out.insert(pushforward_perm(p, phi)?, w.clone());
                }
                Ok(OrderDistribution::Exact { n: *n, weights: out })
            }
            OrderDistribution::Empirical { n, counts, total } => {
                let mut out = BTreeMap::new();
                for (p, c) in counts {
                    out.insert(pushforward_perm(p, phi)?, *c);
                }
                Ok(OrderDistribution::Empirical {
                    n: *n,
                    counts: out,
                    total: *total,
                })
            }
        }
    }

    /// Marginal law of the restriction to sorted subset S, relabeled to
    /// 0..|S|-1: the weight of an order on S sums the weights of all orders
    /// whose restriction it is.
    pub fn restriction_marginal(&self, s: &[usize]) -> Result<Self> {
        match self {
            OrderDistribution::Exact { weights, .. } => {
                let mut out: BTreeMap<Perm, Rational> = BTreeMap::new();
                for (p, w) in weights {
                    let key = restrict_perm(p, s)?;
                    *out.entry(key).or_insert_with(Rational::zero) += w;
                }
                Ok(OrderDistribution::Exact {
                    n: s.len(),
                    weights: out,
                })
            }
            OrderDistribution::Empirical { counts, total, .. } => {
                let mut out: BTreeMap<Perm, u64> = BTreeMap::new();
                for (p, c) in counts {
                    *out.entry(restrict_perm(p, s)?).or_insert(0) += c;
                }
                Ok(OrderDistribution::Empirical {
                    n: s.len(),
                    counts: out,
                    total: *total,
                })
            }
        }
    }

    /// Total variation distance (1/2)*sum |d1 - d2|, exact rational arithmetic
    /// in every mode combination.
    pub fn tv_distance(&self, other: &Self) -> Result<Rational> {
        if self.n() != other.n() {
            return Err(Error::UniverseMismatch(format!(
                "tv_distance: n = {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let mut keys: Vec<&Perm> = self.support();
        keys.extend(other.support());
        keys.sort();
        keys.dedup();
        let mut acc = Rational::zero();
        for p in keys {
            acc += (self.weight(p) - other.weight(p)).abs();
        }
        Ok(acc / Rational::from(BigInt::from(2)))
    }

    pub fn tv_distance_f64(&self, other: &Self) -> Result<f64> {
        Ok(self.tv_distance(other)?.to_f64().unwrap_or(f64::NAN))
    }

    /// Schema: `{"n":3,"mode":"exact","weights":{"0,1,2":"1/6",...}}`;
    /// empirical mode uses integer counts plus `"total"`.
    pub fn to_json(&self) -> Value {
        match self {
            OrderDistribution::Exact { n, weights } => {
                let mut map = Map::new();
                for (p, w) in weights {
                    map.insert(perm_key(p), Value::String(w.to_string()));
                }
                json!({ "n": n, "mode": "exact", "weights": Value::Object(map) })
            }
            OrderDistribution::Empirical { n, counts, total } => {
                let mut map = Map::new();
                for (p, c) in counts {
                    map.insert(perm_key(p), json!(c));
                }
                json!({ "n": n, "mode": "empirical", "weights": Value::Object(map), "total": total })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("order distribution json: {msg}"));
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing n"))? as usize;
        let mode = v
            .get("mode")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing mode"))?;
        let weights = v
            .get("weights")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing weights"))?;
        match mode {
            "exact" => {
                let mut map = BTreeMap::new();
                for (k, val) in weights {
                    let p = parse_perm_key(k)?;
                    let w: Rational = val
                        .as_str()
                        .ok_or_else(|| bad("exact weights must be strings"))?
                        .parse()
                        .map_err(|_| bad("unparseable rational weight"))?;
                    map.insert(p, w);
                }
                Self::from_exact_weights(n, map)
            }
            "empirical" => {
                let total = v
                    .get("total")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("missing total"))?;
                let mut map = BTreeMap::new();
                let mut sum = 0u64;
                for (k, val) in weights {
                    let p = parse_perm_key(k)?;
                    if p.len() != n {
                        return Err(bad("order key has wrong length"));
                    }
                    let c = val.as_u64().ok_or_else(|| bad("counts must be integers"))?;
                    sum += c;
                    if c > 0 {
                        map.insert(p, c);
                    }
                }
                if sum != total || total == 0 {
                    return Err(bad("counts do not sum to total"));
                }
                Ok(OrderDistribution::Empirical {
                    n,
                    counts: map,
                    total,
                })
            }
            other => Err(bad(&format!("unknown mode `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn uniform_weights() {
        let u1 = OrderDistribution::uniform(1).unwrap();
        assert_eq!(u1.weight(&[0]), rat(1, 1));
        let u3 = OrderDistribution::uniform(3).unwrap();
        assert_eq!(u3.support().len(), 6);
        assert_eq!(u3.weight(&[2, 0, 1]), rat(1, 6));
        let u4 = OrderDistribution::uniform(4).unwrap();
        assert_eq!(u4.weight(&[0, 1, 2, 3]), rat(1, 24));
        assert!(OrderDistribution::uniform(9).is_err());
    }

    #[test]
    fn weights_must_sum_to_one() {
        let mut w = BTreeMap::new();
        w.insert(vec![0, 1], rat(1, 3));
        assert!(OrderDistribution::from_exact_weights(2, w.clone()).is_err());
        w.insert(vec![1, 0], rat(2, 3));
        let d = OrderDistribution::from_exact_weights(2, w).unwrap();
        assert_eq!(d.weight(&[1, 0]), rat(2, 3));
    }

    #[test]
    fn pushforward_moves_mass() {
        let pm = OrderDistribution::point_mass(vec![0, 1, 2]).unwrap();
        let moved = pm.pushforward(&[1, 0, 2]).unwrap();
        assert_eq!(moved.weight(&[1, 0, 2]), rat(1, 1));
        assert_eq!(moved.weight(&[0, 1, 2]), rat(0, 1));
        let u = OrderDistribution::uniform(3).unwrap();
        assert_eq!(u.pushforward(&[2, 1, 0]).unwrap(), u);
    }

    #[test]
    fn marginal_of_uniform_is_uniform() {
        let u = OrderDistribution::uniform(3).unwrap();
        let m = u.restriction_marginal(&[0, 2]).unwrap();
        assert_eq!(m, OrderDistribution::uniform(2).unwrap());
    }

    #[test]
    fn marginal_of_point_mass() {
        let pm = OrderDistribution::point_mass(vec![2, 0, 1]).unwrap();
        let m = pm.restriction_marginal(&[0, 2]).unwrap();
        // 2 comes before 0; relabeled through {0,2} -> {0,1} that is (1,0).
        assert_eq!(m.weight(&[1, 0]), rat(1, 1));
    }

    #[test]
    fn empirical_marginal_recounts() {
        let d = OrderDistribution::from_samples(
            3,
            vec![vec![0, 1, 2], vec![0, 1, 2], vec![2, 1, 0], vec![1, 2, 0]],
        )
        .unwrap();
        let m = d.restriction_marginal(&[0, 1]).unwrap();
        assert_eq!(m.weight(&[0, 1]), rat(1, 2));
        assert_eq!(m.weight(&[1, 0]), rat(1, 2));
        assert_eq!(m.total_samples(), Some(4));
    }

    #[test]
    fn tv_examples() {
        let u2 = OrderDistribution::uniform(2).unwrap();
        assert_eq!(u2.tv_distance(&u2).unwrap(), rat(0, 1));
        let pm = OrderDistribution::point_mass(vec![0, 1]).unwrap();
        assert_eq!(pm.tv_distance(&u2).unwrap(), rat(1, 2));
        let u3 = OrderDistribution::uniform(3).unwrap();
        assert!(u3.tv_distance(&u2).is_err());
    }

    #[test]
    fn gaussian_path3_law_tv_from_uniform() {
        // Exact two-regular path law: orders with the middle vertex in the
        // middle get 1/4, the rest 1/8; TV from uniform = 1/6.
        let mut w = BTreeMap::new();
        for p in super::super::perm::all_perms(3) {
            let weight = if p[1] == 1 { rat(1, 4) } else { rat(1, 8) };
            w.insert(p, weight);
        }
        let d = OrderDistribution::from_exact_weights(3, w).unwrap();
        let u = OrderDistribution::uniform(3).unwrap();
        assert_eq!(d.tv_distance(&u).unwrap(), rat(1, 6));
    }

    #[test]
    fn json_round_trip_exact() {
        let u = OrderDistribution::uniform(3).unwrap();
        let v = u.to_json();
        assert_eq!(v["mode"], "exact");
        assert_eq!(v["weights"]["0,1,2"], "1/6");
        assert_eq!(OrderDistribution::from_json(&v).unwrap(), u);
    }

    #[test]
    fn json_round_trip_empirical() {
        let d = OrderDistribution::from_samples(2, vec![vec![0, 1], vec![0, 1], vec![1, 0]])
            .unwrap();
        let v = d.to_json();
        assert_eq!(v["total"], 3);
        assert_eq!(v["weights"]["0,1"], 2);
        assert_eq!(OrderDistribution::from_json(&v).unwrap(), d);
    }

    #[test]
    fn json_rejects_bad_payloads() {
        let v = json!({"n": 2, "mode": "exact", "weights": {"0,1": "1/3"}});
        assert!(OrderDistribution::from_json(&v).is_err());
        let v = json!({"n": 2, "mode": "empirical", "weights": {"0,1": 2}, "total": 3});
        assert!(OrderDistribution::from_json(&v).is_err());
    }
}
