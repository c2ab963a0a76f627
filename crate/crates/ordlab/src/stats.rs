//! Shared statistical machinery for the Monte-Carlo harness: the two-sample
//! TV acceptance threshold, Wilson confidence intervals, chi-square and
//! Kolmogorov-Smirnov p-values.

use statrs::function::gamma::gamma_ur;

/// z for a 99% two-sided normal interval.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Acceptance threshold for a two-sample empirical TV comparison over the n!
/// orders of an n-point universe: 4*sqrt(n! * ln(2/delta) / (2N)) at
/// delta = 0.01. Empirical TV between equal laws stays well below this.
pub fn tv_threshold(n_universe: usize, samples: usize) -> f64 {
    let delta: f64 = 0.01;
    4.0 * (factorial_f64(n_universe) * (2.0 / delta).ln() / (2.0 * samples as f64)).sqrt()
}

/// Wilson score interval at 99% coverage.
pub fn wilson_interval(hits: u64, samples: u64) -> (f64, f64) {
    assert!(samples > 0, "wilson interval needs samples");
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = Z_99 * Z_99;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (Z_99 / denom) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // At the boundary rates the interval endpoint is exactly 0 or 1; rounding
    // in the formula above would land a hair inside.
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == samples { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Upper-tail p-value of a chi-square statistic.
pub fn chi_square_pvalue(stat: f64, dof: usize) -> f64 {
    if dof == 0 || stat <= 0.0 {
        return 1.0;
    }
    gamma_ur(dof as f64 / 2.0, stat / 2.0)
}

/// Pearson chi-square test of observed counts against given probabilities.
/// Returns (statistic, p-value); dof = cells - 1.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * total as f64;
        if e > 0.0 {
            stat += (o as f64 - e) * (o as f64 - e) / e;
        }
    }
    (stat, chi_square_pvalue(stat, observed.len() - 1))
}

/// Kolmogorov tail Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64) * (k as f64) * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// One-sample Kolmogorov-Smirnov test against the continuous CDF `cdf`.
/// Returns (D statistic, approximate p-value) using the Stephens small-sample
/// correction.
pub fn ks_test(samples: &[f64], cdf: impl Fn(f64) -> f64) -> (f64, f64) {
    assert!(!samples.is_empty());
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let hi = (i as f64 + 1.0) / n - f;
        let lo = f - i as f64 / n;
        d = d.max(hi).max(lo);
    }
    let lambda = d * (n.sqrt() + 0.12 + 0.11 / n.sqrt());
    (d, kolmogorov_q(lambda))
}
