//! Normal-distribution numerics and the fixed quadrature oracle for the
//! path-3 order probability. Everything here is deterministic so it can
//! stand as an independent check against the Monte-Carlo samplers.

use crate::error::{Error, Result};
use statrs::function::erf::erfc;
use std::sync::OnceLock;

/// Standard normal density.
pub fn phi(x: f64) -> f64 {
    (-(x * x) / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal CDF through the complementary error function.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

// Acklam's rational approximation to the normal quantile.
const ACKLAM_A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const ACKLAM_B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const ACKLAM_C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const ACKLAM_D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];

const ACKLAM_SPLIT: f64 = 0.02425;

fn quantile_raw(p: f64) -> f64 {
    if p < ACKLAM_SPLIT {
        let q = (-2.0 * p.ln()).sqrt();
        (((((ACKLAM_C[0] * q + ACKLAM_C[1]) * q + ACKLAM_C[2]) * q + ACKLAM_C[3]) * q
            + ACKLAM_C[4])
            * q
            + ACKLAM_C[5])
            / ((((ACKLAM_D[0] * q + ACKLAM_D[1]) * q + ACKLAM_D[2]) * q + ACKLAM_D[3]) * q + 1.0)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((ACKLAM_A[0] * r + ACKLAM_A[1]) * r + ACKLAM_A[2]) * r + ACKLAM_A[3]) * r
            + ACKLAM_A[4])
            * r
            + ACKLAM_A[5])
            * q
            / (((((ACKLAM_B[0] * r + ACKLAM_B[1]) * r + ACKLAM_B[2]) * r + ACKLAM_B[3]) * r
                + ACKLAM_B[4])
                * r
                + 1.0)
    }
}

/// Standard normal quantile: Acklam's approximation plus one Halley step on
/// the erfc-based residual. Antisymmetric by construction.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) || p == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "quantile argument must lie strictly inside (0,1), got {p}"
        )));
    }
    if p > 0.5 {
        return Ok(-normal_quantile(1.0 - p)?);
    }
    let x = quantile_raw(p);
    let e = normal_cdf(x) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    Ok(x - u / (1.0 + x * u / 2.0))
}

/// 200-node Gauss-Legendre rule on [-8, 8] as (node, weight) pairs.
/// Integrands against the standard normal density lose < 1e-14 to the tail
/// truncation.
pub fn gauss_legendre_200() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 200usize;
        let mut rule = Vec::with_capacity(n);
        for i in 0..n {
            // Newton on P_n from the Chebyshev-like initial guess.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            // Affine map [-1,1] -> [-8,8].
            rule.push((8.0 * x, 8.0 * w));
        }
        rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        rule
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates f against the 200-node rule on [-8, 8].
pub fn integrate(f: impl Fn(f64) -> f64) -> f64 {
    gauss_legendre_200().iter().map(|&(x, w)| w * f(x)).sum()
}

/// f(eps) = P[Z1 < (1-eps)Z2 < Z3] for iid standard normals, by quadrature:
/// f(eps) = E[ Phi((1-eps)Z) (1 - Phi((1-eps)Z)) ].
pub fn path3_order_probability(eps: f64) -> Result<f64> {
    if !(-0.5..=2.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!(
            "path-3 probability defined for eps in [-1/2, 2], got {eps}"
        )));
    }
    let c = 1.0 - eps;
    Ok(integrate(|z| {
        let t = normal_cdf(c * z);
        phi(z) * t * (1.0 - t)
    }))
}

/// The effective eps of the degree-D padded Gaussian ordering on the 3-path:
/// the middle vertex's independent part has variance D-2 against the shared
/// edge variables, giving 1 - sqrt(1 - 2/D) after standardizing.
pub fn path3_epsilon(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "path-3 needs degree cap at least 2".into(),
        ));
    }
    Ok(1.0 - (1.0 - 2.0 / d as f64).sqrt())
}
