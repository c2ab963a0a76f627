//! Random-projection orderings for negative-type metrics: the CNSD test,
//! the bounded-degree two-distance metric, classical-scaling embedding, and
//! the projection sampler itself.

use super::gauss::sample_until_untied;
use crate::error::{Error, Result};
use crate::orders::Perm;
use crate::structures::Hypergraph;
use crate::Metric;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Distance matrix of a float metric as explicit rows.
pub fn metric_rows(m: &Metric) -> Vec<Vec<f64>> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| *m.dist(i, j)).collect())
        .collect()
}

/// Conditionally negative semidefinite test: after projecting onto the
/// complement of the constant vectors, the matrix must have no eigenvalue
/// above 1e-9.
pub fn is_cnsd(rows: &[Vec<f64>]) -> Result<bool> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if rows[i][j] != rows[j][i] {
                return Err(Error::InvalidArgument("matrix is not symmetric".into()));
            }
        }
    }
    if n == 0 {
        return Ok(true);
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let p = DMatrix::<f64>::identity(n, n) - DMatrix::repeat(n, n, 1.0 / n as f64);
    let b = &p * m * &p;
    let eig = SymmetricEigen::new(b);
    Ok(eig.eigenvalues.iter().all(|&l| l <= 1e-9))
}

/// The two-distance metric with a = D/(D+1): distance 1 on edges and a on
/// distinct non-adjacent pairs. CNSD whenever the max degree is at most D.
pub fn bounded_degree_metric(g: &Hypergraph, d_cap: usize) -> Result<Metric> {
    if !g.is_graph() {
        return Err(Error::InvalidArgument(
            "bounded-degree metric is defined on graphs".into(),
        ));
    }
    if g.max_degree() > d_cap {
        return Err(Error::InvalidArgument(format!(
            "max degree {} exceeds the degree cap {d_cap}",
            g.max_degree()
        )));
    }
    let a = d_cap as f64 / (d_cap as f64 + 1.0);
    let rows = (0..g.n())
        .map(|i| {
            (0..g.n())
                .map(|j| {
                    if i == j {
                        0.0
                    } else if g.adjacent(i, j) {
                        1.0
                    } else {
                        a
                    }
                })
                .collect()
        })
        .collect();
    Metric::new(rows)
}

/// Classical double-centering embedding of the transformed metric d^alpha:
/// returns n points in R^{n-1} whose pairwise distances reproduce d^alpha
/// within 1e-7. Fails with the most negative Gram eigenvalue when the
/// transformed metric is not of negative type.
pub fn embed_negative_type(m: &Metric, alpha: f64) -> Result<Vec<Vec<f64>>> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "exponent must lie in (0, 1], got {alpha}"
        )));
    }
    let n = m.n();
    if n == 0 {
        return Ok(vec![]);
    }
    let s = DMatrix::from_fn(n, n, |i, j| m.dist(i, j).powf(2.0 * alpha));
    let p = DMatrix::<f64>::identity(n, n) - DMatrix::repeat(n, n, 1.0 / n as f64);
    let b = (&p * s * &p) * (-0.5);
    let eig = SymmetricEigen::new(b);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if lambda_min < -1e-9 {
        return Err(Error::NotNegativeType { lambda_min });
    }
    let dims = n - 1;
    let mut points = vec![vec![0.0f64; dims]; n];
    for (k, &col) in order.iter().take(dims).enumerate() {
        let l = eig.eigenvalues[col].max(0.0);
        let scale = l.sqrt();
        for (i, point) in points.iter_mut().enumerate() {
            point[k] = eig.eigenvectors[(i, col)] * scale;
        }
    }
    for i in 0..n {
        for j in 0..i {
            let got = euclid(&points[i], &points[j]);
            let want = m.dist(i, j).powf(alpha);
            if (got - want).abs() > 1e-7 {
                return Err(Error::VerificationFailed(format!(
                    "embedded distance ({i},{j}) = {got}, expected {want}"
                )));
            }
        }
    }
    Ok(points)
}

fn euclid(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// One draw of the projection ordering: a standard normal direction vector,
/// points ranked by inner product with it. Zero directions and exact score
/// ties are resampled.
pub fn sample_projection_ordering<R: Rng>(points: &[Vec<f64>], rng: &mut R) -> Result<Perm> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidArgument("points have mixed dimensions".into()));
    }
    for i in 0..points.len() {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(Error::InvalidArgument(format!(
                    "points {j} and {i} coincide"
                )));
            }
        }
    }
    if points.len() == 1 {
        return Ok(vec![0]);
    }
    sample_until_untied(points.len(), || {
        let dir: Vec<f64> = loop {
            let d: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
            if d.iter().any(|&x| x != 0.0) {
                break d;
            }
        };
        points
            .iter()
            .map(|p| p.iter().zip(&dir).map(|(a, b)| a * b).sum())
            .collect()
    })
}
