use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default absolute tolerance for floating-point metric checks.
pub const METRIC_TOL: f64 = 1e-9;

/// Finite metric space: n points and a symmetric distance matrix with zero
/// diagonal. Generic over the scalar lane: `f64` for sampled geometry,
/// `BigRational` for constructions checked exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace<T: Scalar> {
    n: usize,
    dist: Vec<T>,
}

impl<T: Scalar> MetricSpace<T> {
    /// Builds from a full matrix. Shape invariants (square, symmetric, zero
    /// diagonal, non-negative) are enforced here; the triangle inequality is
    /// `check_metric`'s job.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidStructure("distance matrix is not square".into()));
        }
        for i in 0..n {
            if !rows[i][i].is_zero() {
                return Err(Error::InvalidStructure(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidStructure(format!("asymmetry at ({i},{j})")));
                }
                if rows[i][j] < T::zero() {
                    return Err(Error::InvalidStructure(format!("negative distance at ({i},{j})")));
                }
            }
        }
        let dist = rows.into_iter().flatten().collect();
        Ok(Self { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> &T {
        &self.dist[i * self.n + j]
    }

    /// True iff positive off-diagonal and the triangle inequality holds
    /// (within `METRIC_TOL` on the float lane, exactly on the rational lane).
    pub fn check_metric(&self) -> bool {
        let slack = T::from_f64_lossy(if T::EXACT { 0.0 } else { METRIC_TOL });
        for i in 0..self.n {
            for j in 0..i {
                if self.dist(i, j).is_zero() {
                    return false;
                }
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    continue;
                }
                for k in 0..self.n {
                    if k == i || k == j {
                        continue;
                    }
                    let via = self.dist(i, k).clone() + self.dist(k, j).clone() + slack.clone();
                    if *self.dist(i, j) > via {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn min_distance(&self) -> Option<&T> {
        (0..self.n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| self.dist(i, j))
            .min_by(|a, b| a.partial_cmp(b).expect("comparable distances"))
    }

    pub fn max_distance(&self) -> Option<&T> {
        (0..self.n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| self.dist(i, j))
            .max_by(|a, b| a.partial_cmp(b).expect("comparable distances"))
    }

    /// Restriction to S, relabeled ascending; new-to-old map returned.
    pub fn induced(&self, s: &[usize]) -> Result<(MetricSpace<T>, Vec<usize>)> {
        let mut sorted: Vec<usize> = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() || sorted.last().is_some_and(|&v| v >= self.n) {
            return Err(Error::InvalidArgument("invalid subset".into()));
        }
        let rows = sorted
            .iter()
            .map(|&i| sorted.iter().map(|&j| self.dist(i, j).clone()).collect())
            .collect();
        Ok((MetricSpace::new(rows)?, sorted))
    }

    /// Distance-preserving injections X -> Y (up to the lane tolerance).
    /// Results in lexicographic order.
    pub fn isometric_embeddings(x: &MetricSpace<T>, y: &MetricSpace<T>) -> Vec<Vec<usize>> {
        let tol = METRIC_TOL;
        super::embeddings::backtrack_injections(x.n, y.n, &|map, u, cand| {
            map.iter()
                .enumerate()
                .all(|(v, &img)| x.dist(u, v).approx_eq(y.dist(cand, img), tol))
        })
    }

    /// Metric automorphisms.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        Self::isometric_embeddings(self, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_rational::BigRational;

    fn rat(p: i64, q: i64) -> Rational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn equilateral_is_metric() {
        let m = MetricSpace::new(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(m.check_metric());
    }

    #[test]
    fn triangle_violation_detected() {
        let m = MetricSpace::new(vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(!m.check_metric());
    }

    #[test]
    fn zero_off_diagonal_fails() {
        let m = MetricSpace::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(!m.check_metric());
    }

    #[test]
    fn rational_lane_is_exact() {
        let m = MetricSpace::new(vec![
            vec![rat(0, 1), rat(1, 1), rat(2, 1)],
            vec![rat(1, 1), rat(0, 1), rat(1, 1)],
            vec![rat(2, 1), rat(1, 1), rat(0, 1)],
        ])
        .unwrap();
        // Degenerate triangle: equality is allowed, no slack is applied.
        assert!(m.check_metric());
    }

    #[test]
    fn isometries_of_a_triangle() {
        let m = MetricSpace::new(vec![
            vec![0.0, 1.0, 1.2],
            vec![1.0, 0.0, 1.0],
            vec![1.2, 1.0, 0.0],
        ])
        .unwrap();
        // Swap of the two far endpoints is the only nontrivial isometry.
        assert_eq!(m.automorphisms(), vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn shape_validation() {
        assert!(MetricSpace::new(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(MetricSpace::new(vec![vec![1.0]]).is_err());
        assert!(MetricSpace::new(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]).is_err());
    }
}
