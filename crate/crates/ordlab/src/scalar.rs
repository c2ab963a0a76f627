//! Scalar abstraction for distance and weight arithmetic.
//!
//! Metric-space code runs in two lanes: floating point for sampled geometry
//! and exact rationals for constructions whose outputs must be checked
//! symbolically. `Scalar` is the small num-traits-based surface both lanes
//! share. Comparisons go through `approx_eq` so the float lane gets a
//! tolerance and the exact lane stays exact.

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive, Zero};
use std::fmt::{Debug, Display};

pub trait Scalar: Num + Clone + PartialOrd + Debug + Display {
    /// True when the scalar is exact (comparisons need no tolerance).
    const EXACT: bool;

    fn from_f64_lossy(x: f64) -> Self;
    fn to_f64_lossy(&self) -> f64;

    /// Equality up to the lane's tolerance (exact lanes ignore `tol`).
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            (self.to_f64_lossy() - other.to_f64_lossy()).abs() <= tol
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64_lossy(x: f64) -> Self {
        x
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_f64_lossy(x: f64) -> Self {
        x as f32
    }
    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_f64_lossy(x: f64) -> Self {
        BigRational::from_f64(x).unwrap_or_else(Zero::zero)
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rational_lane_is_exact() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let almost = BigRational::new(BigInt::from(333), BigInt::from(1000));
        assert!(third.approx_eq(&third.clone(), 0.0));
        assert!(!third.approx_eq(&almost, 1e-2));
    }

    #[test]
    fn float_lane_uses_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-12), 1e-9));
        assert!(!1.0f64.approx_eq(&1.1, 1e-9));
    }
}
