//! Coefficient fields used by the exact polynomial layer.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gauss::GaussianRational;

/// Failure of an exact field operation.
#[derive(Debug, Clone, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    /// An element of an algebraic extension `K[t]/(m)` turned out to be a
    /// zero divisor: `m` is reducible and `factor` is a proper monic factor.
    #[error("zero divisor in algebraic extension #{ext_id}")]
    ZeroDivisor {
        ext_id: u64,
        factor: Vec<crate::algext::AlgElem>,
    },
}

/// A commutative field with exact arithmetic.
///
/// Ring operations go through the by-value `std::ops` traits; `inv` is the
/// only fallible operation.
pub trait Field:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Structural zero test. For extension elements a nonzero
    /// representative can still be a zero divisor; see
    /// [`crate::algext::AlgElem::zero_test`].
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Result<Self, ArithError>;
    fn from_gauss(g: &GaussianRational) -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.clone() * other.inv()?)
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn powi(&self, e: i64) -> Result<Self, ArithError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }
}
