//! Exact arithmetic foundations: rationals, the sextic field K, quadratic
//! extensions, finite fields and square-root extraction.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub mod bigfloat;
pub mod factor;
pub mod finite;
pub mod intfactor;
pub mod nf;
pub mod quadext;

pub use factor::factor_mod_p;
pub use finite::{FiniteField, Fp, FqElem};
pub use nf::{kfield, NFElement};
pub use quadext::QuadExt;

/// Arbitrary-precision rational. `num_rational` keeps the representation
/// reduced with a positive denominator, which is exactly the invariant the
/// rest of the crate relies on.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not {p}-integral (denominator divisible by {p})")]
    NotPIntegral { p: u64 },
    #[error("square-root reconstruction inconclusive at maximum precision ({bits} bits)")]
    PrecisionExhausted { bits: u32 },
    #[error("radicand is a square in the base field; use the collapsed representation")]
    SquareRadicand,
    #[error("mismatched fields or moduli in arithmetic")]
    FieldMismatch,
    #[error("square root not supported over this field")]
    SqrtUnsupported,
    #[error("{0}")]
    Other(String),
}

/// An exact field the toolkit can compute in.
///
/// Constants are instance methods (`zero`, `one`, `from_i64`) so that fields
/// whose elements carry a context, like `F_{p^f}`, fit the same trait as Q
/// and K.
pub trait Field: Clone + PartialEq + Eq + Hash + Ord + Debug + Display {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn from_i64(&self, n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;
    fn is_zero(&self) -> bool;

    fn div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == self.one()
    }

    /// Exact square root, `Ok(None)` when provably not a square.
    fn sqrt(&self) -> Result<Option<Self>, ArithError> {
        Err(ArithError::SqrtUnsupported)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

impl Field for Rat {
    fn zero(&self) -> Self {
        rat_int(0)
    }
    fn one(&self) -> Self {
        rat_int(1)
    }
    fn from_i64(&self, n: i64) -> Self {
        rat_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if Zero::is_zero(self) {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.recip())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sqrt(&self) -> Result<Option<Self>, ArithError> {
        if self.is_negative() {
            return Ok(None);
        }
        if Zero::is_zero(self) {
            return Ok(Some(rat_int(0)));
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &(&ns * &ns) == self.numer() && &(&ds * &ds) == self.denom() {
            Ok(Some(Rat::new(ns, ds)))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sqrt() {
        assert_eq!(rat_int(4).sqrt().unwrap(), Some(rat_int(2)));
        assert_eq!(rat(9, 16).sqrt().unwrap(), Some(rat(3, 4)));
        assert_eq!(rat_int(2).sqrt().unwrap(), None);
        assert_eq!(rat_int(-4).sqrt().unwrap(), None);
        assert_eq!(rat_int(0).sqrt().unwrap(), Some(rat_int(0)));
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(rat(3, 7).inv().unwrap(), rat(7, 3));
        assert_eq!(rat_int(0).inv(), Err(ArithError::DivisionByZero));
    }
}
