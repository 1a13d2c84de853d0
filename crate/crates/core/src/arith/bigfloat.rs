//! Fixed-point dyadic arithmetic on top of `BigInt`, used for the numeric
//! real embeddings of K. Values are `m / 2^prec` at a common precision.
//!
//! These numbers only produce *candidates* (for square roots and coordinate
//! reconstruction); every candidate is verified by exact arithmetic before it
//! is believed, so truncation here never affects correctness.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::Rat;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Dyadic {
    pub m: BigInt,
    pub prec: u32,
}

impl Dyadic {
    pub fn zero(prec: u32) -> Self {
        Dyadic {
            m: BigInt::zero(),
            prec,
        }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Dyadic {
            m: BigInt::from(n) << prec,
            prec,
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let num = r.numer() << prec;
        Dyadic {
            m: num.div_floor(r.denom()),
            prec,
        }
    }

    /// The exact rational value `m / 2^prec`.
    pub fn to_rat(&self) -> Rat {
        BigRational::new(self.m.clone(), BigInt::from(1) << self.prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prec, rhs.prec);
        Dyadic {
            m: &self.m + &rhs.m,
            prec: self.prec,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prec, rhs.prec);
        Dyadic {
            m: &self.m - &rhs.m,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            m: -&self.m,
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prec, rhs.prec);
        Dyadic {
            m: (&self.m * &rhs.m) >> self.prec,
            prec: self.prec,
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.prec, rhs.prec);
        assert!(!rhs.m.is_zero(), "dyadic division by zero");
        Dyadic {
            m: (&self.m << self.prec).div_floor(&rhs.m),
            prec: self.prec,
        }
    }

    /// Truncated square root; requires a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "dyadic sqrt of negative value");
        Dyadic {
            m: (&self.m << self.prec).sqrt(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            m: self.m.abs(),
            prec: self.prec,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    /// |self| < 2^-bits
    pub fn is_smaller_than_2pow(&self, bits: u32) -> bool {
        debug_assert!(bits <= self.prec);
        self.m.abs() < (BigInt::from(1) << (self.prec - bits))
    }

    /// Best rational approximation with denominator at most `max_den`,
    /// by continued fractions of `m / 2^prec`.
    pub fn to_bounded_rational(&self, max_den: &BigInt) -> Rat {
        let mut p_prev = BigInt::from(1);
        let mut q_prev = BigInt::zero();
        let mut p = self.m.div_floor(&(BigInt::from(1) << self.prec));
        let mut q = BigInt::from(1);
        let mut num = &self.m - (&p << self.prec);
        let mut den = BigInt::from(1) << self.prec;
        // num/den in [0, 1) is the fractional part.
        while !num.is_zero() {
            let a = den.div_floor(&num);
            let r = &den - &a * &num;
            den = std::mem::replace(&mut num, r);
            let p_new = &a * &p + &p_prev;
            let q_new = &a * &q + &q_prev;
            if q_new > *max_den {
                break;
            }
            p_prev = std::mem::replace(&mut p, p_new);
            q_prev = std::mem::replace(&mut q, q_new);
        }
        let _ = (p_prev, q_prev);
        BigRational::new(p, q)
    }
}

/// Solve the square linear system `A x = b` by Gaussian elimination in dyadic
/// arithmetic with partial pivoting. Panics on a (numerically) singular
/// system; callers only pass well-conditioned embedding matrices.
pub fn solve_dyadic(mut a: Vec<Vec<Dyadic>>, mut b: Vec<Dyadic>) -> Vec<Dyadic> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col {
                let factor = a[r][col].div(&a[col][col]);
                for j in col..n {
                    let t = a[col][j].mul(&factor);
                    a[r][j] = a[r][j].sub(&t);
                }
                let t = b[col].mul(&factor);
                b[r] = b[r].sub(&t);
            }
        }
    }
    (0..n).map(|i| b[i].div(&a[i][i])).collect()
}
