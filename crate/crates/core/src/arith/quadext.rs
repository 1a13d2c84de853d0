//! Quadratic extensions `F(sqrt(s))` of a supported base field, as pairs
//! `u + v*sqrt(s)` with a shared radicand.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::{intfactor, ArithError, Field, Rat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct QuadExt<F: Field> {
    /// The radicand; equal on both operands of every arithmetic op.
    pub s: F,
    pub u: F,
    pub v: F,
}

impl<F: Field> QuadExt<F> {
    /// Constructor that refuses square radicands: the element would collapse
    /// into the base field, and the caller should represent it there.
    pub fn new(u: F, v: F, s: F) -> Result<Self, ArithError> {
        if s.is_zero() {
            return Err(ArithError::SquareRadicand);
        }
        match s.sqrt() {
            Ok(Some(_)) => Err(ArithError::SquareRadicand),
            Ok(None) => Ok(QuadExt { s, u, v }),
            // Inconclusive squareness is accepted; arithmetic stays valid
            // either way, only canonicity of the representation is at stake.
            Err(ArithError::SqrtUnsupported) | Err(ArithError::PrecisionExhausted { .. }) => {
                Ok(QuadExt { s, u, v })
            }
            Err(e) => Err(e),
        }
    }

    /// Embed a base-field element into F(sqrt(s)).
    pub fn from_base(u: F, s: F) -> Self {
        let v = u.zero();
        QuadExt { s, u, v }
    }

    /// sqrt(s) itself.
    pub fn root(s: F) -> Self {
        QuadExt {
            u: s.zero(),
            v: s.one(),
            s,
        }
    }

    /// Galois conjugation `u + v*sqrt(s) -> u - v*sqrt(s)`.
    pub fn conj(&self) -> Self {
        QuadExt {
            s: self.s.clone(),
            u: self.u.clone(),
            v: self.v.neg(),
        }
    }

    /// Field norm `u^2 - v^2 s` down to the base field.
    pub fn norm(&self) -> F {
        self.u
            .mul(&self.u)
            .sub(&self.v.mul(&self.v).mul(&self.s))
    }

    pub fn in_base(&self) -> bool {
        self.v.is_zero()
    }
}

impl QuadExt<Rat> {
    /// Build `u + v*sqrt(s)` over Q, normalizing the radicand to its
    /// squarefree integer representative D (so `sqrt(s) = t*sqrt(D)`).
    pub fn over_q(u: Rat, v: Rat, s: Rat) -> Result<Self, ArithError> {
        let (d, t) = intfactor::rational_squarefree_part(&s);
        let d_rat = Rat::from_integer(d);
        if d_rat.is_one() || d_rat.is_zero() {
            return Err(ArithError::SquareRadicand);
        }
        QuadExt::new(u, v.mul(&t), d_rat)
    }

    pub fn discriminant_radicand(&self) -> BigInt {
        self.s.numer().clone()
    }
}

impl<F: Field> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*sqrt({})", self.u, self.v, self.s)
    }
}

impl<F: Field> Field for QuadExt<F> {
    fn zero(&self) -> Self {
        QuadExt {
            s: self.s.clone(),
            u: self.u.zero(),
            v: self.u.zero(),
        }
    }
    fn one(&self) -> Self {
        QuadExt {
            s: self.s.clone(),
            u: self.u.one(),
            v: self.u.zero(),
        }
    }
    fn from_i64(&self, n: i64) -> Self {
        QuadExt {
            s: self.s.clone(),
            u: self.u.from_i64(n),
            v: self.u.zero(),
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.s, rhs.s);
        QuadExt {
            s: self.s.clone(),
            u: self.u.add(&rhs.u),
            v: self.v.add(&rhs.v),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.s, rhs.s);
        QuadExt {
            s: self.s.clone(),
            u: self.u.sub(&rhs.u),
            v: self.v.sub(&rhs.v),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.s, rhs.s);
        QuadExt {
            s: self.s.clone(),
            u: self
                .u
                .mul(&rhs.u)
                .add(&self.v.mul(&rhs.v).mul(&self.s)),
            v: self.u.mul(&rhs.v).add(&self.v.mul(&rhs.u)),
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            s: self.s.clone(),
            u: self.u.neg(),
            v: self.v.neg(),
        }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(QuadExt {
            s: self.s.clone(),
            u: self.u.mul(&ninv),
            v: self.v.neg().mul(&ninv),
        })
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
}
