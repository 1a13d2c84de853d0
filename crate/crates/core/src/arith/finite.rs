//! Prime fields F_p and their extensions F_{p^f} as polynomial quotients.

use std::fmt;
use std::sync::Arc;

use crate::arith::{ArithError, Field};
use crate::poly::UniPoly;

/// An element of a small prime field, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Fp {
    pub p: u64,
    pub v: u64,
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Self {
        Fp {
            p,
            v: v.rem_euclid(p as i64) as u64,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp { p: self.p, v: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for Fp {
    fn zero(&self) -> Self {
        Fp { p: self.p, v: 0 }
    }
    fn one(&self) -> Self {
        Fp { p: self.p, v: 1 }
    }
    fn from_i64(&self, n: i64) -> Self {
        Fp::new(self.p, n)
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            p: self.p,
            v: (self.v + rhs.v) % self.p,
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            p: self.p,
            v: (self.v + self.p - rhs.v) % self.p,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Fp {
            p: self.p,
            v: ((self.v as u128 * rhs.v as u128) % self.p as u128) as u64,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            p: self.p,
            v: (self.p - self.v) % self.p,
        }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.v == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn sqrt(&self) -> Result<Option<Self>, ArithError> {
        // p is always tiny here; brute force is exact and simple.
        for t in 0..self.p {
            let c = Fp { p: self.p, v: t };
            if c.mul(&c) == *self {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

/// Description of F_{p^f} as F_p[t]/(modulus); the modulus is monic and
/// irreducible (verified at construction by distinct-degree factorization).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiniteField {
    pub p: u64,
    pub modulus: UniPoly<Fp>,
}

impl FiniteField {
    pub fn new(p: u64, modulus: UniPoly<Fp>) -> Result<Arc<Self>, ArithError> {
        if !modulus.is_monic() {
            return Err(ArithError::Other("modulus must be monic".into()));
        }
        let f = modulus.deg().ok_or(ArithError::DivisionByZero)?;
        if f == 0 {
            return Err(ArithError::Other("modulus must have degree >= 1".into()));
        }
        if f > 1 && !is_irreducible(&modulus, p)? {
            return Err(ArithError::Other(format!(
                "modulus {modulus} is reducible over F_{p}"
            )));
        }
        Ok(Arc::new(FiniteField { p, modulus }))
    }

    /// The prime field F_p, as the degree-1 quotient F_p[t]/(t).
    pub fn prime(p: u64) -> Arc<Self> {
        let t = UniPoly::from_coeffs(vec![Fp::new(p, 0), Fp::new(p, 1)]);
        Arc::new(FiniteField { p, modulus: t })
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().unwrap()
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem {
            ctx: self.clone(),
            poly: UniPoly::zero(),
        }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FqElem {
        FqElem {
            ctx: self.clone(),
            poly: UniPoly::constant(Fp::new(self.p, n)),
        }
    }

    /// The class of t, a generator of the extension.
    pub fn gen(self: &Arc<Self>) -> FqElem {
        let t = UniPoly::from_coeffs(vec![Fp::new(self.p, 0), Fp::new(self.p, 1)]);
        FqElem {
            ctx: self.clone(),
            poly: t.rem(&self.modulus).expect("nonzero modulus"),
        }
    }

    pub fn from_poly(self: &Arc<Self>, poly: UniPoly<Fp>) -> FqElem {
        FqElem {
            ctx: self.clone(),
            poly: poly.rem(&self.modulus).expect("nonzero modulus"),
        }
    }

    /// All q = p^f elements.
    pub fn elements(self: &Arc<Self>) -> Vec<FqElem> {
        let f = self.degree();
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut digits = vec![0u64; f];
        loop {
            let coeffs: Vec<Fp> = digits.iter().map(|&d| Fp { p: self.p, v: d }).collect();
            out.push(FqElem {
                ctx: self.clone(),
                poly: UniPoly::from_coeffs(coeffs),
            });
            let mut i = 0;
            loop {
                if i == f {
                    return out;
                }
                digits[i] += 1;
                if digits[i] < self.p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Irreducibility over F_p via the distinct-degree criterion:
/// x^(p^f) = x mod m, and gcd(x^(p^d) - x, m) = 1 for proper divisors d.
pub fn is_irreducible(m: &UniPoly<Fp>, p: u64) -> Result<bool, ArithError> {
    use num_bigint::BigUint;
    let f = match m.deg() {
        Some(d) if d >= 1 => d,
        _ => return Ok(false),
    };
    let sample = Fp::new(p, 0);
    let x = UniPoly::x_for(&sample);
    let q_f = BigUint::from(p).pow(f as u32);
    let frob_f = x.powmod(&q_f, m)?;
    if frob_f != x.rem(m)? {
        return Ok(false);
    }
    for d in 1..f {
        if f % d != 0 {
            continue;
        }
        let q_d = BigUint::from(p).pow(d as u32);
        let frob_d = x.powmod(&q_d, m)?;
        let g = frob_d.sub(&x).gcd(m)?;
        if g.deg() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element of F_{p^f}, reduced modulo the context's modulus.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqElem {
    pub ctx: Arc<FiniteField>,
    pub poly: UniPoly<Fp>,
}

impl FqElem {
    pub fn pow(&self, e: u64) -> Self {
        use num_bigint::BigUint;
        FqElem {
            ctx: self.ctx.clone(),
            poly: self
                .poly
                .powmod(&BigUint::from(e), &self.ctx.modulus)
                .expect("nonzero modulus"),
        }
    }

    pub fn frobenius(&self) -> Self {
        self.pow(self.ctx.p)
    }

    /// Euler criterion; exact for any odd q.
    pub fn is_square(&self) -> bool {
        if self.poly.is_zero() {
            return true;
        }
        let q = self.ctx.order();
        if q % 2 == 0 {
            return true;
        }
        let e = self.pow((q - 1) / 2);
        e == FqElem {
            ctx: self.ctx.clone(),
            poly: UniPoly::constant(Fp::new(self.ctx.p, 1)),
        }
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.v)?,
                1 => write!(f, "{}*t", c.v)?,
                _ => write!(f, "{}*t^{}", c.v, i)?,
            }
        }
        Ok(())
    }
}

impl Field for FqElem {
    fn zero(&self) -> Self {
        self.ctx.zero()
    }
    fn one(&self) -> Self {
        self.ctx.from_i64(1)
    }
    fn from_i64(&self, n: i64) -> Self {
        self.ctx.from_i64(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        FqElem {
            ctx: self.ctx.clone(),
            poly: self.poly.add(&rhs.poly),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        FqElem {
            ctx: self.ctx.clone(),
            poly: self.poly.sub(&rhs.poly),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.ctx, rhs.ctx);
        FqElem {
            ctx: self.ctx.clone(),
            poly: self
                .poly
                .mul(&rhs.poly)
                .rem(&self.ctx.modulus)
                .expect("nonzero modulus"),
        }
    }
    fn neg(&self) -> Self {
        FqElem {
            ctx: self.ctx.clone(),
            poly: self.poly.neg(),
        }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.poly.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (g, s, _) = self.poly.xgcd(&self.ctx.modulus)?;
        if g.deg() != Some(0) {
            return Err(ArithError::Other("modulus not irreducible".into()));
        }
        Ok(FqElem {
            ctx: self.ctx.clone(),
            poly: s.rem(&self.ctx.modulus)?,
        })
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn sqrt(&self) -> Result<Option<Self>, ArithError> {
        // Fields here are tiny (q <= a few thousand); enumerate.
        if self.poly.is_zero() {
            return Ok(Some(self.clone()));
        }
        for t in self.ctx.elements() {
            if t.mul(&t) == *self {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> Arc<FiniteField> {
        // t^2 + 1 is irreducible mod 3
        let m = UniPoly::from_coeffs(vec![Fp::new(3, 1), Fp::new(3, 0), Fp::new(3, 1)]);
        FiniteField::new(3, m).unwrap()
    }

    #[test]
    fn f9_has_nine_elements() {
        let k = f9();
        let els = k.elements();
        assert_eq!(els.len(), 9);
        let set: std::collections::HashSet<_> = els.into_iter().collect();
        assert_eq!(set.len(), 9);
    }

    #[test]
    fn f9_inverses() {
        let k = f9();
        for e in k.elements() {
            if e.is_zero() {
                assert!(e.inv().is_err());
            } else {
                assert!(e.mul(&e.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 - 1 = (t-1)(t+1) mod 5
        let m = UniPoly::from_coeffs(vec![Fp::new(5, -1), Fp::new(5, 0), Fp::new(5, 1)]);
        assert!(FiniteField::new(5, m).is_err());
    }

    #[test]
    fn euler_criterion_matches_brute_force() {
        let k = f9();
        for e in k.elements() {
            let brute = k.elements().iter().any(|t| t.mul(t) == e);
            assert_eq!(e.is_square(), brute, "mismatch at {e}");
        }
    }

    #[test]
    fn fp_sqrt() {
        let two = Fp::new(7, 2);
        let s = two.sqrt().unwrap().unwrap();
        assert_eq!(s.mul(&s), two);
        assert_eq!(Fp::new(7, 3).sqrt().unwrap(), None);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let k = f9();
        for n in 0..3 {
            let e = k.from_i64(n);
            assert_eq!(e.frobenius(), e);
        }
    }
}
