//! Dense univariate polynomial algebra over any supported exact field,
//! Moebius-transform machinery, discriminants, and the linear solves behind
//! the even-model derivations.

use std::fmt;

use thiserror::Error;

use crate::arith::{ArithError, Field};

pub mod evenmodel;
pub mod moebius;

pub use evenmodel::{solve_d_pair, solve_even_model, EvenModelError};
pub use moebius::MoebiusMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected degree {expected}, got {got}")]
    Degree { expected: usize, got: i64 },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Dense univariate polynomial, constant term first. The zero polynomial is
/// the empty coefficient list; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn one_for(sample: &F) -> Self {
        UniPoly::constant(sample.one())
    }

    /// `x` as a polynomial, in the field of `sample`.
    pub fn x_for(sample: &F) -> Self {
        UniPoly {
            coeffs: vec![sample.zero(), sample.one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Convenience for integer coefficient lists, constant term first.
    pub fn from_i64(sample: &F, coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| sample.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree with the convention deg 0 = -1, handy for comparisons.
    pub fn deg_i(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    /// Coefficient of x^i, zero-filled beyond the degree.
    pub fn coeff_or_zero(&self, i: usize, sample: &F) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(|| sample.zero())
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        matches!(self.lc(), Some(c) if c.is_one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, s: &F) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let zero = self.coeffs[0].zero();
        let mut out = vec![zero; k];
        out.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: out }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            let sample = self
                .coeffs
                .first()
                .expect("pow of zero polynomial to exponent 0");
            return UniPoly::one_for(sample);
        }
        let mut base = self.clone();
        let mut acc: Option<UniPoly<F>> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    pub fn evaluate(&self, x: &F) -> F {
        let mut acc = x.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluate after mapping every coefficient into another field.
    pub fn evaluate_mapped<G: Field>(&self, x: &G, map: impl Fn(&F) -> G) -> G {
        let mut acc = x.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&map(c));
        }
        acc
    }

    pub fn map_coeffs<G: Field>(&self, map: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| map(c)).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_i64(i as i64)))
            .collect();
        UniPoly::from_coeffs(out)
    }

    pub fn monic(&self) -> Result<Self, ArithError> {
        match self.lc() {
            None => Ok(UniPoly::zero()),
            Some(l) if l.is_one() => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.inv()?)),
        }
    }

    /// Euclidean division: `self = q * rhs + r` with deg r < deg rhs.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self), ArithError> {
        let dlc = rhs.lc().ok_or(ArithError::DivisionByZero)?;
        let dlc_inv = dlc.inv()?;
        let d = rhs.coeffs.len() - 1;
        if self.coeffs.len() < rhs.coeffs.len() {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let zero = dlc.zero();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![zero; self.coeffs.len() - d];
        for i in (d..self.coeffs.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].mul(&dlc_inv);
            for (j, c) in rhs.coeffs.iter().enumerate() {
                rem[i - d + j] = rem[i - d + j].sub(&q.mul(c));
            }
            quo[i - d] = q;
        }
        Ok((UniPoly::from_coeffs(quo), UniPoly::from_coeffs(rem)))
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self.divrem(rhs)?.1)
    }

    /// Exact division; error if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.divrem(rhs)?;
        if !r.is_zero() {
            return Err(ArithError::Other(format!(
                "inexact polynomial division, remainder {r}"
            )));
        }
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Result<Self, ArithError> {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns monic `g` and `(s, t)` with `s*self + t*rhs = g`.
    pub fn xgcd(&self, rhs: &Self) -> Result<(Self, Self, Self), ArithError> {
        let mut r0 = self.clone();
        let mut r1 = rhs.clone();
        // Bezout rows as (s, t) pairs.
        let sample = match self.coeffs.first().or_else(|| rhs.coeffs.first()) {
            Some(c) => c.clone(),
            None => return Err(ArithError::DivisionByZero),
        };
        let mut s0 = UniPoly::one_for(&sample);
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one_for(&sample);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let ns = s0.sub(&q.mul(&s1));
            let nt = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let lci = r0.lc().unwrap().inv()?;
        Ok((
            r0.scale(&lci),
            s0.scale(&lci),
            t0.scale(&lci),
        ))
    }

    /// Resultant of `self` and `rhs` via the subresultant-free Euclidean
    /// scheme over a field.
    pub fn resultant(&self, rhs: &Self) -> Result<F, ArithError> {
        let sample = self
            .coeffs
            .first()
            .or_else(|| rhs.coeffs.first())
            .ok_or(ArithError::DivisionByZero)?;
        let mut a = self.clone();
        let mut b = rhs.clone();
        let mut res = sample.one();
        loop {
            if b.is_zero() {
                return Ok(sample.zero());
            }
            if b.deg() == Some(0) {
                // res * lc(b)^deg(a)
                let l = b.coeffs[0].clone();
                let mut p = sample.one();
                for _ in 0..a.coeffs.len().saturating_sub(1) {
                    p = p.mul(&l);
                }
                return Ok(res.mul(&p));
            }
            let r = a.rem(&b)?;
            let da = a.deg_i();
            let db = b.deg_i();
            let dr = r.deg_i();
            // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
            let lb = b.lc().unwrap().clone();
            let mut p = sample.one();
            for _ in 0..(da - dr) {
                p = p.mul(&lb);
            }
            res = res.mul(&p);
            if (da * db) % 2 == 1 {
                res = res.neg();
            }
            a = b;
            b = r;
        }
    }

    /// Discriminant: `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<F, ArithError> {
        let n = self.deg_i();
        if n < 2 {
            return Err(ArithError::Other(
                "discriminant requires degree >= 2".into(),
            ));
        }
        let res = self.resultant(&self.derivative())?;
        let lci = self.lc().unwrap().inv()?;
        let mut d = res.mul(&lci);
        if (n * (n - 1) / 2) % 2 == 1 {
            d = d.neg();
        }
        Ok(d)
    }

    /// Modular exponentiation: `self^e mod m`.
    pub fn powmod(&self, e: &num_bigint::BigUint, m: &Self) -> Result<Self, ArithError> {
        use num_traits::Zero as _;
        let sample = m.coeffs.first().ok_or(ArithError::DivisionByZero)?;
        let mut result = UniPoly::one_for(sample);
        if e.is_zero() {
            return Ok(result);
        }
        let mut base = self.rem(m)?;
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = result.mul(&base).rem(m)?;
            }
            if i + 1 < bits {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(result)
    }

    /// Composition self(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(c.clone()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, Rat};

    fn q(v: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_i64(&rat_int(0), v)
    }

    #[test]
    fn divrem_roundtrip() {
        let f = q(&[1, 2, 1, 3, 5]);
        let g = q(&[2, 0, 1]);
        let (quo, rem) = f.divrem(&g).unwrap();
        assert_eq!(quo.mul(&g).add(&rem), f);
        assert!(rem.deg_i() < g.deg_i());
    }

    #[test]
    fn gcd_of_multiples() {
        let g = q(&[1, 1]);
        let a = g.mul(&q(&[3, 0, 2]));
        let b = g.mul(&q(&[-1, 7]));
        assert_eq!(a.gcd(&b).unwrap(), g.monic().unwrap());
    }

    #[test]
    fn xgcd_bezout() {
        let a = q(&[2, 5, 1, 1]);
        let b = q(&[1, 3]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn discriminant_small_cases() {
        // disc(x^2 - 1) = 4, disc(x^2 + x + 1) = -3
        assert_eq!(q(&[-1, 0, 1]).discriminant().unwrap(), rat_int(4));
        assert_eq!(q(&[1, 1, 1]).discriminant().unwrap(), rat_int(-3));
    }

    #[test]
    fn discriminant_cubic() {
        // disc(x^3 + px + q) = -4p^3 - 27q^2; p = -1, q = 2 -> 4 - 108 = -104
        assert_eq!(q(&[2, -1, 0, 1]).discriminant().unwrap(), rat_int(-104));
    }

    #[test]
    fn resultant_known() {
        // Res(x^2 - 1, x - 2) = (2)^2 - 1 = 3
        let f = q(&[-1, 0, 1]);
        let g = q(&[-2, 1]);
        assert_eq!(f.resultant(&g).unwrap(), rat_int(3));
    }

    #[test]
    fn compose_linear() {
        let f = q(&[0, 0, 1]); // x^2
        let g = q(&[1, 1]); // x + 1
        assert_eq!(f.compose(&g), q(&[1, 2, 1]));
    }
}
