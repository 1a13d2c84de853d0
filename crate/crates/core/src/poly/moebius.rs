//! Fractional linear maps of the projective x-line and their action on
//! sextic branch loci.

use crate::arith::{ArithError, Field};
use crate::poly::{PolyError, UniPoly};

/// x -> (p x + q) / (r x + s), with p s - q r != 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap<F: Field> {
    pub p: F,
    pub q: F,
    pub r: F,
    pub s: F,
}

impl<F: Field> MoebiusMap<F> {
    pub fn new(p: F, q: F, r: F, s: F) -> Result<Self, ArithError> {
        let m = MoebiusMap { p, q, r, s };
        if m.det().is_zero() {
            return Err(ArithError::Other("degenerate Moebius map".into()));
        }
        Ok(m)
    }

    /// The involution shape x -> (x + b)/(c x - 1).
    pub fn from_b_c(b: F, c: F) -> Result<Self, ArithError> {
        let one = b.one();
        MoebiusMap::new(one.clone(), b, c, one.neg())
    }

    pub fn identity(sample: &F) -> Self {
        MoebiusMap {
            p: sample.one(),
            q: sample.zero(),
            r: sample.zero(),
            s: sample.one(),
        }
    }

    pub fn det(&self) -> F {
        self.p.mul(&self.s).sub(&self.q.mul(&self.r))
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        MoebiusMap {
            p: self.p.mul(&rhs.p).add(&self.q.mul(&rhs.r)),
            q: self.p.mul(&rhs.q).add(&self.q.mul(&rhs.s)),
            r: self.r.mul(&rhs.p).add(&self.s.mul(&rhs.r)),
            s: self.r.mul(&rhs.q).add(&self.s.mul(&rhs.s)),
        }
    }

    /// Whether the map equals the identity of PGL_2 (i.e. is a scalar matrix).
    pub fn is_projective_identity(&self) -> bool {
        self.q.is_zero() && self.r.is_zero() && self.p == self.s
    }

    /// True iff M is an involution of the projective line: M != id, M^2 = id.
    pub fn is_involution(&self) -> bool {
        !self.is_projective_identity() && self.compose(self).is_projective_identity()
    }

    /// Apply to a field value; `None` means the image is the point at infinity.
    pub fn apply(&self, x: &F) -> Result<Option<F>, ArithError> {
        let den = self.r.mul(x).add(&self.s);
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.p.mul(x).add(&self.q).div(&den)?))
    }

    /// Numerator and denominator as degree-<=1 polynomials.
    pub fn as_polys(&self) -> (UniPoly<F>, UniPoly<F>) {
        (
            UniPoly::from_coeffs(vec![self.q.clone(), self.p.clone()]),
            UniPoly::from_coeffs(vec![self.s.clone(), self.r.clone()]),
        )
    }
}

/// `f((px+q)/(rx+s)) * (rx+s)^6`, expanded exactly. Requires deg f = 6.
pub fn moebius_transform_sextic<F: Field>(
    f: &UniPoly<F>,
    m: &MoebiusMap<F>,
) -> Result<UniPoly<F>, PolyError> {
    if f.deg() != Some(6) {
        return Err(PolyError::Degree {
            expected: 6,
            got: f.deg_i(),
        });
    }
    let (num, den) = m.as_polys();
    let mut acc = UniPoly::zero();
    // sum_i f_i * num^i * den^(6-i)
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = num.pow(i as u64).mul(&den.pow((6 - i) as u64));
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}

/// If `g = lambda * f` for a scalar, returns `Some(lambda)`.
pub fn proportionality_scalar<F: Field>(f: &UniPoly<F>, g: &UniPoly<F>) -> Option<F> {
    if f.is_zero() || g.is_zero() || f.deg() != g.deg() {
        return None;
    }
    let lambda = g.lc().unwrap().div(f.lc().unwrap()).ok()?;
    if &f.scale(&lambda) == g {
        Some(lambda)
    } else {
        None
    }
}
