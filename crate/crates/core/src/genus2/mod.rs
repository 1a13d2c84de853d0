//! Genus-2 curves with degree-6 (split) models and exact divisor-class
//! arithmetic on their Jacobians.
//!
//! Classes are held in a balanced Mumford form `D(a, b) + n₊·∞₊ + n₋·∞₋ −
//! (∞₊ + ∞₋)` with `deg a + n₊ + n₋ = 2`, the canonical representative on a
//! model with two points at infinity (Paulus–Rück style). Addition is Cantor
//! composition followed by a reduction loop that tracks the exact orders of
//! the reducing functions `y − v(x)` at both infinite points.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{finite::FiniteField, nf::residue_reduce, ArithError, Field, FqElem, NFElement, Rat};
use crate::poly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Genus2Error {
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("subgroup closure exceeded the bound of {0} elements")]
    ClosureBoundExceeded(usize),
    #[error("curve has bad reduction modulo {0}")]
    BadReduction(u64),
    #[error("operation requires a split model (no cross term, sextic with square leading coefficient): {0}")]
    Unsupported(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// y² + h(x)·y = f(x), genus 2. The Jacobian routines require the plain
/// split model (h = 0, deg f = 6, leading coefficient a square); the
/// cross-term variant exists as a point set for membership checks and maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperCurve<F: Field> {
    pub f: UniPoly<F>,
    pub h: UniPoly<F>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CurvePoint<F: Field> {
    Affine(F, F),
    /// The point over x = ∞ with y/x³ tending to the chosen square root of
    /// the leading coefficient (for monic f: +1).
    InfPlus,
    /// Its hyperelliptic conjugate (y/x³ → −√lc).
    InfMinus,
}

/// Balanced Mumford representative: the class of
/// `D(a, b) + n_plus·∞₊ + n_minus·∞₋ − (∞₊ + ∞₋)` where `b² ≡ f mod a`,
/// `deg b < deg a`, and `n_minus = 2 − deg a − n_plus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MumfordClass<F: Field> {
    pub a: UniPoly<F>,
    pub b: UniPoly<F>,
    pub n_plus: u8,
}

impl<F: Field> MumfordClass<F> {
    pub fn n_minus(&self) -> u8 {
        2 - self.a.deg().unwrap_or(0) as u8 - self.n_plus
    }

    pub fn is_identity(&self) -> bool {
        self.a.deg() == Some(0) && self.n_plus == 1
    }
}

impl<F: Field> HyperCurve<F> {
    /// Split model y² = f(x), deg f = 6, f squarefree.
    pub fn new(f: UniPoly<F>) -> Result<Self, Genus2Error> {
        if f.deg() != Some(6) {
            return Err(Genus2Error::Unsupported(format!(
                "expected a sextic model, got degree {:?}",
                f.deg()
            )));
        }
        if f.gcd(&f.derivative())?.deg() != Some(0) {
            return Err(Genus2Error::Unsupported("singular model".into()));
        }
        let h = UniPoly::zero();
        Ok(HyperCurve { f, h })
    }

    /// Cross-term model y² + h(x)·y = f(x); nonsingularity is checked on the
    /// completed square f + h²/4 (char ≠ 2).
    pub fn with_cross_term(f: UniPoly<F>, h: UniPoly<F>) -> Result<Self, Genus2Error> {
        let sample = h
            .lc()
            .or_else(|| f.lc())
            .ok_or_else(|| Genus2Error::Unsupported("zero model".into()))?
            .clone();
        let quarter = sample.from_i64(4).inv()?;
        let completed = f.add(&h.mul(&h).scale(&quarter));
        if completed.deg() != Some(6) {
            return Err(Genus2Error::Unsupported(
                "completed square is not a sextic".into(),
            ));
        }
        if completed.gcd(&completed.derivative())?.deg() != Some(0) {
            return Err(Genus2Error::Unsupported("singular model".into()));
        }
        Ok(HyperCurve { f, h })
    }

    fn sample(&self) -> &F {
        self.f.lc().expect("nonzero f")
    }

    /// Signed slopes y/x³ of the branches at infinity, when rational:
    /// roots of t² + h₃·t − f₆ = 0, `(plus, minus)`.
    pub fn infinite_slopes(&self) -> Result<Option<(F, F)>, ArithError> {
        let one = self.sample().one();
        let h3 = self.h.coeff_or_zero(3, &one);
        let f6 = self.f.coeff_or_zero(6, &one);
        let disc = h3.mul(&h3).add(&one.from_i64(4).mul(&f6));
        let half = one.from_i64(2).inv()?;
        Ok(disc.sqrt()?.map(|s| {
            let tp = s.sub(&h3).mul(&half);
            let tm = s.neg().sub(&h3).mul(&half);
            (tp, tm)
        }))
    }

    pub fn on_curve(&self, p: &CurvePoint<F>) -> bool {
        match p {
            CurvePoint::Affine(x, y) => {
                let lhs = y.mul(y).add(&self.h.evaluate(x).mul(y));
                lhs == self.f.evaluate(x)
            }
            CurvePoint::InfPlus | CurvePoint::InfMinus => {
                matches!(self.infinite_slopes(), Ok(Some(_)))
            }
        }
    }

    fn require_split(&self) -> Result<(), Genus2Error> {
        if !self.h.is_zero() {
            return Err(Genus2Error::Unsupported(
                "Jacobian arithmetic needs h = 0".into(),
            ));
        }
        Ok(())
    }

    /// The cubic V₊ with deg(f − V₊²) ≤ 2, expanding the ∞₊ branch of y.
    /// Exists when lc(f) is a square (char ≠ 2).
    pub fn v_plus(&self) -> Result<UniPoly<F>, Genus2Error> {
        self.require_split()?;
        let one = self.sample().one();
        let f6 = self.f.coeff_or_zero(6, &one);
        let v3 = f6
            .sqrt()?
            .ok_or_else(|| Genus2Error::Unsupported("lc(f) is not a square".into()))?;
        // choose the root that the infinity labels use: the +" branch
        let v3 = if v3.neg() == one { one.clone() } else { v3 };
        let f5 = self.f.coeff_or_zero(5, &one);
        let f4 = self.f.coeff_or_zero(4, &one);
        let f3 = self.f.coeff_or_zero(3, &one);
        let two_v3_inv = one.from_i64(2).mul(&v3).inv()?;
        let v2 = f5.mul(&two_v3_inv);
        let v1 = f4.sub(&v2.mul(&v2)).mul(&two_v3_inv);
        let v0 = f3
            .sub(&one.from_i64(2).mul(&v2).mul(&v1))
            .mul(&two_v3_inv);
        Ok(UniPoly::from_coeffs(vec![v0, v1, v2, v3]))
    }

    pub fn jac_identity(&self) -> MumfordClass<F> {
        MumfordClass {
            a: UniPoly::one_for(self.sample()),
            b: UniPoly::zero(),
            n_plus: 1,
        }
    }

    /// Class of `P − ∞₋` (the Abel–Jacobi embedding based at ∞₋,
    /// the (1, −1, 0) point of the projective model).
    pub fn abel_jacobi(&self, p: &CurvePoint<F>) -> Result<MumfordClass<F>, Genus2Error> {
        self.require_split()?;
        if !self.on_curve(p) {
            return Err(Genus2Error::PointNotOnCurve);
        }
        Ok(match p {
            CurvePoint::InfMinus => self.jac_identity(),
            CurvePoint::InfPlus => MumfordClass {
                a: UniPoly::one_for(self.sample()),
                b: UniPoly::zero(),
                n_plus: 2,
            },
            CurvePoint::Affine(x, y) => MumfordClass {
                a: UniPoly::from_coeffs(vec![x.neg(), x.one()]),
                b: UniPoly::constant(y.clone()),
                n_plus: 1,
            },
        })
    }

    pub fn jac_neg(&self, d: &MumfordClass<F>) -> Result<MumfordClass<F>, Genus2Error> {
        let b = d.b.neg().rem(&d.a)?;
        Ok(MumfordClass {
            a: d.a.clone(),
            b,
            n_plus: d.n_minus(),
        })
    }

    /// Order of y − v(x) at ∞₊ (sign = +1) or ∞₋ (sign = −1), for v of
    /// degree ≤ 3.
    fn inf_order(&self, v: &UniPoly<F>, v_side: &UniPoly<F>) -> i64 {
        let diff = v_side.sub(v);
        if diff.is_zero() {
            let r = self.f.sub(&v_side.mul(v_side));
            3 - r.deg_i()
        } else {
            -diff.deg_i()
        }
    }

    pub fn jac_add(
        &self,
        d1: &MumfordClass<F>,
        d2: &MumfordClass<F>,
    ) -> Result<MumfordClass<F>, Genus2Error> {
        self.require_split()?;
        let v_plus = self.v_plus()?;
        let v_minus = v_plus.neg();

        // Cantor composition.
        let (g0, s1, s2) = d1.a.xgcd(&d2.a)?;
        let bsum = d1.b.add(&d2.b);
        let (d, t, s3) = g0.xgcd(&bsum)?;
        let s1 = s1.mul(&t);
        let s2 = s2.mul(&t);
        // d = s1 a1 + s2 a2 + s3 (b1 + b2)
        let a = d1.a.mul(&d2.a).div_exact(&d.mul(&d))?;
        let num = s1
            .mul(&d1.a)
            .mul(&d2.b)
            .add(&s2.mul(&d2.a).mul(&d1.b))
            .add(&s3.mul(&d1.b.mul(&d2.b).add(&self.f)));
        let mut b = num.div_exact(&d)?.rem(&a)?;
        let mut a = a;
        let mut n_p = d1.n_plus as i64 + d2.n_plus as i64;
        let mut n_m = d1.n_minus() as i64 + d2.n_minus() as i64;
        let mut k = 2 - d.deg_i();

        for _ in 0..64 {
            // Restore nonnegative infinity weights by adding copies of
            // ∞₊ + ∞₋ − (∞₁ + ∞₂) ≡ 0 in the k-ledger.
            let deficit = -(n_p.min(n_m).min(0));
            n_p += deficit;
            n_m += deficit;
            k += deficit;
            // Cancel balanced pairs ∞₊ + ∞₋.
            let t = n_p.min(n_m);
            n_p -= t;
            n_m -= t;
            k -= t;
            debug_assert_eq!(a.deg_i() + n_p + n_m, 2 * k, "balance invariant");
            if k == 0 {
                return Ok(self.jac_identity());
            }
            if k == 1 {
                // identity weights were cancelled above, so re-add one pair
                // for the canonical (a = 1, n₊ = 1) representative
                if a.deg() == Some(0) && n_p == 0 && n_m == 0 {
                    unreachable!("k = 1 forces deg a + n_p + n_m = 2");
                }
                return Ok(MumfordClass {
                    a,
                    b,
                    n_plus: n_p as u8,
                });
            }
            // Reduction step through the function y − v(x).
            let v = if a.deg_i() >= 4 {
                b.clone()
            } else {
                let side = if n_p >= n_m { &v_plus } else { &v_minus };
                side.add(&b.sub(side).rem(&a)?)
            };
            let fv = self.f.sub(&v.mul(&v));
            let a_next = fv.div_exact(&a)?.monic()?;
            let ord_p = self.inf_order(&v, &v_plus);
            let ord_m = self.inf_order(&v, &v_minus);
            n_p -= ord_p;
            n_m -= ord_m;
            k += a_next.deg_i();
            b = v.neg().rem(&a_next)?;
            a = a_next;
        }
        unreachable!("split-model reduction failed to terminate")
    }

    pub fn jac_scalar(&self, n: i64, d: &MumfordClass<F>) -> Result<MumfordClass<F>, Genus2Error> {
        let (mut k, base) = if n < 0 {
            ((-n) as u64, self.jac_neg(d)?)
        } else {
            (n as u64, d.clone())
        };
        let mut acc = self.jac_identity();
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.jac_add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.jac_add(&pow, &pow)?;
            }
        }
        Ok(acc)
    }

    /// Exact order of the class, or `None` past the bound.
    pub fn class_order(
        &self,
        d: &MumfordClass<F>,
        bound: usize,
    ) -> Result<Option<usize>, Genus2Error> {
        let mut acc = d.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Ok(Some(n));
            }
            acc = self.jac_add(&acc, d)?;
        }
        Ok(None)
    }

    /// The subgroup generated by `gens`, as canonical representatives in a
    /// deterministic (breadth-first, sorted-set) enumeration.
    pub fn subgroup_closure(
        &self,
        gens: &[MumfordClass<F>],
        bound: usize,
    ) -> Result<BTreeSet<MumfordClass<F>>, Genus2Error> {
        let mut set = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = self.jac_identity();
        set.insert(id.clone());
        queue.push_back(id);
        while let Some(cur) = queue.pop_front() {
            for g in gens {
                let next = self.jac_add(&cur, g)?;
                if set.insert(next.clone()) {
                    if set.len() > bound {
                        return Err(Genus2Error::ClosureBoundExceeded(bound));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(set)
    }
}

/// Number of classes whose affine part has degree < 2.
pub fn count_deg_lt2<F: Field>(s: &BTreeSet<MumfordClass<F>>) -> usize {
    s.iter().filter(|d| d.a.deg_i() < 2).count()
}

impl HyperCurve<FqElem> {
    /// |C(F_q)| by direct enumeration: affine solutions plus the rational
    /// points at infinity.
    pub fn curve_count(&self, ctx: &Arc<FiniteField>) -> u64 {
        let mut count = 0u64;
        for x in ctx.elements() {
            let fx = self.f.evaluate(&x);
            let hx = self.h.evaluate(&x);
            // y² + h(x) y = f(x): roots of a monic quadratic in y
            let disc = hx
                .mul(&hx)
                .add(&ctx.from_i64(4).mul(&fx));
            if disc.is_zero() {
                count += 1;
            } else if disc.is_square() {
                count += 2;
            }
        }
        match self.infinite_slopes() {
            Ok(Some((p, m))) if p != m => count + 2,
            Ok(Some(_)) => count + 1,
            _ => count,
        }
    }
}

/// |J(F_{q^k})| from the point counts n1 = |C(F_q)|, n2 = |C(F_{q²})|:
/// builds L(T) = 1 − e₁T + e₂T² − q e₁T³ + q²T⁴ with e₁ = p₁ = q+1−n1,
/// e₂ = (p₁² − p₂)/2, p₂ = q²+1−n2, and evaluates ∏_{ζᵏ=1} L(ζ) exactly as
/// Res(Tᵏ − 1, L).
pub fn jacobian_order(q: u64, n1: u64, n2: u64, k: u32) -> Result<BigInt, ArithError> {
    let qi = BigInt::from(q);
    let p1: BigInt = &qi + 1 - BigInt::from(n1);
    let p2: BigInt = &qi * &qi + 1 - BigInt::from(n2);
    let e1 = p1.clone();
    let e2 = (&p1 * &p1 - &p2) / 2;
    let l_poly = UniPoly::from_coeffs(vec![
        Rat::from_integer(BigInt::from(1)),
        Rat::from_integer(-&e1),
        Rat::from_integer(e2),
        Rat::from_integer(-&qi * &e1),
        Rat::from_integer(&qi * &qi),
    ]);
    let mut cyc = vec![Rat::from_integer(BigInt::from(-1))];
    cyc.extend(std::iter::repeat(Rat::from_integer(BigInt::from(0))).take(k as usize - 1));
    cyc.push(Rat::from_integer(BigInt::from(1)));
    let res = UniPoly::from_coeffs(cyc).resultant(&l_poly)?;
    debug_assert!(res.is_integer());
    Ok(res.to_integer())
}

/// Reduce a class on a curve over K to the residue field: coefficient-wise
/// reduction, plus collapse of a divisor P + ι(P) that only forms modulo p.
pub fn reduce_class(
    curve_k: &HyperCurve<NFElement>,
    curve_fq: &HyperCurve<FqElem>,
    d: &MumfordClass<NFElement>,
    field: &Arc<FiniteField>,
) -> Result<MumfordClass<FqElem>, Genus2Error> {
    // good reduction: the reduced model must stay squarefree of degree 6
    let f_red = reduce_poly(&curve_k.f, field)?;
    if f_red.deg() != Some(6) || f_red.gcd(&f_red.derivative())?.deg() != Some(0) {
        return Err(Genus2Error::BadReduction(field.p));
    }
    debug_assert_eq!(f_red, curve_fq.f);
    let a = reduce_poly(&d.a, field)?;
    let b = reduce_poly(&d.b, field)?;
    // monic a keeps its degree; the triple stays a valid representative
    let red = MumfordClass {
        a,
        b,
        n_plus: d.n_plus,
    };
    // A pair P + ι(P) can appear only as a doubled Weierstrass point:
    // a = (x − x0)², b(x0) = 0, f(x0) = 0; such a divisor is ≡ ∞₁ + ∞₂.
    if red.a.deg() == Some(2) {
        let g = red.a.gcd(&red.a.derivative())?;
        if g.deg() == Some(1) {
            let x0 = g.coeff_or_zero(0, curve_fq.sample()).neg();
            if red.b.evaluate(&x0).is_zero() && curve_fq.f.evaluate(&x0).is_zero() {
                return Ok(curve_fq.jac_identity());
            }
        }
    }
    Ok(red)
}

fn reduce_poly(
    p: &UniPoly<NFElement>,
    field: &Arc<FiniteField>,
) -> Result<UniPoly<FqElem>, Genus2Error> {
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        coeffs.push(residue_reduce(c, field)?);
    }
    Ok(UniPoly::from_coeffs(coeffs))
}
