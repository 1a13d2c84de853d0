//! From a sextic model with a bielliptic involution to its even model, the
//! genus-1 quotient, and fiberwise pullback of quotient points (possibly
//! into quadratic extensions).

use thiserror::Error;

use crate::arith::{ArithError, Field, QuadExt};
use crate::ellcurve::{ECPoint, WeierstrassCurve};
use crate::genus2::{CurvePoint, Genus2Error, HyperCurve};
use crate::poly::moebius::{moebius_transform_sextic, proportionality_scalar};
use crate::poly::{solve_d_pair, solve_even_model, EvenModelError, MoebiusMap, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiellipticError {
    #[error("the given map is not an involution of the x-line")]
    NotInvolution,
    #[error("the involution does not preserve the branch locus")]
    NotBielliptic,
    #[error("fixed points of the involution do not match the d-pair")]
    FixedPointMismatch,
    #[error("point does not lie on the source curve")]
    PointNotOnCurve,
    #[error(transparent)]
    EvenModel(#[from] EvenModelError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Genus2(#[from] Genus2Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The validated even-model package: the substitution X = (x+d₁)/(x+d₂),
/// Y = y/(x+d₂)³ turns y² = f(x) into Y² = c₆X⁶ + c₄X⁴ + c₂X² + c₀, and the
/// genus-1 quotient is y² = c₆x³ + c₄x² + c₂x + c₀ via (X, Y) ↦ (X², Y).
#[derive(Clone, Debug)]
pub struct EvenModelData<F: Field> {
    pub source: HyperCurve<F>,
    pub m: MoebiusMap<F>,
    pub d1: F,
    pub d2: F,
    pub c6: F,
    pub c4: F,
    pub c2: F,
    pub c0: F,
}

/// A point of the source curve in its exact field of definition: the base
/// field, or a quadratic extension adjoining the square root of the
/// quotient point's x-coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FiberCoords<F: Field> {
    Base(CurvePoint<F>),
    Quad(CurvePoint<QuadExt<F>>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FiberPoint<F: Field> {
    pub coords: FiberCoords<F>,
    pub multiplicity: usize,
    /// Annotated by the caller; fiber computation leaves it false.
    pub is_cusp: bool,
}

pub fn build_even_model<F: Field>(
    source: HyperCurve<F>,
    m: MoebiusMap<F>,
) -> Result<EvenModelData<F>, BiellipticError> {
    if !m.is_involution() {
        return Err(BiellipticError::NotInvolution);
    }
    let transformed = moebius_transform_sextic(&source.f, &m)?;
    let lambda =
        proportionality_scalar(&source.f, &transformed).ok_or(BiellipticError::NotBielliptic)?;
    if lambda.is_zero() {
        return Err(BiellipticError::NotBielliptic);
    }
    // normalize to x -> (x + b)/(c x - 1); involutions have s = -p
    if m.p.is_zero() || m.s != m.p.neg() {
        return Err(BiellipticError::EvenModel(
            EvenModelError::DegenerateInvolution,
        ));
    }
    let pinv = m.p.inv()?;
    let b = m.q.mul(&pinv);
    let c = m.r.mul(&pinv);
    let (d1, d2) = solve_d_pair(&b, &c)?;
    // {-d1, -d2} must be exactly the fixed points of the involution
    for d in [&d1, &d2] {
        let fixed = m.apply(&d.neg())?;
        if fixed != Some(d.neg()) {
            return Err(BiellipticError::FixedPointMismatch);
        }
    }
    let (c6, c4, c2, c0) = solve_even_model(&source.f, &d1, &d2)?;
    Ok(EvenModelData {
        source,
        m,
        d1,
        d2,
        c6,
        c4,
        c2,
        c0,
    })
}

impl<F: Field> EvenModelData<F> {
    /// c₆u³ + c₄u² + c₂u + c₀.
    pub fn quotient_rhs(&self, u: &F) -> F {
        self.c6
            .mul(u)
            .add(&self.c4)
            .mul(u)
            .add(&self.c2)
            .mul(u)
            .add(&self.c0)
    }

    pub fn quotient_contains(&self, p: &ECPoint<F>) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(u, w) => w.mul(w) == self.quotient_rhs(u),
        }
    }

    /// Monic model E′: y² = x³ + c₄x² + c₂c₆x + c₀c₆², reached by the
    /// square-twist (u, w) ↦ (c₆u, c₆w).
    pub fn monic_quotient(&self) -> Result<WeierstrassCurve<F>, ArithError> {
        WeierstrassCurve::from_cubic(
            self.c4.clone(),
            self.c2.mul(&self.c6),
            self.c0.mul(&self.c6).mul(&self.c6),
        )
    }

    pub fn to_monic(&self, p: &ECPoint<F>) -> ECPoint<F> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(u, w) => ECPoint::Affine(self.c6.mul(u), self.c6.mul(w)),
        }
    }

    pub fn from_monic(&self, p: &ECPoint<F>) -> Result<ECPoint<F>, ArithError> {
        Ok(match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => {
                let inv = self.c6.inv()?;
                ECPoint::Affine(x.mul(&inv), y.mul(&inv))
            }
        })
    }

    /// Image of a source-curve point on the quotient cubic.
    pub fn quotient_point(&self, p: &CurvePoint<F>) -> Result<ECPoint<F>, BiellipticError> {
        if !self.source.on_curve(p) {
            return Err(BiellipticError::PointNotOnCurve);
        }
        Ok(match p {
            CurvePoint::InfPlus | CurvePoint::InfMinus => {
                let (sp, sm) = self
                    .source
                    .infinite_slopes()?
                    .expect("on_curve accepted an infinite point");
                let w = if matches!(p, CurvePoint::InfPlus) { sp } else { sm };
                ECPoint::Affine(self.c6.one(), w)
            }
            CurvePoint::Affine(x, y) => {
                let den = x.add(&self.d2);
                if den.is_zero() {
                    return Ok(ECPoint::Infinity);
                }
                let dinv = den.inv()?;
                let big_x = x.add(&self.d1).mul(&dinv);
                let big_y = y.mul(&dinv).mul(&dinv).mul(&dinv);
                ECPoint::Affine(big_x.mul(&big_x), big_y)
            }
        })
    }

    fn source_from_branch(&self, big_x: &F, w: &F) -> Result<CurvePoint<F>, BiellipticError> {
        // x = (d1 − d2 X)/(X − 1), y = w (d1 − d2)³ / (X − 1)³
        let one = big_x.one();
        let den = big_x.sub(&one);
        if den.is_zero() {
            // x = ∞: pick the infinite point whose slope is w
            let (sp, _) = self
                .source
                .infinite_slopes()?
                .ok_or(BiellipticError::PointNotOnCurve)?;
            return Ok(if *w == sp {
                CurvePoint::InfPlus
            } else {
                CurvePoint::InfMinus
            });
        }
        let dinv = den.inv()?;
        let x = self.d1.sub(&self.d2.mul(big_x)).mul(&dinv);
        let delta = self.d1.sub(&self.d2);
        let y = w
            .mul(&delta)
            .mul(&delta)
            .mul(&delta)
            .mul(&dinv)
            .mul(&dinv)
            .mul(&dinv);
        Ok(CurvePoint::Affine(x, y))
    }

    /// All source-curve points above a quotient point, with multiplicity.
    /// When the X-coordinate needs a square root outside the base field the
    /// fiber is returned over the quadratic extension.
    pub fn pullback_fiber(&self, q: &ECPoint<F>) -> Result<Vec<FiberPoint<F>>, BiellipticError> {
        if !self.quotient_contains(q) {
            return Err(BiellipticError::PointNotOnCurve);
        }
        let base = |c: CurvePoint<F>, multiplicity: usize| FiberPoint {
            coords: FiberCoords::Base(c),
            multiplicity,
            is_cusp: false,
        };
        let (u, w) = match q {
            ECPoint::Infinity => {
                // X = ∞, i.e. x = −d₂ on the source: lift that x-coordinate
                let x = self.d2.neg();
                let s = self.source.f.evaluate(&x);
                return Ok(match s.sqrt()? {
                    Some(y) if y.is_zero() => vec![base(CurvePoint::Affine(x, y), 2)],
                    Some(y) => vec![
                        base(CurvePoint::Affine(x.clone(), y.clone()), 1),
                        base(CurvePoint::Affine(x, y.neg()), 1),
                    ],
                    None => {
                        let root = QuadExt::root(s);
                        let xq = QuadExt::from_base(x, root.s.clone());
                        vec![
                            FiberPoint {
                                coords: FiberCoords::Quad(CurvePoint::Affine(
                                    xq.clone(),
                                    root.clone(),
                                )),
                                multiplicity: 1,
                                is_cusp: false,
                            },
                            FiberPoint {
                                coords: FiberCoords::Quad(CurvePoint::Affine(xq, root.neg())),
                                multiplicity: 1,
                                is_cusp: false,
                            },
                        ]
                    }
                });
            }
            ECPoint::Affine(u, w) => (u.clone(), w.clone()),
        };
        if u.is_zero() {
            // ramified: X = 0 twice
            return Ok(vec![base(
                self.source_from_branch(&u.zero(), &w)?,
                2,
            )]);
        }
        match u.sqrt()? {
            Some(root) => Ok(vec![
                base(self.source_from_branch(&root, &w)?, 1),
                base(self.source_from_branch(&root.neg(), &w)?, 1),
            ]),
            None => {
                let root = QuadExt::root(u.clone());
                let lift = |v: &F| QuadExt::from_base(v.clone(), u.clone());
                let emd_q = EvenModelData {
                    source: HyperCurve {
                        f: self.source.f.map_coeffs(&lift),
                        h: self.source.h.map_coeffs(&lift),
                    },
                    m: MoebiusMap {
                        p: lift(&self.m.p),
                        q: lift(&self.m.q),
                        r: lift(&self.m.r),
                        s: lift(&self.m.s),
                    },
                    d1: lift(&self.d1),
                    d2: lift(&self.d2),
                    c6: lift(&self.c6),
                    c4: lift(&self.c4),
                    c2: lift(&self.c2),
                    c0: lift(&self.c0),
                };
                let wq = lift(&w);
                let p1 = emd_q.source_from_branch(&root, &wq)?;
                let p2 = emd_q.source_from_branch(&root.neg(), &wq)?;
                Ok(vec![
                    FiberPoint {
                        coords: FiberCoords::Quad(p1),
                        multiplicity: 1,
                        is_cusp: false,
                    },
                    FiberPoint {
                        coords: FiberCoords::Quad(p2),
                        multiplicity: 1,
                        is_cusp: false,
                    },
                ])
            }
        }
    }
}
