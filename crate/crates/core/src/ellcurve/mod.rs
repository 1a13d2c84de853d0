//! Elliptic curves in long Weierstrass form over any supported exact field:
//! group law, scalar multiples, orders of points and division polynomials.

use std::fmt;

use crate::arith::{ArithError, Field};
use crate::poly::UniPoly;

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, nonsingular.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeierstrassCurve<F: Field> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ECPoint<F: Field> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> fmt::Display for ECPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => write!(f, "O"),
            ECPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self, ArithError> {
        let c = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(ArithError::Other("singular Weierstrass model".into()));
        }
        Ok(c)
    }

    /// y^2 = x^3 + a2 x^2 + a4 x + a6.
    pub fn from_cubic(a2: F, a4: F, a6: F) -> Result<Self, ArithError> {
        let z = a2.zero();
        WeierstrassCurve::new(z.clone(), a2, z, a4, a6)
    }

    pub fn b_invariants(&self) -> (F, F, F, F) {
        let two = self.a1.from_i64(2);
        let four = self.a1.from_i64(4);
        let b2 = self.a1.mul(&self.a1).add(&four.mul(&self.a2));
        let b4 = two.mul(&self.a4).add(&self.a1.mul(&self.a3));
        let b6 = self.a3.mul(&self.a3).add(&four.mul(&self.a6));
        let b8 = self
            .a1
            .mul(&self.a1)
            .mul(&self.a6)
            .add(&four.mul(&self.a2).mul(&self.a6))
            .sub(&self.a1.mul(&self.a3).mul(&self.a4))
            .add(&self.a2.mul(&self.a3).mul(&self.a3))
            .sub(&self.a4.mul(&self.a4));
        (b2, b4, b6, b8)
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = self.b_invariants();
        let n8 = self.a1.from_i64(8);
        let n9 = self.a1.from_i64(9);
        let n27 = self.a1.from_i64(27);
        b2.mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&n8.mul(&b4).mul(&b4).mul(&b4))
            .sub(&n27.mul(&b6).mul(&b6))
            .add(&n9.mul(&b2).mul(&b4).mul(&b6))
    }

    /// Right-hand side x^3 + a2 x^2 + a4 x + a6 as a polynomial.
    pub fn rhs_poly(&self) -> UniPoly<F> {
        UniPoly::from_coeffs(vec![
            self.a6.clone(),
            self.a4.clone(),
            self.a2.clone(),
            self.a1.one(),
        ])
    }

    pub fn on_curve(&self, p: &ECPoint<F>) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => {
                let lhs = y
                    .mul(y)
                    .add(&self.a1.mul(x).mul(y))
                    .add(&self.a3.mul(y));
                let rhs = self.rhs_poly().evaluate(x);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &ECPoint<F>) -> ECPoint<F> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => ECPoint::Affine(
                x.clone(),
                y.neg().sub(&self.a1.mul(x)).sub(&self.a3),
            ),
        }
    }

    pub fn add(&self, p: &ECPoint<F>, q: &ECPoint<F>) -> Result<ECPoint<F>, ArithError> {
        let (x1, y1) = match p {
            ECPoint::Infinity => return Ok(q.clone()),
            ECPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            ECPoint::Infinity => return Ok(p.clone()),
            ECPoint::Affine(x, y) => (x, y),
        };
        let (lambda, nu) = if x1 == x2 {
            if self.neg(p) == *q {
                return Ok(ECPoint::Infinity);
            }
            // tangent line
            let num = self
                .a1
                .from_i64(3)
                .mul(x1)
                .mul(x1)
                .add(&self.a1.from_i64(2).mul(&self.a2).mul(x1))
                .add(&self.a4)
                .sub(&self.a1.mul(y1));
            let den = self
                .a1
                .from_i64(2)
                .mul(y1)
                .add(&self.a1.mul(x1))
                .add(&self.a3);
            let lambda = num.div(&den)?;
            let nu_num = x1
                .mul(x1)
                .mul(x1)
                .neg()
                .add(&self.a4.mul(x1))
                .add(&self.a1.from_i64(2).mul(&self.a6))
                .sub(&self.a3.mul(y1));
            (lambda, nu_num.div(&den)?)
        } else {
            let dx = x2.sub(x1);
            let lambda = y2.sub(y1).div(&dx)?;
            let nu = y1.mul(x2).sub(&y2.mul(x1)).div(&dx)?;
            (lambda, nu)
        };
        let x3 = lambda
            .mul(&lambda)
            .add(&self.a1.mul(&lambda))
            .sub(&self.a2)
            .sub(x1)
            .sub(x2);
        let y3 = lambda
            .add(&self.a1)
            .mul(&x3)
            .add(&nu)
            .add(&self.a3)
            .neg();
        Ok(ECPoint::Affine(x3, y3))
    }

    pub fn scalar_mul(&self, n: i64, p: &ECPoint<F>) -> Result<ECPoint<F>, ArithError> {
        let (mut k, base) = if n < 0 {
            ((-n) as u64, self.neg(p))
        } else {
            (n as u64, p.clone())
        };
        let mut acc = ECPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow)?;
            }
            k >>= 1;
            if k > 0 {
                pow = self.add(&pow, &pow)?;
            }
        }
        Ok(acc)
    }

    /// Exact order of `p`, or `None` when it exceeds `bound`.
    pub fn point_order(&self, p: &ECPoint<F>, bound: usize) -> Result<Option<usize>, ArithError> {
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc == ECPoint::Infinity {
                return Ok(Some(n));
            }
            acc = self.add(&acc, p)?;
        }
        Ok(None)
    }

    /// Both points with the given x-coordinate, if any. Requires char != 2.
    pub fn lift_x(&self, x: &F) -> Result<Vec<ECPoint<F>>, ArithError> {
        // y^2 + (a1 x + a3) y - rhs(x) = 0
        let b = self.a1.mul(x).add(&self.a3);
        let rhs = self.rhs_poly().evaluate(x);
        let disc = b.mul(&b).add(&self.a1.from_i64(4).mul(&rhs));
        let half = self.a1.from_i64(2).inv()?;
        match disc.sqrt()? {
            None => Ok(vec![]),
            Some(s) if s.is_zero() => {
                Ok(vec![ECPoint::Affine(x.clone(), b.neg().mul(&half))])
            }
            Some(s) => {
                let y1 = b.neg().add(&s).mul(&half);
                let y2 = b.neg().sub(&s).mul(&half);
                Ok(vec![
                    ECPoint::Affine(x.clone(), y1),
                    ECPoint::Affine(x.clone(), y2),
                ])
            }
        }
    }

    /// The n-th division polynomial in x alone: for odd n this is psi_n, for
    /// even n it is psi_n / (2y + a1 x + a3)... only the a1 = a3 = 0 case is
    /// supported, where psi_n is y * (polynomial in x) for even n and this
    /// returns that polynomial. Roots over the algebraic closure are exactly
    /// the x-coordinates of the nontrivial n-torsion (odd n).
    pub fn division_polynomial(&self, n: usize) -> Result<UniPoly<F>, ArithError> {
        if !self.a1.is_zero() || !self.a3.is_zero() {
            return Err(ArithError::Other(
                "division polynomials require a1 = a3 = 0".into(),
            ));
        }
        let one = self.a1.one();
        let q = self.rhs_poly(); // y^2 = q(x)
        let q2 = q.mul(&q);
        let (b2, b4, b6, b8) = self.b_invariants();
        let c = |v: &F| UniPoly::constant(v.clone());
        let x = UniPoly::x_for(&one);
        // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
        let f3 = c(&one.from_i64(3))
            .mul(&x.pow(4))
            .add(&c(&b2).mul(&x.pow(3)))
            .add(&c(&one.from_i64(3).mul(&b4)).mul(&x.pow(2)))
            .add(&c(&one.from_i64(3).mul(&b6)).mul(&x))
            .add(&c(&b8));
        // psi_4 / y = 2(2 x^6 + b2 x^5 + 5 b4 x^4 + 10 b6 x^3 + 10 b8 x^2
        //              + (b2 b8 - b4 b6) x + (b4 b8 - b6^2))
        let f4 = x
            .pow(6)
            .scale(&one.from_i64(2))
            .add(&c(&b2).mul(&x.pow(5)))
            .add(&c(&one.from_i64(5).mul(&b4)).mul(&x.pow(4)))
            .add(&c(&one.from_i64(10).mul(&b6)).mul(&x.pow(3)))
            .add(&c(&one.from_i64(10).mul(&b8)).mul(&x.pow(2)))
            .add(&c(&b2.mul(&b8).sub(&b4.mul(&b6))).mul(&x))
            .add(&c(&b4.mul(&b8).sub(&b6.mul(&b6))))
            .scale(&one.from_i64(2));
        // f[m] with psi_m = f[m] * y^(m mod 2 == 0)
        let mut f: Vec<UniPoly<F>> = vec![
            UniPoly::zero(),
            UniPoly::one_for(&one),
            UniPoly::from_i64(&one, &[2]),
            f3,
            f4,
        ];
        let half = one.from_i64(2).inv()?;
        for m in 5..=n {
            let k = m / 2;
            let next = if m % 2 == 1 {
                // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
                let t1 = f[k + 2].mul(&f[k].pow(3));
                let t2 = f[k - 1].mul(&f[k + 1].pow(3));
                if k % 2 == 0 {
                    t1.mul(&q2).sub(&t2)
                } else {
                    t1.sub(&t2.mul(&q2))
                }
            } else {
                // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / 2y
                f[k].mul(
                    &f[k + 2]
                        .mul(&f[k - 1].pow(2))
                        .sub(&f[k - 2].mul(&f[k + 1].pow(2))),
                )
                .scale(&half)
            };
            f.push(next);
        }
        Ok(f[n].clone())
    }
}
