//! Univariate factorization over prime fields: squarefree decomposition,
//! distinct-degree factorization and Cantor–Zassenhaus equal-degree
//! splitting (randomized, seeded for reproducibility).

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{ArithError, Field, Fp, Rat};
use crate::poly::UniPoly;

/// Reduce a rational polynomial mod p. Errors when p divides a denominator.
pub fn reduce_poly_mod_p(g: &UniPoly<Rat>, p: u64) -> Result<UniPoly<Fp>, ArithError> {
    let pb = num_bigint::BigInt::from(p);
    let mut coeffs = Vec::with_capacity(g.coeffs().len());
    for c in g.coeffs() {
        if c.denom().mod_floor(&pb).is_zero() {
            return Err(ArithError::NotPIntegral { p });
        }
        let num = Fp {
            p,
            v: c.numer().mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0),
        };
        let den = Fp {
            p,
            v: c.denom().mod_floor(&pb).to_u64_digits().1.first().copied().unwrap_or(0),
        };
        coeffs.push(num.mul(&den.inv()?));
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// Full monic factorization of `g` mod p into `(irreducible, multiplicity)`
/// pairs, sorted by (degree, coefficients) for determinism.
pub fn factor_mod_p(
    g: &UniPoly<Rat>,
    p: u64,
    seed: u64,
) -> Result<Vec<(UniPoly<Fp>, usize)>, ArithError> {
    let gp = reduce_poly_mod_p(g, p)?;
    factor_fp(&gp, seed)
}

/// Factor a polynomial over F_p (p odd prime). The leading unit is dropped;
/// factors are monic.
pub fn factor_fp(g: &UniPoly<Fp>, seed: u64) -> Result<Vec<(UniPoly<Fp>, usize)>, ArithError> {
    let p = match g.lc() {
        Some(c) => c.p,
        None => return Err(ArithError::DivisionByZero),
    };
    if g.deg() == Some(0) {
        return Ok(Vec::new());
    }
    let monic = g.monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(UniPoly<Fp>, usize)> = Vec::new();
    for (sqfree, mult) in squarefree_decomposition(&monic, p)? {
        for (prod, d) in distinct_degree(&sqfree, p)? {
            for irr in equal_degree_split(&prod, d, p, &mut rng)? {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Squarefree decomposition in characteristic p, returning pairs
/// `(squarefree part, multiplicity)` with distinct multiplicities.
fn squarefree_decomposition(
    f: &UniPoly<Fp>,
    p: u64,
) -> Result<Vec<(UniPoly<Fp>, usize)>, ArithError> {
    let mut out = Vec::new();
    squarefree_rec(f, p, 1, &mut out)?;
    Ok(out)
}

fn squarefree_rec(
    f: &UniPoly<Fp>,
    p: u64,
    outer: usize,
    out: &mut Vec<(UniPoly<Fp>, usize)>,
) -> Result<(), ArithError> {
    if f.deg() == Some(0) {
        return Ok(());
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f = g(x^p); take the p-th root (coefficient-wise identity over F_p).
        return squarefree_rec(&pth_root(f, p), p, outer * p as usize, out);
    }
    let mut c = f.gcd(&deriv)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1usize;
    while w.deg() != Some(0) {
        let y = w.gcd(&c)?;
        let z = w.div_exact(&y)?;
        if z.deg() != Some(0) {
            out.push((z, i * outer));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if c.deg() != Some(0) {
        squarefree_rec(&pth_root(&c, p), p, outer * p as usize, out)?;
    }
    Ok(())
}

fn pth_root(f: &UniPoly<Fp>, p: u64) -> UniPoly<Fp> {
    let coeffs: Vec<Fp> = f
        .coeffs()
        .iter()
        .step_by(p as usize)
        .copied()
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// Distinct-degree factorization of a squarefree monic polynomial:
/// returns `(product of irreducibles of degree d, d)`.
fn distinct_degree(f: &UniPoly<Fp>, p: u64) -> Result<Vec<(UniPoly<Fp>, usize)>, ArithError> {
    let sample = Fp::new(p, 0);
    let x = UniPoly::x_for(&sample);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.deg_i() > 0 {
        d += 1;
        if 2 * d > rest.deg().unwrap() {
            // what is left is itself irreducible
            out.push((rest.clone(), rest.deg().unwrap()));
            break;
        }
        h = h.powmod(&BigUint::from(p), &rest)?;
        let g = h.sub(&x).gcd(&rest)?;
        if g.deg_i() > 0 {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting of a product of degree-d irreducibles.
fn equal_degree_split(
    f: &UniPoly<Fp>,
    d: usize,
    p: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<UniPoly<Fp>>, ArithError> {
    if f.deg() == Some(d) {
        return Ok(vec![f.clone()]);
    }
    if p == 2 {
        return Err(ArithError::Other(
            "equal-degree splitting not implemented for p = 2".into(),
        ));
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    let sample = Fp::new(p, 0);
    loop {
        let deg = f.deg().unwrap();
        let coeffs: Vec<Fp> = (0..deg)
            .map(|_| Fp::new(p, rng.gen_range(0..p) as i64))
            .collect();
        let r = UniPoly::from_coeffs(coeffs);
        if r.deg_i() < 1 {
            continue;
        }
        let g0 = r.gcd(f)?;
        let candidate = if g0.deg_i() > 0 && g0.deg() != f.deg() {
            g0
        } else {
            let s = r.powmod(&e, f)?;
            let g = s.sub(&UniPoly::one_for(&sample)).gcd(f)?;
            if g.deg_i() <= 0 || g.deg() == f.deg() {
                continue;
            }
            g
        };
        let other = f.div_exact(&candidate)?;
        let mut out = equal_degree_split(&candidate, d, p, rng)?;
        out.extend(equal_degree_split(&other, d, p, rng)?);
        return Ok(out);
    }
}
