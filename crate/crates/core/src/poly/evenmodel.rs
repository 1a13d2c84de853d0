//! The d-pair quadratic and the linear solve producing even sextic models
//! `y^2 = c6 X^6 + c4 X^4 + c2 X^2 + c0` from a bielliptic involution.

use thiserror::Error;

use crate::arith::{ArithError, Field};
use crate::poly::UniPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvenModelError {
    #[error("degenerate involution (c = 0)")]
    DegenerateInvolution,
    #[error("d-pair discriminant is not a square in the base field")]
    NotSplit,
    #[error("even-model coefficient system is inconsistent")]
    Inconsistent,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Roots of `t^2 + (2/c) t - (b/c)`, i.e. the pair with
/// `d1 + d2 = -2/c` and `d1 d2 = -b/c`.
///
/// Ordering tie-break: `d1` is the root with `d1 - d2 > 0` in the field's
/// coordinate order (numeric for Q, lexicographic on the power basis for K).
/// Callers that compare against printed values treat the pair as unordered.
pub fn solve_d_pair<F: Field>(b: &F, c: &F) -> Result<(F, F), EvenModelError> {
    if c.is_zero() {
        return Err(EvenModelError::DegenerateInvolution);
    }
    let two = b.from_i64(2);
    let four = b.from_i64(4);
    let cinv = c.inv()?;
    // t^2 + pt + q with p = 2/c, q = -b/c
    let p = two.mul(&cinv);
    let q = b.mul(&cinv).neg();
    let disc = p.mul(&p).sub(&four.mul(&q));
    let root = disc.sqrt()?.ok_or(EvenModelError::NotSplit)?;
    let half = two.inv()?;
    let r1 = p.neg().add(&root).mul(&half);
    let r2 = p.neg().sub(&root).mul(&half);
    let delta = r1.sub(&r2);
    if delta > delta.zero() {
        Ok((r1, r2))
    } else {
        Ok((r2, r1))
    }
}

/// Solve `f(x) = c6 (x+d1)^6 + c4 (x+d1)^4 (x+d2)^2 + c2 (x+d1)^2 (x+d2)^4
/// + c0 (x+d2)^6` for `(c6, c4, c2, c0)`. The system has 7 equations in 4
/// unknowns; the overdetermined part must be consistent.
pub fn solve_even_model<F: Field>(
    f: &UniPoly<F>,
    d1: &F,
    d2: &F,
) -> Result<(F, F, F, F), EvenModelError> {
    if d1 == d2 {
        return Err(EvenModelError::Inconsistent);
    }
    let sample = d1.clone();
    let a = UniPoly::from_coeffs(vec![d1.clone(), sample.one()]); // x + d1
    let b = UniPoly::from_coeffs(vec![d2.clone(), sample.one()]); // x + d2
    let basis = [
        a.pow(6),
        a.pow(4).mul(&b.pow(2)),
        a.pow(2).mul(&b.pow(4)),
        b.pow(6),
    ];
    // 7 x 4 coefficient matrix, rows indexed by the power of x.
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(7);
    let mut rhs: Vec<F> = Vec::with_capacity(7);
    for i in 0..7 {
        rows.push(
            basis
                .iter()
                .map(|p| p.coeff_or_zero(i, &sample))
                .collect(),
        );
        rhs.push(f.coeff_or_zero(i, &sample));
    }
    let sol = solve_linear(rows, rhs).ok_or(EvenModelError::Inconsistent)?;
    let [c6, c4, c2, c0] = match <[F; 4]>::try_from(sol) {
        Ok(v) => v,
        Err(_) => return Err(EvenModelError::Inconsistent),
    };
    // Re-substitute: the postcondition is the identity itself.
    let recon = basis[0]
        .scale(&c6)
        .add(&basis[1].scale(&c4))
        .add(&basis[2].scale(&c2))
        .add(&basis[3].scale(&c0));
    if &recon != f {
        return Err(EvenModelError::Inconsistent);
    }
    Ok((c6, c4, c2, c0))
}

/// Exact Gaussian elimination for an m x n system (m >= n). Returns `None`
/// when the system is inconsistent or rank-deficient.
pub fn solve_linear<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut pivot_rows = Vec::with_capacity(n);
    let mut row = 0usize;
    for col in 0..n {
        let piv = (row..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, piv);
        b.swap(row, piv);
        let inv = a[row][col].inv().ok()?;
        for j in col..n {
            a[row][j] = a[row][j].mul(&inv);
        }
        b[row] = b[row].mul(&inv);
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..n {
                    let t = a[row][j].mul(&factor);
                    a[r][j] = a[r][j].sub(&t);
                }
                let t = b[row].mul(&factor);
                b[r] = b[r].sub(&t);
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Remaining rows must be consistent.
    for r in row..m {
        if !b[r].is_zero() {
            return None;
        }
    }
    Some(pivot_rows.iter().map(|&r| b[r].clone()).collect())
}
