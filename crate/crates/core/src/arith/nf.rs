//! The totally real sextic field K = Q(a), a = zeta_13 + zeta_13^-1, with
//! exact arithmetic on the power basis 1, a, ..., a^5 and square-root
//! extraction by numeric-candidate reconstruction plus exact verification.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::bigfloat::{solve_dyadic, Dyadic};
use crate::arith::finite::{FiniteField, FqElem};
use crate::arith::{factor, rat_int, ArithError, Field, Fp, Rat};
use crate::poly::UniPoly;

pub const K_DEGREE: usize = 6;

/// Minimal polynomial of a: x^6 - x^5 - 5x^4 + 4x^3 + 6x^2 - 3x - 1,
/// constant term first.
pub const K_MINPOLY: [i64; 7] = [-1, -3, 6, 4, -5, -1, 1];

const DEFAULT_PRECISION: u32 = 256;
const MAX_PRECISION: u32 = 4096;

static EMBED_PRECISION: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION);

/// Starting precision (bits) for real-embedding computations. Candidates are
/// always verified exactly, so this only affects how quickly reconstruction
/// succeeds; it doubles internally up to 4096 bits.
pub fn set_embedding_precision(bits: u32) {
    EMBED_PRECISION.store(bits.clamp(64, MAX_PRECISION), Ordering::Relaxed);
}

pub fn embedding_precision() -> u32 {
    EMBED_PRECISION.load(Ordering::Relaxed)
}

pub struct KField {
    minpoly: UniPoly<Rat>,
    /// Reductions of a^6 .. a^10 on the power basis.
    power_reductions: Vec<[Rat; 6]>,
    /// Isolating intervals for the 6 real roots, refined on demand and
    /// cached by precision. Endpoints are exact (dyadic) rationals and the
    /// minimal polynomial changes sign across each interval.
    root_cache: Mutex<Vec<(u32, Vec<(Rat, Rat)>)>>,
}

static KFIELD: LazyLock<KField> = LazyLock::new(KField::build);

pub fn kfield() -> &'static KField {
    &KFIELD
}

impl KField {
    fn build() -> KField {
        let zero = rat_int(0);
        let minpoly = UniPoly::from_i64(&zero, &K_MINPOLY);
        // Irreducibility: no rational root (candidates are +-1 since the
        // constant term and leading coefficient are units), and the
        // reduction mod 7 is irreducible.
        for cand in [rat_int(1), -rat_int(1)] {
            assert!(
                !Zero::is_zero(&minpoly.evaluate(&cand)),
                "minimal polynomial has a rational root"
            );
        }
        let f7 = factor::factor_mod_p(&minpoly, 7, 0).expect("7-integral");
        assert!(
            f7.len() == 1 && f7[0].1 == 1 && f7[0].0.deg() == Some(6),
            "minimal polynomial must be irreducible mod 7"
        );

        let mut power_reductions: Vec<[Rat; 6]> = Vec::with_capacity(5);
        // a^6 = -(m_0 + m_1 a + ... + m_5 a^5)
        let a6: [Rat; 6] = std::array::from_fn(|i| -Rat::from_integer(BigInt::from(K_MINPOLY[i])));
        power_reductions.push(a6);
        for _ in 1..5 {
            let prev = power_reductions.last().unwrap().clone();
            // multiply by a: shift, then fold the a^6 term back in
            let mut next: [Rat; 6] = std::array::from_fn(|_| rat_int(0));
            for i in 0..5 {
                next[i + 1] = prev[i].clone();
            }
            let carry = prev[5].clone();
            for i in 0..6 {
                next[i] = &next[i] + &carry * &power_reductions[0][i];
            }
            power_reductions.push(next);
        }

        let roots = isolate_roots(&minpoly);
        assert_eq!(roots.len(), 6, "K must be totally real");
        KField {
            minpoly,
            power_reductions,
            root_cache: Mutex::new(vec![(16, roots)]),
        }
    }

    pub fn minpoly(&self) -> &UniPoly<Rat> {
        &self.minpoly
    }

    /// Root intervals at width <= 2^-prec, sorted ascending.
    pub fn root_intervals(&self, prec: u32) -> Vec<(Rat, Rat)> {
        let mut cache = self.root_cache.lock().unwrap();
        let best = cache
            .iter()
            .filter(|(p, _)| *p >= prec)
            .min_by_key(|(p, _)| *p);
        if let Some((_, roots)) = best {
            return roots.clone();
        }
        let (_, coarse) = cache.iter().max_by_key(|(p, _)| *p).unwrap().clone();
        let refined: Vec<(Rat, Rat)> = coarse
            .iter()
            .map(|iv| refine_root(&self.minpoly, iv.clone(), prec))
            .collect();
        cache.push((prec, refined.clone()));
        refined
    }

    /// Dyadic midpoints of the root intervals.
    pub fn roots_dyadic(&self, prec: u32) -> Vec<Dyadic> {
        self.root_intervals(prec + 2)
            .iter()
            .map(|(lo, hi)| {
                let two = Rat::from_integer(BigInt::from(2));
                Dyadic::from_rat(&((lo + hi) / two), prec)
            })
            .collect()
    }
}

fn isolate_roots(minpoly: &UniPoly<Rat>) -> Vec<(Rat, Rat)> {
    // All conjugates of a are 2cos(2 pi k / 13), inside (-2, 2).
    let step = Rat::new(BigInt::from(1), BigInt::from(16));
    let mut roots = Vec::new();
    let mut x = Rat::from_integer(BigInt::from(-2));
    let end = Rat::from_integer(BigInt::from(2));
    let mut fx = minpoly.evaluate(&x);
    while x < end {
        let x2 = &x + &step;
        let fx2 = minpoly.evaluate(&x2);
        assert!(!Zero::is_zero(&fx2), "grid point is a root; minpoly not irreducible");
        if fx.is_negative() != fx2.is_negative() {
            roots.push((x.clone(), x2.clone()));
        }
        x = x2;
        fx = fx2;
    }
    roots
}

fn refine_root(minpoly: &UniPoly<Rat>, (mut lo, mut hi): (Rat, Rat), prec: u32) -> (Rat, Rat) {
    let two = Rat::from_integer(BigInt::from(2));
    let target = Rat::new(BigInt::one(), BigInt::one() << prec);
    let lo_neg = minpoly.evaluate(&lo).is_negative();
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let fm = minpoly.evaluate(&mid);
        assert!(!Zero::is_zero(&fm), "dyadic midpoint is a root");
        if fm.is_negative() == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Element of K on the power basis: c0 + c1 a + ... + c5 a^5.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NFElement {
    pub coeffs: [Rat; 6],
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({self})")
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*a")?,
                _ => write!(f, "({c})*a^{i}")?,
            }
        }
        Ok(())
    }
}

impl NFElement {
    pub fn from_coeffs(coeffs: [Rat; 6]) -> Self {
        NFElement { coeffs }
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut coeffs: [Rat; 6] = std::array::from_fn(|_| rat_int(0));
        coeffs[0] = r;
        NFElement { coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        NFElement::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// The generator a.
    pub fn gen() -> Self {
        let mut coeffs: [Rat; 6] = std::array::from_fn(|_| rat_int(0));
        coeffs[1] = rat_int(1);
        NFElement { coeffs }
    }

    /// `(n5 a^5 + ... + n1 a + n0) / den` from integer data, highest power
    /// first in the display convention of the source data, but this takes
    /// constant-first like everything else in the crate.
    pub fn from_int_coeffs(nums: [i64; 6], den: i64) -> Self {
        NFElement {
            coeffs: std::array::from_fn(|i| {
                Rat::new(BigInt::from(nums[i]), BigInt::from(den))
            }),
        }
    }

    pub fn as_poly(&self) -> UniPoly<Rat> {
        UniPoly::from_coeffs(self.coeffs.to_vec())
    }

    pub fn from_poly_reduced(p: &UniPoly<Rat>) -> Self {
        let r = p.rem(kfield().minpoly()).expect("nonzero minpoly");
        let mut coeffs: [Rat; 6] = std::array::from_fn(|_| rat_int(0));
        for (i, c) in r.coeffs().iter().enumerate() {
            coeffs[i] = c.clone();
        }
        NFElement { coeffs }
    }

    /// Rational part, when the element lies in Q.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| Zero::is_zero(c)) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Numeric value under the i-th real embedding (roots sorted ascending).
    pub fn embed_dyadic(&self, root: &Dyadic) -> Dyadic {
        let prec = root.prec;
        let mut acc = Dyadic::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(root).add(&Dyadic::from_rat(c, prec));
        }
        acc
    }

    /// Exact enclosing interval of the i-th embedding, by interval Horner
    /// over the exact root interval. Sound: the true value lies within.
    pub fn embed_interval(&self, root_iv: &(Rat, Rat)) -> (Rat, Rat) {
        let (mut lo, mut hi) = (rat_int(0), rat_int(0));
        for c in self.coeffs.iter().rev() {
            // [lo,hi] * [rlo,rhi]
            let candidates = [
                &lo * &root_iv.0,
                &lo * &root_iv.1,
                &hi * &root_iv.0,
                &hi * &root_iv.1,
            ];
            let nlo = candidates.iter().min().unwrap().clone();
            let nhi = candidates.iter().max().unwrap().clone();
            lo = nlo + c;
            hi = nhi + c;
        }
        (lo, hi)
    }

    /// Exact signs of all six embeddings (+1 / -1), refining until decisive.
    pub fn embedding_signs(&self) -> Result<[i8; 6], ArithError> {
        if self.is_zero() {
            return Err(ArithError::Other("sign of zero".into()));
        }
        let mut prec = 32u32;
        loop {
            let ivs = kfield().root_intervals(prec);
            let mut signs = [0i8; 6];
            let mut decisive = true;
            for (i, iv) in ivs.iter().enumerate() {
                let (lo, hi) = self.embed_interval(iv);
                if lo.is_positive() {
                    signs[i] = 1;
                } else if hi.is_negative() {
                    signs[i] = -1;
                } else {
                    decisive = false;
                    break;
                }
            }
            if decisive {
                return Ok(signs);
            }
            prec *= 2;
            if prec > MAX_PRECISION * 4 {
                return Err(ArithError::PrecisionExhausted { bits: prec });
            }
        }
    }
}

impl Field for NFElement {
    fn zero(&self) -> Self {
        NFElement::from_int(0)
    }
    fn one(&self) -> Self {
        NFElement::from_int(1)
    }
    fn from_i64(&self, n: i64) -> Self {
        NFElement::from_int(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        NFElement {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]),
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        NFElement {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut conv: Vec<Rat> = vec![rat_int(0); 11];
        for i in 0..6 {
            if Zero::is_zero(&self.coeffs[i]) {
                continue;
            }
            for j in 0..6 {
                if Zero::is_zero(&rhs.coeffs[j]) {
                    continue;
                }
                conv[i + j] = &conv[i + j] + &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        let red = &kfield().power_reductions;
        let mut out: [Rat; 6] = std::array::from_fn(|i| conv[i].clone());
        for k in 6..11 {
            if Zero::is_zero(&conv[k]) {
                continue;
            }
            for i in 0..6 {
                out[i] = &out[i] + &conv[k] * &red[k - 6][i];
            }
        }
        NFElement { coeffs: out }
    }
    fn neg(&self) -> Self {
        NFElement {
            coeffs: std::array::from_fn(|i| -self.coeffs[i].clone()),
        }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().xgcd(kfield().minpoly())?;
        debug_assert_eq!(g.deg(), Some(0), "minpoly is irreducible");
        Ok(NFElement::from_poly_reduced(&s))
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| Zero::is_zero(c))
    }

    fn sqrt(&self) -> Result<Option<Self>, ArithError> {
        sqrt_in_k(self)
    }
}

/// Exact square root in K.
///
/// Strategy: (1) sound disproofs — a negative real embedding, or a residue
/// field of K in which the reduction is a quadratic non-residue; (2) a
/// numeric candidate reconstructed from the six real embeddings with
/// bounded-denominator rounding, then verified by exact squaring. Doubling
/// precision up to the maximum; inconclusive outcomes are an error, never a
/// "no".
pub fn sqrt_in_k(s: &NFElement) -> Result<Option<NFElement>, ArithError> {
    if s.is_zero() {
        return Ok(Some(s.clone()));
    }
    if let Some(r) = s.as_rat() {
        return Ok(r.sqrt()?.map(NFElement::from_rat));
    }
    // (1a) negative embedding => not a square in a totally real field
    let signs = s.embedding_signs()?;
    if signs.iter().any(|&sg| sg < 0) {
        return Ok(None);
    }
    // (1b) quadratic non-residue in some residue field
    if residue_nonsquare_disproof(s)? {
        return Ok(None);
    }
    // (2) reconstruct
    let mut prec = embedding_precision();
    loop {
        if let Some(t) = try_reconstruct_sqrt(s, prec) {
            return Ok(Some(t));
        }
        if prec >= MAX_PRECISION {
            return Err(ArithError::PrecisionExhausted { bits: prec });
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

const DISPROOF_PRIMES: [u64; 14] = [3, 5, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn residue_nonsquare_disproof(s: &NFElement) -> Result<bool, ArithError> {
    for p in DISPROOF_PRIMES {
        let factors = match factor::factor_mod_p(kfield().minpoly(), p, 0) {
            Ok(f) => f,
            Err(_) => continue,
        };
        for (modulus, mult) in factors {
            if mult > 1 {
                continue;
            }
            let field = match FiniteField::new(p, modulus) {
                Ok(f) => f,
                Err(_) => continue,
            };
            let red = match residue_reduce(s, &field) {
                Ok(r) => r,
                Err(_) => break, // not p-integral; skip this prime entirely
            };
            if red.is_zero() {
                continue;
            }
            if !red.is_square() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn try_reconstruct_sqrt(s: &NFElement, prec: u32) -> Option<NFElement> {
    let roots = kfield().roots_dyadic(prec);
    let values: Vec<Dyadic> = roots.iter().map(|r| s.embed_dyadic(r)).collect();
    // All embeddings are numerically nonnegative by the earlier sign check;
    // clamp tiny negatives caused by truncation.
    let sqrts: Vec<Dyadic> = values
        .iter()
        .map(|v| {
            if v.is_negative() {
                Dyadic::zero(prec)
            } else {
                v.sqrt()
            }
        })
        .collect();
    let vander: Vec<Vec<Dyadic>> = roots
        .iter()
        .map(|r| {
            let mut row = Vec::with_capacity(6);
            let mut p = Dyadic::from_int(1, prec);
            for _ in 0..6 {
                row.push(p.clone());
                p = p.mul(r);
            }
            row
        })
        .collect();
    let max_den = BigInt::one() << (prec / 3);
    // The signs of the conjugate square roots are unknown; try all patterns
    // up to a global sign.
    for mask in 0u32..32 {
        let rhs: Vec<Dyadic> = sqrts
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if i > 0 && (mask >> (i - 1)) & 1 == 1 {
                    t.neg()
                } else {
                    t.clone()
                }
            })
            .collect();
        let coords = solve_dyadic(vander.clone(), rhs);
        let candidate = NFElement {
            coeffs: std::array::from_fn(|i| coords[i].to_bounded_rational(&max_den)),
        };
        if candidate.mul(&candidate) == *s {
            return Some(candidate);
        }
    }
    None
}

/// Reduce x modulo the prime of K given by `field` (whose modulus must
/// divide the minimal polynomial mod p). Ring-homomorphic on p-integral
/// elements.
pub fn residue_reduce(x: &NFElement, field: &Arc<FiniteField>) -> Result<FqElem, ArithError> {
    let p = field.p;
    debug_assert!(
        factor::reduce_poly_mod_p(kfield().minpoly(), p)
            .and_then(|mp| mp.rem(&field.modulus).map_err(Into::into))
            .map(|r| r.is_zero())
            .unwrap_or(false),
        "modulus must divide the minimal polynomial mod p"
    );
    let reduced = factor::reduce_poly_mod_p(&x.as_poly(), p)?;
    let t = field.gen();
    Ok(reduced.evaluate_mapped(&t, |c: &Fp| field.from_i64(c.v as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn generator_satisfies_minpoly() {
        let a = NFElement::gen();
        let val = kfield().minpoly().evaluate_mapped(&a, |c| {
            NFElement::from_rat(c.clone())
        });
        assert!(val.is_zero());
    }

    #[test]
    fn inverse_of_generator_matches_closed_form() {
        // a * (a^5 - a^4 - 5a^3 + 4a^2 + 6a - 3) = 1
        let a = NFElement::gen();
        let expected = NFElement::from_int_coeffs([-3, 6, 4, -5, -1, 1], 1);
        assert_eq!(a.inv().unwrap(), expected);
        assert!(a.mul(&expected).is_one());
    }

    #[test]
    fn inverse_of_zero_errors() {
        assert_eq!(
            NFElement::from_int(0).inv(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn field_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let rand_el = |rng: &mut rand_chacha::ChaCha8Rng| NFElement {
            coeffs: std::array::from_fn(|_| {
                Rat::new(
                    BigInt::from(rng.gen_range(-9i64..10)),
                    BigInt::from(rng.gen_range(1i64..5)),
                )
            }),
        };
        for _ in 0..25 {
            let x = rand_el(&mut rng);
            let y = rand_el(&mut rng);
            let z = rand_el(&mut rng);
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn six_real_roots_isolated() {
        let ivs = kfield().root_intervals(64);
        assert_eq!(ivs.len(), 6);
        for w in ivs.windows(2) {
            assert!(w[0].1 <= w[1].0, "intervals must be sorted and disjoint");
        }
    }

    #[test]
    fn sqrt_of_rational_square_in_k() {
        let four = NFElement::from_int(4);
        assert_eq!(four.sqrt().unwrap(), Some(NFElement::from_int(2)));
    }

    #[test]
    fn sqrt_of_square_reconstructs() {
        let a = NFElement::gen();
        let x = a.mul(&a).add(&a).sub(&NFElement::from_int(3)); // a^2 + a - 3
        let sq = x.mul(&x);
        let t = sq.sqrt().unwrap().expect("is a square");
        assert_eq!(t.mul(&t), sq);
    }

    #[test]
    fn sqrt_of_generator_is_none_via_negative_embedding() {
        // a = 2cos(2 pi k/13) has negative conjugates
        let a = NFElement::gen();
        assert_eq!(a.sqrt().unwrap(), None);
    }

    #[test]
    fn residue_reduce_is_homomorphic() {
        let factors = factor::factor_mod_p(kfield().minpoly(), 3, 0).unwrap();
        assert_eq!(factors.len(), 2);
        let field = FiniteField::new(3, factors[0].0.clone()).unwrap();
        assert_eq!(field.degree(), 3);
        let a = NFElement::gen();
        let x = NFElement::from_int_coeffs([1, 2, 0, 1, 0, 0], 1);
        let r = |e: &NFElement| residue_reduce(e, &field).unwrap();
        assert_eq!(r(&a.mul(&x)), r(&a).mul(&r(&x)));
        assert_eq!(r(&a.add(&x)), r(&a).add(&r(&x)));
        assert!(r(&NFElement::from_int(1)).is_one());
        // reduce(inv(a)) is the inverse of reduce(a) in F_27
        assert_eq!(r(&a.inv().unwrap()), r(&a).inv().unwrap());
    }

    #[test]
    fn residue_reduce_rejects_non_integral() {
        let factors = factor::factor_mod_p(kfield().minpoly(), 3, 0).unwrap();
        let field = FiniteField::new(3, factors[0].0.clone()).unwrap();
        let x = NFElement::from_rat(crate::arith::rat(1, 3));
        assert!(matches!(
            residue_reduce(&x, &field),
            Err(ArithError::NotPIntegral { p: 3 })
        ));
    }

    #[test]
    fn embedding_signs_of_constants() {
        assert_eq!(NFElement::from_int(2).embedding_signs().unwrap(), [1; 6]);
        assert_eq!(
            NFElement::from_int(-2).embedding_signs().unwrap(),
            [-1; 6]
        );
        let _ = rat_int(0);
    }
}
