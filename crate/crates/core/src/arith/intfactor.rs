//! Integer factorization helpers (Miller–Rabin, Pollard rho, squarefree
//! part) for normalizing quadratic-field radicands.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Deterministic Miller–Rabin for n < 3.3e24 via the standard witness set;
/// probabilistically correct far beyond that.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let pb = BigUint::from(p);
        if *n == pb {
            return true;
        }
        if n.is_multiple_of(&pb) {
            return false;
        }
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // n is odd, composite and not a prime power of a tiny prime here.
    let one = BigUint::one();
    for c in 1u64.. {
        let cb = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cb) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && !d.is_zero() && d != *n {
            return d;
        }
    }
    unreachable!()
}

/// Full factorization of a positive integer as (prime, exponent) pairs.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut stack = vec![n.clone()];
    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        for (q, e) in out.iter_mut() {
            if *q == p {
                *e += 1;
                return;
            }
        }
        out.push((p, 1));
    };
    while let Some(mut m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        // trial division first; most radicand inputs are smooth-ish
        for p in 2u64..10_000 {
            let pb = BigUint::from(p);
            if &pb * &pb > m {
                break;
            }
            while m.is_multiple_of(&pb) {
                m /= &pb;
                push(pb.clone(), &mut out);
            }
        }
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// Squarefree part, preserving sign: n = squarefree_part(n) * square.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let (sign, mag) = (n.sign(), n.magnitude().clone());
    let mut sf = BigUint::one();
    for (p, e) in factor(&mag) {
        if e % 2 == 1 {
            sf *= p;
        }
    }
    let out = BigInt::from(sf);
    if sign == num_bigint::Sign::Minus {
        -out
    } else {
        out
    }
}

/// Squarefree part of a rational `r`: the unique squarefree integer D with
/// `r = D * t^2` for rational t. Also returns t.
pub fn rational_squarefree_part(r: &crate::arith::Rat) -> (BigInt, crate::arith::Rat) {
    use crate::arith::Rat;
    if r.numer().is_zero() {
        return (BigInt::zero(), Rat::one());
    }
    let m = r.numer() * r.denom();
    let d = squarefree_part(&m);
    // r / d is a square of a rational; take its exact square root.
    let q = r / Rat::from_integer(d.clone());
    let t = Rat::new(q.numer().sqrt(), q.denom().sqrt());
    debug_assert_eq!(&(&t * &t) * Rat::from_integer(d.clone()), *r);
    (d, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 13, 19, 37, 97, 7919];
        for p in primes {
            assert!(is_prime(&BigUint::from(p)), "{p}");
        }
        for c in [1u64, 4, 15, 91, 7917] {
            assert!(!is_prime(&BigUint::from(c)), "{c}");
        }
    }

    #[test]
    fn factor_semiprime() {
        let n = BigUint::from(10_403u64); // 101 * 103
        assert_eq!(
            factor(&n),
            vec![(BigUint::from(101u32), 1), (BigUint::from(103u32), 1)]
        );
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(12)), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(-4)), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(1)), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(-3)), BigInt::from(-3));
    }

    #[test]
    fn rational_radicand() {
        // -7/4 = -7 * (1/2)^2
        let (d, t) = rational_squarefree_part(&rat(-7, 4));
        assert_eq!(d, BigInt::from(-7));
        assert_eq!(t, rat(1, 2));
    }
}
