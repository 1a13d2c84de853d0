//! Property-based tests of the arithmetic layers: field axioms in the
//! quadratic extension, polynomial ring laws, and exact division.

use modcurve::arith::{rat, Field, Fp, QuadExt, Rat};
use modcurve::poly::UniPoly;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn quad() -> impl Strategy<Value = QuadExt<Rat>> {
    // Q(sqrt(-5))
    (small_rat(), small_rat())
        .prop_map(|(u, v)| QuadExt::new(u, v, rat(-5, 1)).expect("-5 is not a square"))
}

fn poly() -> impl Strategy<Value = UniPoly<Rat>> {
    proptest::collection::vec(small_rat(), 0..6).prop_map(UniPoly::from_coeffs)
}

proptest! {
    #[test]
    fn quadext_mul_distributes_over_add(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn quadext_inverse_cancels(a in quad()) {
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), a.one());
        }
    }

    #[test]
    fn quadext_conjugation_is_multiplicative(a in quad(), b in quad()) {
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }

    #[test]
    fn poly_mul_commutes_and_distributes(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
    }

    #[test]
    fn poly_exact_division_inverts_multiplication(f in poly(), g in poly()) {
        if !g.is_zero() {
            prop_assert_eq!(f.mul(&g).div_exact(&g).unwrap(), f);
        }
    }

    #[test]
    fn poly_evaluation_is_a_ring_map(f in poly(), g in poly(), x in small_rat()) {
        prop_assert_eq!(f.mul(&g).evaluate(&x), f.evaluate(&x).mul(&g.evaluate(&x)));
        prop_assert_eq!(f.add(&g).evaluate(&x), f.evaluate(&x).add(&g.evaluate(&x)));
    }

    #[test]
    fn prime_field_inverse_cancels(v in 1i64..31) {
        let x = Fp::new(31, v);
        prop_assert_eq!(x.mul(&x.inv().unwrap()), x.one());
    }
}
