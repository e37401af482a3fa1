use std::sync::Arc;

use cyclomock_core::embed::embed_complex;
use cyclomock_core::field::{make_context, CycloContext, CycloElement, Rational};
use cyclomock_core::poly::gcd;
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDERS: [usize; 8] = [1, 3, 5, 7, 9, 15, 21, 35];

fn element(ctx: &Arc<CycloContext>, coeffs: &[(i64, i64)]) -> CycloElement {
    let c: Vec<Rational> = coeffs
        .iter()
        .take(ctx.order())
        .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
        .collect();
    ctx.from_coeffs(&c)
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..=20, 1i64..=6), 0..40)
}

fn order() -> impl Strategy<Value = usize> {
    prop::sample::select(ORDERS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(n in order(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let ctx = make_context(n).unwrap();
        let (a, b, c) = (element(&ctx, &a), element(&ctx, &b), element(&ctx, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(n in order(), a in coeffs()) {
        let ctx = make_context(n).unwrap();
        let a = element(&ctx, &a);
        if a.is_zero() {
            prop_assert!(a.inverse().is_err());
        } else {
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(inv.inverse().unwrap(), a);
        }
    }

    #[test]
    fn conjugation_is_a_ring_map(n in order(), a in coeffs(), b in coeffs(), k in 1i64..200) {
        let ctx = make_context(n).unwrap();
        let (a, b) = (element(&ctx, &a), element(&ctx, &b));
        if gcd(k as usize, n) == 1 {
            let s = |x: &CycloElement| x.conjugate(k).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
            prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        } else {
            prop_assert!(a.conjugate(k).is_err());
        }
    }

    #[test]
    fn trace_is_additive_and_rational(n in order(), a in coeffs(), b in coeffs()) {
        let ctx = make_context(n).unwrap();
        let (a, b) = (element(&ctx, &a), element(&ctx, &b));
        prop_assert_eq!((&a + &b).trace().unwrap(), a.trace().unwrap() + b.trace().unwrap());
        let d = Rational::from_integer(BigInt::from(ctx.degree() as i64));
        prop_assert_eq!(ctx.one().trace().unwrap(), d);
    }

    #[test]
    fn abs_square_embeds_to_squared_modulus(n in order(), a in coeffs()) {
        let ctx = make_context(n).unwrap();
        let a = element(&ctx, &a);
        let z = embed_complex(&a, 15);
        let w = embed_complex(&a.abs_square(), 15);
        prop_assert!((w.re - z.norm_sqr()).abs() <= 1e-9 * (1.0 + w.re.abs()));
        prop_assert!(w.im.abs() <= 1e-9 * (1.0 + w.re.abs()));
    }

    #[test]
    fn embedding_is_a_ring_map(n in order(), a in coeffs(), b in coeffs()) {
        let ctx = make_context(n).unwrap();
        let (a, b) = (element(&ctx, &a), element(&ctx, &b));
        let (za, zb) = (embed_complex(&a, 15), embed_complex(&b, 15));
        let zab = embed_complex(&(&a * &b), 15);
        prop_assert!((zab - za * zb).norm() <= 1e-9 * (1.0 + zab.norm()));
    }

    #[test]
    fn lift_is_a_ring_map(a in coeffs(), b in coeffs()) {
        let small = make_context(5).unwrap();
        let big = make_context(35).unwrap();
        let (a, b) = (element(&small, &a), element(&small, &b));
        let up = |x: &CycloElement| x.lift_to(&big).unwrap();
        prop_assert_eq!(up(&(&a * &b)), &up(&a) * &up(&b));
        prop_assert_eq!(up(&a).as_signed_monomial().is_some(), a.as_signed_monomial().is_some());
    }

    #[test]
    fn pow_matches_repeated_product(n in order(), e in -6i64..=6) {
        let ctx = make_context(n).unwrap();
        let x = &ctx.from_int(2) + &ctx.zeta();
        let mut expect = ctx.one();
        for _ in 0..e.abs() {
            expect = &expect * &x;
        }
        if e < 0 {
            expect = expect.inverse().unwrap();
        }
        prop_assert_eq!(x.pow(e).unwrap(), expect);
    }
}

#[test]
fn canonical_form_is_unique() {
    let ctx = make_context(15).unwrap();
    let a = ctx.monomial(1, 9);
    let b = ctx.monomial(1, 24);
    assert_eq!(a, b);
    assert_eq!(a.numerators(), b.numerators());
    let h = ctx.from_coeffs(&[Rational::new(2.into(), 4.into())]);
    assert_eq!(h.denominator(), &BigInt::from(2));
}
