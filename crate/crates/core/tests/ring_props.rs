//! Properties of `W_n(F_q)` arithmetic, checked against direct computation.

use std::sync::Arc;

use k3lift::{PadicScalar, RingContext};
use proptest::prelude::*;

const CONTEXTS: &[(u64, u32, usize)] = &[
    (3, 4, 1),
    (3, 3, 1),
    (5, 2, 1),
    (7, 3, 1),
    (3, 2, 2),
    (5, 3, 2),
    (3, 2, 3),
];

fn ctx_of(i: usize) -> Arc<RingContext> {
    let (p, n, m) = CONTEXTS[i];
    RingContext::with_degree(p, n, m).unwrap()
}

fn scalar(ctx: &Arc<RingContext>, raw: &[i64]) -> PadicScalar {
    PadicScalar::from_coeffs(ctx, &raw[..ctx.m()]).unwrap()
}

fn triple() -> impl Strategy<Value = (usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    let c = || prop::collection::vec(-10_000i64..10_000, 3);
    (0..CONTEXTS.len(), c(), c(), c())
}

proptest! {
    #[test]
    fn ring_axioms((i, a, b, c) in triple()) {
        let ctx = ctx_of(i);
        let (a, b, c) = (scalar(&ctx, &a), scalar(&ctx, &b), scalar(&ctx, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &PadicScalar::one(&ctx), a.clone());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn valuations((i, a, b, _c) in triple()) {
        let ctx = ctx_of(i);
        let n = ctx.n();
        let (a, b) = (scalar(&ctx, &a), scalar(&ctx, &b));
        let (va, vb) = (a.valuation_or_n(), b.valuation_or_n());
        prop_assert_eq!((&a * &b).valuation_or_n(), (va + vb).min(n));
        prop_assert!((&a + &b).valuation_or_n() >= va.min(vb));
        if va != vb {
            prop_assert_eq!((&a + &b).valuation_or_n(), va.min(vb));
        }
        prop_assert_eq!(a.is_unit(), va == 0);
        if va < n {
            let u = a.div_p_power(va).unwrap();
            prop_assert!(u.is_unit());
            prop_assert_eq!(u.mul_p_power(va), a);
        }
    }

    #[test]
    fn teichmuller_is_multiplicative_section((i, a, b, _c) in triple()) {
        let ctx = ctx_of(i);
        let q = ctx.residue_size().unwrap();
        let (a, b) = (scalar(&ctx, &a), scalar(&ctx, &b));
        let (ta, tb) = (a.teichmuller(), b.teichmuller());
        prop_assert_eq!(ta.pow(q), ta.clone());
        prop_assert_eq!(ta.residue(), a.residue());
        prop_assert_eq!((&a * &b).teichmuller(), &ta * &tb);
    }

    #[test]
    fn frobenius_is_a_ring_automorphism((i, a, b, _c) in triple()) {
        let ctx = ctx_of(i);
        let (a, b) = (scalar(&ctx, &a), scalar(&ctx, &b));
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        prop_assert_eq!(a.frobenius().residue(), a.residue().pow(ctx.p() as u128));
        let mut f = a.clone();
        for _ in 0..ctx.m() {
            f = f.frobenius();
        }
        prop_assert_eq!(f, a.clone());
        prop_assert_eq!(a.teichmuller().frobenius(), a.teichmuller().pow(ctx.p() as u128));
    }
}

fn all_elements(ctx: &Arc<RingContext>) -> Vec<PadicScalar> {
    let pn = ctx.modulus_integer() as i64;
    let mut out = vec![vec![]];
    for _ in 0..ctx.m() {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..pn).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.iter().map(|c| PadicScalar::from_coeffs(ctx, c).unwrap()).collect()
}

#[test]
fn inverses_exhaustively() {
    for &(p, n, m) in &[(3, 4, 1), (3, 3, 1), (5, 2, 1), (7, 2, 1), (3, 2, 2), (3, 1, 3)] {
        let ctx = RingContext::with_degree(p, n, m).unwrap();
        let elements = all_elements(&ctx);
        let units = elements.iter().filter(|x| x.is_unit()).count() as u128;
        let q = ctx.residue_size().unwrap();
        assert_eq!(units, (q - 1) * q.pow(n - 1), "unit count for {p},{n},{m}");
        for x in &elements {
            match x.inv() {
                Ok(y) => {
                    assert!(x.is_unit());
                    assert!((x * &y).is_one());
                    // uniqueness of the inverse
                    let others = elements.iter().filter(|z| (x * *z).is_one()).count();
                    assert_eq!(others, 1);
                }
                Err(_) => assert!(!x.is_unit() && elements.iter().all(|z| !(x * z).is_one())),
            }
        }
    }
}

#[test]
fn teichmuller_lifts_are_roots_of_unity() {
    let ctx = RingContext::with_degree(3, 3, 2).unwrap();
    let q = ctx.residue_size().unwrap();
    let lifts: std::collections::BTreeSet<Vec<u64>> = all_elements(&ctx)
        .iter()
        .filter(|x| x.is_unit())
        .map(|x| x.teichmuller().coeffs().to_vec())
        .collect();
    assert_eq!(lifts.len() as u128, q - 1);
    let roots = k3lift::nth_roots_of_unity(&ctx, (q - 1) as u64).unwrap();
    let as_set: std::collections::BTreeSet<Vec<u64>> = roots.iter().map(|z| z.coeffs().to_vec()).collect();
    assert_eq!(lifts, as_set);
}

#[test]
fn even_prime_is_rejected() {
    assert!(RingContext::with_degree(2, 3, 1).is_err());
    assert!(RingContext::with_degree(9, 2, 1).is_err());
}
