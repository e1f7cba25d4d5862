//! Totients and the arithmetic gates.

use k3lift::arith::{
    euler_phi, is_prime, phi_rank_check, remark38_scan, sigma_check, sigma_table, tameness, Tameness, SIGMA,
};
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

proptest! {
    #[test]
    fn totient_is_multiplicative(a in 1u64..5_000, b in 1u64..5_000) {
        if gcd(a, b) == 1 {
            prop_assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
        }
        // phi(ab) phi(gcd) = phi(a) phi(b) gcd in general
        let g = gcd(a, b);
        prop_assert_eq!(euler_phi(a * b) * euler_phi(g), euler_phi(a) * euler_phi(b) * g);
    }

    #[test]
    fn phi_divides_rank_whenever_rank_is_a_multiple(order in 1u64..200, k in 1u64..5) {
        let t = euler_phi(order) * k;
        let c = phi_rank_check(t, order);
        prop_assert!(c.divides && c.bounded);
    }
}

#[test]
fn totient_on_prime_powers_up_to_ten_thousand() {
    for p in (2..10_000u64).filter(|&p| is_prime(p)) {
        let mut q = p;
        while q <= 10_000 {
            assert_eq!(euler_phi(q), q - q / p, "phi({q})");
            q *= p;
        }
    }
}

#[test]
fn sigma_orders() {
    assert_eq!(SIGMA.len(), 11);
    let phis: Vec<u64> = sigma_table().iter().map(|e| e.phi).collect();
    assert_eq!(phis, vec![12, 16, 18, 20, 18, 16, 20, 16, 20, 20, 20]);
    for &n in &SIGMA {
        for p in (3..100).filter(|&p| is_prime(p)) {
            let c = sigma_check(n, p);
            assert!(c.member);
            assert_eq!(c.good_reduction, (2 * n) % p != 0);
            assert_eq!(c.uniqueness.is_some(), c.good_reduction);
        }
    }
}

#[test]
fn scan_above_sixty() {
    let scan = remark38_scan(10_000);
    assert!(scan.holds_above_60);
    let small_fail: Vec<u64> = scan.rows.iter().filter(|r| !r.exceeds_21).map(|r| r.p).collect();
    assert_eq!(small_fail.last(), Some(&59));
    assert!(scan.rows.iter().all(|r| r.phi_p_plus_1 == euler_phi(r.p + 1)));
}

#[test]
fn tameness_matches_divisibility() {
    for p in [3u64, 5, 7, 11, 13] {
        for n in 1..100 {
            assert_eq!(tameness(p, n) == Tameness::Wild, n % p == 0);
        }
    }
}
