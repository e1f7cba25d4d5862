//! The arithmetic gates: totients, tameness thresholds, the uniqueness
//! orders and the scan of `phi(p + 1)`.

use k3lift::arith::{euler_phi, phi_rank_check, remark38_scan, sigma_check, sigma_table, surface_thresholds};

fn main() {
    println!("phi(66) = {}", euler_phi(66));
    for p in [11, 13, 19, 23] {
        let t = surface_thresholds(p);
        println!(
            "p = {p}: all automorphisms tame {}, finite height weakly tame {}",
            t.all_automorphisms_tame, t.all_finite_height_weakly_tame
        );
    }
    for e in sigma_table() {
        print!("{}:{} ", e.order, e.phi);
    }
    println!();
    println!("{:?}", sigma_check(66, 11));
    println!("transcendental rank 20 with order 66: {:?}", phi_rank_check(20, 66));
    let scan = remark38_scan(1000);
    let last_small = scan.rows.iter().rev().find(|r| !r.exceeds_21).unwrap();
    println!(
        "largest p with phi(p+1) <= 21: {} (phi = {}); holds above 60: {}",
        last_small.p, last_small.phi_p_plus_1, scan.holds_above_60
    );
}
