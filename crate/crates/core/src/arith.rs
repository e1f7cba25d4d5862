//! Arithmetic gates: Euler's totient, tameness thresholds, the set of
//! orders determining a K3 surface uniquely, and the `phi(p+1) > 21` scan.

use serde::Serialize;

/// The orders `N` for which a purely non-symplectic automorphism of order
/// `N` determines the K3 surface uniquely.
pub const SIGMA: [u64; 11] = [13, 17, 19, 25, 27, 32, 33, 40, 44, 50, 66];

/// Euler's totient by trial division. `euler_phi(0)` is 0.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut m = n;
    let mut phi = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            phi -= phi / d;
        }
        d += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tameness {
    Tame,
    Wild,
}

/// Tame iff p does not divide `order`.
pub fn tameness(p: u64, order: u64) -> Tameness {
    if order.is_multiple_of(p) {
        Tameness::Wild
    } else {
        Tameness::Tame
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceThresholds {
    pub p: u64,
    /// p > 11: every finite-order automorphism of a K3 surface is tame.
    pub all_automorphisms_tame: bool,
    /// p >= 23: every K3 surface of finite height is weakly tame.
    pub all_finite_height_weakly_tame: bool,
    pub rationale: &'static str,
}

/// Threshold facts. A wild automorphism needs `phi(p) = p - 1` to be at most
/// the rank of the lattice it acts on faithfully, which is below 22.
pub fn surface_thresholds(p: u64) -> SurfaceThresholds {
    SurfaceThresholds {
        p,
        all_automorphisms_tame: p > 11,
        all_finite_height_weakly_tame: p >= 23,
        rationale: "an element of order p acts faithfully on a lattice of rank below 22, forcing p - 1 below that rank",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaEntry {
    pub order: u64,
    pub phi: u64,
}

/// The table of [`SIGMA`] with totients.
pub fn sigma_table() -> Vec<SigmaEntry> {
    SIGMA
        .iter()
        .map(|&order| SigmaEntry {
            order,
            phi: euler_phi(order),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaCheck {
    pub order: u64,
    pub p: u64,
    pub member: bool,
    pub phi: u64,
    /// p does not divide 2N.
    pub good_reduction: bool,
    /// Present when the surface with a purely non-symplectic automorphism of
    /// this order is unique and the reduction at p is good.
    pub uniqueness: Option<String>,
    pub note: Option<String>,
}

pub fn sigma_check(order: u64, p: u64) -> SigmaCheck {
    let member = SIGMA.contains(&order);
    let good_reduction = !(2 * order).is_multiple_of(p);
    let uniqueness = (member && good_reduction).then(|| {
        format!(
            "a K3 surface in characteristic {p} with a purely non-symplectic automorphism of order {order} is unique up to isomorphism"
        )
    });
    let note = match (member, good_reduction, order) {
        (true, false, 66) => {
            Some("order 66 uniqueness holds for all p other than 2, 3 by a separate result".to_string())
        }
        (true, false, _) => Some(format!("{p} divides 2N; no uniqueness statement")),
        _ => None,
    };
    SigmaCheck {
        order,
        p,
        member,
        phi: euler_phi(order),
        good_reduction,
        uniqueness,
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    pub phi_p_plus_1: u64,
    pub exceeds_21: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Remark38Scan {
    pub p_max: u64,
    pub rows: Vec<ScanRow>,
    /// Every prime `60 < p <= p_max` has `phi(p+1) > 21`. Checked over the
    /// scanned range only.
    pub holds_above_60: bool,
}

/// `phi(p+1)` for every prime `p <= p_max`.
pub fn remark38_scan(p_max: u64) -> Remark38Scan {
    let rows: Vec<ScanRow> = (2..=p_max)
        .filter(|&p| is_prime(p))
        .map(|p| {
            let phi = euler_phi(p + 1);
            ScanRow {
                p,
                phi_p_plus_1: phi,
                exceeds_21: phi > 21,
            }
        })
        .collect();
    let holds_above_60 = rows.iter().filter(|r| r.p > 60).all(|r| r.exceeds_21);
    Remark38Scan {
        p_max,
        rows,
        holds_above_60,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiRankCheck {
    /// `phi(N)` divides the transcendental rank.
    pub divides: bool,
    /// `phi(N) <= t`.
    pub bounded: bool,
}

/// The transcendental rank is a multiple of `phi(N)`, in particular at
/// least `phi(N)`.
pub fn phi_rank_check(t: u64, order: u64) -> PhiRankCheck {
    let phi = euler_phi(order);
    PhiRankCheck {
        divides: phi != 0 && t.is_multiple_of(phi),
        bounded: phi <= t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_brute(n: u64) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn totients() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(66), 20);
        assert_eq!(euler_phi(62), 30);
        assert_eq!(euler_phi(60), 16);
        for n in 1..500 {
            assert_eq!(euler_phi(n), phi_brute(n), "n = {n}");
        }
    }

    #[test]
    fn tameness_thresholds() {
        assert_eq!(tameness(13, 33), Tameness::Tame);
        assert_eq!(tameness(11, 66), Tameness::Wild);
        assert!(!surface_thresholds(11).all_automorphisms_tame);
        assert!(surface_thresholds(13).all_automorphisms_tame);
        assert!(surface_thresholds(23).all_finite_height_weakly_tame);
        assert!(!surface_thresholds(19).all_finite_height_weakly_tame);
    }

    #[test]
    fn sigma() {
        let c = sigma_check(66, 13);
        assert!(c.member && c.good_reduction && c.uniqueness.is_some());
        let c = sigma_check(66, 11);
        assert!(c.member && !c.good_reduction && c.uniqueness.is_none());
        assert!(c.note.is_some());
        assert!(!sigma_check(14, 5).member);
        assert!(sigma_table().iter().all(|e| e.phi <= 20));
    }

    #[test]
    fn remark38() {
        let scan = remark38_scan(1000);
        assert!(scan.holds_above_60);
        let row = |p| scan.rows.iter().find(|r| r.p == p).unwrap().clone();
        assert_eq!(row(61).phi_p_plus_1, 30);
        assert_eq!(row(59).phi_p_plus_1, 16);
        assert!(!row(59).exceeds_21);
    }

    #[test]
    fn phi_rank() {
        assert!(phi_rank_check(20, 66).divides);
        assert!(phi_rank_check(12, 13).divides);
        let c = phi_rank_check(10, 13);
        assert!(!c.divides && !c.bounded);
    }
}
