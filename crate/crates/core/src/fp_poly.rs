//! Dense polynomials over the prime field F_p, used only to certify that a
//! residue modulus is irreducible (Rabin's test) and to pick one when the
//! caller does not supply it.

type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn is_zero(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn rem(f: &[u64], g: &[u64], p: u64) -> Poly {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv(g[dg], p);
    let mut r: Poly = f.iter().map(|c| c % p).collect();
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = mulmod(r[dr], lead_inv, p);
        let shift = dr - dg;
        for (j, &gj) in g.iter().enumerate().take(dg + 1) {
            r[shift + j] = (r[shift + j] + p - mulmod(c, gj, p)) % p;
        }
    }
    trim(r)
}

fn mul_mod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Poly {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    rem(&out, f, p)
}

/// x^(p^k) mod f.
fn frobenius_power_of_x(f: &[u64], p: u64, k: usize) -> Poly {
    let mut acc = rem(&[0, 1], f, p);
    for _ in 0..k {
        // acc <- acc^p
        let mut base = acc.clone();
        let mut r = vec![1u64];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod_poly(&r, &base, f, p);
            }
            base = mul_mod_poly(&base, &base, f, p);
            e >>= 1;
        }
        acc = r;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub_x(f: &[u64], p: u64) -> Poly {
    let mut g = f.to_vec();
    if g.len() < 2 {
        g.resize(2, 0);
    }
    g[1] = (g[1] + p - 1) % p;
    trim(g)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test for a monic `f` (coefficients low to high).
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let f: Poly = trim(f.iter().map(|c| c % p).collect());
    let Some(m) = degree(&f) else { return false };
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // x^(p^m) == x mod f
    let full = frobenius_power_of_x(&f, p, m);
    if !is_zero(&sub_x(&full, p)) {
        return false;
    }
    for q in prime_factors(m as u64) {
        let h = frobenius_power_of_x(&f, p, m / q as usize);
        let g = gcd(&f, &sub_x(&h, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `m`, ordering candidates
/// by the base-p integer encoding of their lower coefficients.
pub(crate) fn first_irreducible(p: u64, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut digits = vec![0u64; m];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment base-p counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < m, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibility_cases() {
        assert!(is_irreducible(&[1, 0, 1], 3)); // x^2 + 1 over F_3
        assert!(!is_irreducible(&[1, 0, 1], 5)); // 2^2 = -1 mod 5
        assert!(!is_irreducible(&[0, 0, 1], 7));
        assert!(is_irreducible(&[1, 2, 0, 1], 3)); // x^3 + 2x + 1
        assert!(!is_irreducible(&[1, 1, 0, 1], 3)); // x = 1 is a root
    }

    #[test]
    fn first_irreducible_matches_brute_force_root_count() {
        // For degree 2 and 3, irreducible <=> no root in F_p.
        for &p in &[3u64, 5, 7, 11] {
            for m in 2..=3 {
                let f = first_irreducible(p, m);
                let has_root = (0..p).any(|x| {
                    let mut acc = 0u64;
                    for &c in f.iter().rev() {
                        acc = (acc * x + c) % p;
                    }
                    acc == 0
                });
                assert!(!has_root, "p={p} m={m} f={f:?}");
            }
        }
        assert_eq!(first_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn degree_four_reducible_without_roots_is_rejected() {
        // (x^2 + 1)^2 over F_3 has no roots but is reducible.
        assert!(!is_irreducible(&[1, 0, 2, 0, 1], 3));
    }
}
