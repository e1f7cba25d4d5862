//! Arithmetic in the truncated unramified Witt ring `W(F_{p^m}) / p^n`.
//!
//! Elements are polynomials of degree `< m` with coefficients in `Z/p^n`,
//! reduced modulo a fixed monic lift of an irreducible residue polynomial.
//! Every equality in this crate means congruence modulo `p^n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp_poly;

/// Largest allowed `p^n`; products are formed in `u128`.
const MAX_MODULUS: u64 = 1 << 62;

/// The ring `W(F_{p^m}) / p^n` together with the chosen modulus.
#[derive(Debug, Clone)]
pub struct RingContext {
    p: u64,
    n: u32,
    m: usize,
    pn: u64,
    modulus: Vec<u64>,
    /// Image of the generator under Frobenius, as a coefficient vector.
    frob_gen: Vec<u64>,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for RingContext {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u64, n: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

impl RingContext {
    /// Builds a context from an explicit monic modulus `[c_0, ..., c_{m-1}, 1]`.
    pub fn new(p: u64, n: u32, m: usize, modulus: Vec<i64>) -> Result<Arc<Self>> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("p = {p} is not an odd prime")));
        }
        if n == 0 {
            return Err(Error::InvalidContext("precision n must be at least 1".into()));
        }
        if m == 0 {
            return Err(Error::InvalidContext("residue degree m must be at least 1".into()));
        }
        let pn = checked_pow(p, n)
            .filter(|&v| v <= MAX_MODULUS)
            .ok_or_else(|| Error::InvalidContext(format!("p^n = {p}^{n} is too large")))?;
        if modulus.len() != m + 1 {
            return Err(Error::InvalidContext(format!(
                "modulus must have m + 1 = {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        let modulus: Vec<u64> = modulus
            .iter()
            .map(|&c| (c as i128).rem_euclid(pn as i128) as u64)
            .collect();
        if modulus[m] != 1 {
            return Err(Error::InvalidContext("modulus must be monic".into()));
        }
        if !fp_poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidContext(format!(
                "modulus {modulus:?} is not irreducible modulo {p}"
            )));
        }
        let mut ctx = RingContext {
            p,
            n,
            m,
            pn,
            modulus,
            frob_gen: Vec::new(),
        };
        ctx.frob_gen = ctx.compute_frobenius_generator();
        Ok(Arc::new(ctx))
    }

    /// `Z/p^n`, i.e. residue degree one.
    pub fn prime_field(p: u64, n: u32) -> Result<Arc<Self>> {
        Self::new(p, n, 1, vec![0, 1])
    }

    /// Residue degree `m`, using the first irreducible polynomial in
    /// lexicographic order of its base-p encoding.
    pub fn with_degree(p: u64, n: u32, m: usize) -> Result<Arc<Self>> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("p = {p} is not an odd prime")));
        }
        if m == 0 {
            return Err(Error::InvalidContext("residue degree m must be at least 1".into()));
        }
        let f = fp_poly::first_irreducible(p, m);
        Self::new(p, n, m, f.into_iter().map(|c| c as i64).collect())
    }

    /// Smallest residue degree for which the `order`-th roots of unity exist,
    /// i.e. the multiplicative order of p modulo `order`.
    pub fn for_roots_of_unity(p: u64, n: u32, order: u64) -> Result<Arc<Self>> {
        if order == 0 || order.is_multiple_of(p) {
            return Err(Error::NotTame { p, order });
        }
        let mut m = 1usize;
        let mut pm = p % order;
        while pm != 1 % order {
            pm = (pm as u128 * p as u128 % order as u128) as u64;
            m += 1;
        }
        Self::with_degree(p, n, m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `p^n`.
    pub fn modulus_integer(&self) -> u64 {
        self.pn
    }

    /// Monic modulus coefficients, low to high.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Size of the residue field, `p^m`.
    pub fn residue_size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.m {
            acc = acc.checked_mul(self.p as u128)?;
        }
        Some(acc)
    }

    /// Same residue field at a different precision. The modulus keeps its
    /// integer representatives, so raising precision lifts it unchanged.
    pub fn with_precision(&self, n: u32) -> Result<Arc<Self>> {
        Self::new(self.p, n, self.m, self.modulus.iter().map(|&c| c as i64).collect())
    }

    /// The residue field `F_{p^m}` viewed as the precision-one context.
    pub fn residue(&self) -> Arc<Self> {
        self.with_precision(1).expect("residue context of a valid context")
    }

    pub(crate) fn same_tower(&self, other: &RingContext) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus.iter().zip(&other.modulus).all(|(a, b)| {
                let q = self.pn.min(other.pn);
                a % q == b % q
            })
    }

    // ---- raw coefficient arithmetic -------------------------------------

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.pn as i128) as u64
    }

    fn raw_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((x as u128 + y as u128) % self.pn as u128) as u64)
            .collect()
    }

    fn raw_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| ((x as u128 + self.pn as u128 - y as u128) % self.pn as u128) as u64)
            .collect()
    }

    fn raw_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| if x == 0 { 0 } else { self.pn - x }).collect()
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m;
        let q = self.pn as u128;
        if m == 1 {
            return vec![((a[0] as u128 * b[0] as u128) % q) as u64];
        }
        let mut t = vec![0u128; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] = (t[i + j] + x as u128 * y as u128) % q;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            t[k] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] as u128 % q;
                t[k - m + j] = (t[k - m + j] + q - sub) % q;
            }
        }
        t.truncate(m);
        t.into_iter().map(|c| c as u64).collect()
    }

    fn raw_one(&self) -> Vec<u64> {
        let mut v = vec![0; self.m];
        v[0] = 1 % self.pn;
        v
    }

    fn raw_pow(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.raw_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.raw_mul(&base, &base);
            }
        }
        acc
    }

    fn raw_is_unit(&self, a: &[u64]) -> bool {
        a.iter().any(|&c| c % self.p != 0)
    }

    fn raw_inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if !self.raw_is_unit(a) {
            return None;
        }
        let q = self.residue_size().expect("residue field size fits in u128");
        // a^(q-2) inverts a modulo p; Newton doubles the correct digits.
        let mut x = self.raw_pow(a, q - 2);
        let one = self.raw_one();
        let two = self.raw_add(&one, &one);
        for _ in 0..64 {
            let ax = self.raw_mul(a, &x);
            if ax == one {
                return Some(x);
            }
            x = self.raw_mul(&x, &self.raw_sub(&two, &ax));
        }
        unreachable!("Newton inversion failed to converge")
    }

    fn eval_modulus(&self, y: &[u64]) -> (Vec<u64>, Vec<u64>) {
        // Horner for f(y) and f'(y) together.
        let mut f = vec![0; self.m];
        let mut df = vec![0; self.m];
        for &c in self.modulus.iter().rev() {
            df = self.raw_add(&self.raw_mul(&df, y), &f);
            f = self.raw_mul(&f, y);
            f[0] = ((f[0] as u128 + c as u128) % self.pn as u128) as u64;
        }
        (f, df)
    }

    fn compute_frobenius_generator(&self) -> Vec<u64> {
        if self.m == 1 {
            return vec![0];
        }
        let mut gen = vec![0; self.m];
        gen[1] = 1;
        let mut y = self.raw_pow(&gen, self.p as u128);
        for _ in 0..=(self.n + 2) {
            let (f, df) = self.eval_modulus(&y);
            if f.iter().all(|&c| c == 0) {
                return y;
            }
            let inv = self.raw_inv(&df).expect("irreducible residue modulus is separable");
            y = self.raw_sub(&y, &self.raw_mul(&f, &inv));
        }
        let (f, _) = self.eval_modulus(&y);
        debug_assert!(f.iter().all(|&c| c == 0));
        y
    }
}

/// An element of `W(F_{p^m}) / p^n`.
#[derive(Clone)]
pub struct PadicScalar {
    ctx: Arc<RingContext>,
    coeffs: Vec<u64>,
}

impl PartialEq for PadicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx)
    }
}

impl Eq for PadicScalar {}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.m == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl PadicScalar {
    pub fn zero(ctx: &Arc<RingContext>) -> Self {
        PadicScalar {
            ctx: ctx.clone(),
            coeffs: vec![0; ctx.m],
        }
    }

    pub fn one(ctx: &Arc<RingContext>) -> Self {
        PadicScalar {
            ctx: ctx.clone(),
            coeffs: ctx.raw_one(),
        }
    }

    pub fn from_int(ctx: &Arc<RingContext>, v: i64) -> Self {
        Self::from_i128(ctx, v as i128)
    }

    pub fn from_i128(ctx: &Arc<RingContext>, v: i128) -> Self {
        let mut coeffs = vec![0; ctx.m];
        coeffs[0] = ctx.reduce_i128(v);
        PadicScalar {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    /// Polynomial representative `c_0 + c_1 x + ...`; missing high
    /// coefficients are zero, extra ones are rejected.
    pub fn from_coeffs(ctx: &Arc<RingContext>, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() > ctx.m {
            return Err(Error::DimensionMismatch(format!(
                "scalar has {} coefficients but m = {}",
                coeffs.len(),
                ctx.m
            )));
        }
        let mut out = vec![0; ctx.m];
        for (slot, &c) in out.iter_mut().zip(coeffs) {
            *slot = ctx.reduce_i128(c as i128);
        }
        Ok(PadicScalar {
            ctx: ctx.clone(),
            coeffs: out,
        })
    }

    /// The generator `x` of the residue extension (equals 0 when m = 1 and
    /// the default modulus is used).
    pub fn generator(ctx: &Arc<RingContext>) -> Self {
        if ctx.m == 1 {
            return Self::from_i128(ctx, -(ctx.modulus[0] as i128));
        }
        let mut coeffs = vec![0; ctx.m];
        coeffs[1] = 1;
        PadicScalar {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == self.ctx.raw_one()
    }

    pub fn is_unit(&self) -> bool {
        self.ctx.raw_is_unit(&self.coeffs)
    }

    /// The element as a signed integer in `(-p^n/2, p^n/2]` when it lies in
    /// the prime subring, otherwise `None`.
    pub fn to_symmetric_int(&self) -> Option<i128> {
        if self.coeffs[1..].iter().any(|&c| c != 0) {
            return None;
        }
        let c = self.coeffs[0] as i128;
        let q = self.ctx.pn as i128;
        Some(if 2 * c > q { c - q } else { c })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(self.ctx.raw_add(&self.coeffs, &other.coeffs)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(self.ctx.raw_sub(&self.coeffs, &other.coeffs)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_coeffs(self.ctx.raw_mul(&self.coeffs, &other.coeffs)))
    }

    fn with_coeffs(&self, coeffs: Vec<u64>) -> Self {
        PadicScalar {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u128) -> Self {
        self.with_coeffs(self.ctx.raw_pow(&self.coeffs, e))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self * &PadicScalar::from_int(&self.ctx, k)
    }

    /// Multiplicative inverse; fails with [`Error::NonUnit`] when the
    /// element vanishes modulo p.
    pub fn inv(&self) -> Result<Self> {
        self.ctx
            .raw_inv(&self.coeffs)
            .map(|c| self.with_coeffs(c))
            .ok_or(Error::NonUnit)
    }

    /// Largest `e < n` with `p^e | a`, or `None` when `a = 0` at this
    /// precision (valuation at least n).
    pub fn valuation(&self) -> Option<u32> {
        let p = self.ctx.p;
        self.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let mut c = c;
                let mut e = 0;
                while c % p == 0 {
                    c /= p;
                    e += 1;
                }
                e
            })
            .min()
    }

    /// Valuation with `n` standing in for zero.
    pub fn valuation_or_n(&self) -> u32 {
        self.valuation().unwrap_or(self.ctx.n)
    }

    /// Divides the integer representative by `p^k`. Requires valuation at
    /// least `k`; the top `k` digits of the result are not determined by the
    /// input and are returned as zero.
    pub fn div_p_power(&self, k: u32) -> Result<Self> {
        if self.valuation_or_n() < k {
            return Err(Error::NonUnit);
        }
        let pk = checked_pow(self.ctx.p, k).unwrap_or(u64::MAX);
        Ok(self.with_coeffs(self.coeffs.iter().map(|&c| c / pk).collect()))
    }

    /// Multiplies by `p^k`.
    pub fn mul_p_power(&self, k: u32) -> Self {
        if k >= self.ctx.n {
            return PadicScalar::zero(&self.ctx);
        }
        let pk = checked_pow(self.ctx.p, k).expect("below p^n");
        self.mul_int(pk as i64)
    }

    /// Exact quotient `self / d` when `v(d) <= v(self)`; the result is
    /// one valid choice among those differing by the annihilator of `d`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        self.check(d)?;
        let e = d.valuation().ok_or(Error::NonUnit)?;
        if self.valuation_or_n() < e {
            return Err(Error::NonUnit);
        }
        let num = self.div_p_power(e)?;
        let den = d.div_p_power(e)?.inv()?;
        Ok(&num * &den)
    }

    /// Reinterprets the representative in another context of the same
    /// residue field, reducing or keeping coefficients as integers.
    pub fn reduce_to(&self, ctx: &Arc<RingContext>) -> Result<Self> {
        if !self.ctx.same_tower(ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(PadicScalar {
            ctx: ctx.clone(),
            coeffs: self.coeffs.iter().map(|&c| c % ctx.pn).collect(),
        })
    }

    /// Reduction to the residue field.
    pub fn residue(&self) -> Self {
        self.reduce_to(&self.ctx.residue()).expect("residue of same tower")
    }

    /// Ring automorphism lifting `x -> x^p` on the residue field.
    pub fn frobenius(&self) -> Self {
        if self.ctx.m == 1 {
            return self.clone();
        }
        let ctx = &self.ctx;
        let mut acc = vec![0; ctx.m];
        for &c in self.coeffs.iter().rev() {
            acc = ctx.raw_mul(&acc, &ctx.frob_gen);
            acc[0] = ((acc[0] as u128 + c as u128) % ctx.pn as u128) as u64;
        }
        self.with_coeffs(acc)
    }

    /// Teichmüller lift of the residue of `self`: the unique lift `t` with
    /// `t^(p^m) = t`.
    pub fn teichmuller(&self) -> Self {
        let q = self.ctx.residue_size().expect("residue field size fits in u128");
        let mut t = self.clone();
        for _ in 1..self.ctx.n {
            t = t.pow(q);
        }
        t
    }
}

/// Teichmüller lift of a residue-field element given by its coefficients.
pub fn teichmuller(ctx: &Arc<RingContext>, residue: &[i64]) -> Result<PadicScalar> {
    Ok(PadicScalar::from_coeffs(ctx, residue)?.teichmuller())
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
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

/// All `order`-th roots of unity, as Teichmüller lifts, sorted by
/// coefficient vector.
pub fn nth_roots_of_unity(ctx: &Arc<RingContext>, order: u64) -> Result<Vec<PadicScalar>> {
    if order == 0 {
        return Err(Error::InvalidInput("root-of-unity order must be positive".into()));
    }
    let q = ctx
        .residue_size()
        .ok_or_else(|| Error::InvalidContext("residue field too large".into()))?;
    if (q - 1) % order as u128 != 0 {
        return Err(Error::InsufficientResidueField {
            order,
            group_order: q - 1,
        });
    }
    let res = ctx.residue();
    let cofactor = (q - 1) / order as u128;
    let primes = prime_divisors(order);
    let m = ctx.m;
    let p = ctx.p;
    // Enumerate nonzero residue elements until one has exact order `order`
    // after raising to the cofactor.
    let mut digits = vec![0u64; m];
    let generator = loop {
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            if i == m {
                unreachable!("multiplicative group is cyclic");
            }
        }
        let g = PadicScalar {
            ctx: res.clone(),
            coeffs: digits.clone(),
        };
        let h = g.pow(cofactor);
        if primes.iter().all(|&l| !h.pow((order / l) as u128).is_one()) {
            break h;
        }
    };
    let zeta = generator.reduce_to(ctx)?.teichmuller();
    let mut roots = Vec::with_capacity(order as usize);
    let mut cur = PadicScalar::one(ctx);
    for _ in 0..order {
        roots.push(cur.clone());
        cur = &cur * &zeta;
    }
    roots.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    Ok(roots)
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            /// Panics when the operands live in different contexts.
            fn $method(self, rhs: &PadicScalar) -> PadicScalar {
                self.$try(rhs).expect("ring context mismatch")
            }
        }
        impl $trait<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: PadicScalar) -> PadicScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $method(self, rhs: &PadicScalar) -> PadicScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        self.with_coeffs(self.ctx.raw_neg(&self.coeffs))
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(ctx: &Arc<RingContext>, v: i64) -> PadicScalar {
        PadicScalar::from_int(ctx, v)
    }

    /// Extended Euclid, independent of the Newton inversion.
    fn egcd_inverse(a: i64, m: i64) -> Option<i64> {
        let (mut r0, mut r1) = (m, a.rem_euclid(m));
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(m))
    }

    #[test]
    fn multiplication_and_inverse_mod_125() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        assert_eq!(egcd_inverse(2, 125), Some(63));
        assert_eq!(&z(&ctx, 63) * &z(&ctx, 2), z(&ctx, 1));
        assert_eq!(z(&ctx, 2).inv().unwrap(), z(&ctx, 63));
        assert_eq!(z(&ctx, 1).inv().unwrap(), z(&ctx, 1));
        assert_eq!(z(&ctx, 5).inv(), Err(Error::NonUnit));
        assert_eq!(&z(&ctx, 17) + &PadicScalar::zero(&ctx), z(&ctx, 17));
    }

    #[test]
    fn brute_force_inverse_scan() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let found: Vec<i64> = (0..125).filter(|&x| (2 * x) % 125 == 1).collect();
        assert_eq!(found, vec![63]);
        assert_eq!(z(&ctx, 2).inv().unwrap(), z(&ctx, found[0]));
    }

    #[test]
    fn quadratic_extension_by_x2_plus_1() {
        let ctx = RingContext::new(3, 2, 2, vec![1, 0, 1]).unwrap();
        let x = PadicScalar::generator(&ctx);
        assert_eq!(&x * &x, z(&ctx, 8));
        assert_eq!(&x * &x, z(&ctx, -1));
    }

    #[test]
    fn valuations() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        assert_eq!(z(&ctx, 50).valuation(), Some(2));
        assert_eq!(z(&ctx, 1).valuation(), Some(0));
        assert_eq!(z(&ctx, 0).valuation(), None);
        assert_eq!(z(&ctx, 125).valuation(), None);
    }

    #[test]
    fn teichmuller_of_two_mod_49() {
        let ctx = RingContext::prime_field(7, 2).unwrap();
        let cube_roots: Vec<i64> = (0..49).filter(|&x| x * x % 49 * x % 49 == 1).collect();
        assert_eq!(cube_roots, vec![1, 18, 30]);
        let t = teichmuller(&ctx, &[2]).unwrap();
        assert_eq!(t, z(&ctx, 30));
        assert_eq!(teichmuller(&ctx, &[0]).unwrap(), z(&ctx, 0));
        assert_eq!(teichmuller(&ctx, &[1]).unwrap(), z(&ctx, 1));
    }

    #[test]
    fn frobenius_on_quadratic_extension() {
        let ctx = RingContext::new(3, 1, 2, vec![1, 0, 1]).unwrap();
        let x = PadicScalar::generator(&ctx);
        assert_eq!(x.frobenius(), -&x);
        let prime = RingContext::prime_field(5, 3).unwrap();
        assert_eq!(z(&prime, 77).frobenius(), z(&prime, 77));
    }

    #[test]
    fn frobenius_commutes_with_teichmuller() {
        let ctx = RingContext::with_degree(5, 3, 2).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let r = PadicScalar::from_coeffs(&ctx, &[a, b]).unwrap();
                let lhs = r.teichmuller().frobenius();
                let rhs = r.pow(5).teichmuller();
                assert_eq!(lhs, rhs, "r = {r}");
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let ctx = RingContext::prime_field(7, 2).unwrap();
        let roots = nth_roots_of_unity(&ctx, 3).unwrap();
        assert_eq!(roots, vec![z(&ctx, 1), z(&ctx, 18), z(&ctx, 30)]);
        assert_eq!(nth_roots_of_unity(&ctx, 1).unwrap(), vec![z(&ctx, 1)]);
        let ctx5 = RingContext::prime_field(5, 2).unwrap();
        assert!(matches!(
            nth_roots_of_unity(&ctx5, 3),
            Err(Error::InsufficientResidueField { order: 3, .. })
        ));
    }

    #[test]
    fn roots_in_extension_are_distinct_and_exact() {
        let ctx = RingContext::for_roots_of_unity(5, 3, 3).unwrap();
        assert_eq!(ctx.m(), 2);
        let roots = nth_roots_of_unity(&ctx, 3).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(r.pow(3).is_one());
        }
        assert_ne!(roots[0], roots[1]);
        assert_ne!(roots[1], roots[2]);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = RingContext::prime_field(5, 3).unwrap();
        let b = RingContext::prime_field(5, 2).unwrap();
        assert_eq!(z(&a, 1).try_add(&z(&b, 1)), Err(Error::ContextMismatch));
    }

    #[test]
    fn invalid_contexts() {
        assert!(RingContext::prime_field(2, 3).is_err());
        assert!(RingContext::prime_field(9, 3).is_err());
        assert!(RingContext::new(5, 2, 2, vec![1, 0, 1]).is_err());
        assert!(RingContext::new(3, 2, 2, vec![1, 0, 2]).is_err());
    }

    #[test]
    fn div_exact_round_trip() {
        let ctx = RingContext::prime_field(5, 4).unwrap();
        let a = z(&ctx, 50);
        let d = z(&ctx, 15);
        let q = a.div_exact(&d).unwrap();
        assert_eq!(&q * &d, a);
        assert!(d.div_exact(&a).is_err());
    }
}
