//! Hensel lifting: simple roots of polynomials, the isotropic correction
//! `u + p a v`, and unit-pivot orthogonalisation.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::WittLattice;
use crate::matrix::{vector, Vector};
use crate::ring::{PadicScalar, RingContext};

/// Polynomial over `W_n`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<PadicScalar>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<PadicScalar>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs at least one coefficient");
        Polynomial { coeffs }
    }

    pub fn from_ints(ctx: &Arc<RingContext>, coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| PadicScalar::from_int(ctx, c)).collect())
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.coeffs[0].ctx()
    }

    pub fn eval(&self, x: &PadicScalar) -> PadicScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(PadicScalar::zero(self.ctx()), |acc, c| &(&acc * x) + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial::new(vec![PadicScalar::zero(self.ctx())]);
        }
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul_int(i as i64))
                .collect(),
        )
    }
}

/// Root of `f` congruent to `x0` modulo p, by Newton iteration. Needs
/// `f(x0) = 0 mod p` and `f'(x0)` a unit; converges in at most
/// `ceil(log2 n) + 1` steps.
pub fn hensel_root(f: &Polynomial, x0: &PadicScalar) -> Result<PadicScalar> {
    let df = f.derivative();
    if !df.eval(x0).is_unit() {
        return Err(Error::NonSimpleRoot);
    }
    if f.eval(x0).is_unit() {
        return Err(Error::NotARootModP);
    }
    let n = x0.ctx().n();
    let max_steps = (32 - (n.max(1) - 1).leading_zeros()) as usize + 1;
    let mut x = x0.clone();
    for _ in 0..=max_steps {
        let fx = f.eval(&x);
        if fx.is_zero() {
            return Ok(x);
        }
        let d = df.eval(&x).inv()?;
        x = &x - &(&fx * &d);
    }
    if f.eval(&x).is_zero() {
        Ok(x)
    } else {
        Err(Error::NoConvergence {
            iterations: max_steps + 1,
        })
    }
}

/// Result of [`isotropic_combination`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicLift {
    /// Correction coefficient, reported modulo `p^(n-1)` (the precision at
    /// which it is determined).
    pub a: PadicScalar,
    /// `u + p a v`, isotropic modulo `p^n`.
    pub w: Vector,
}

/// Finds `a` with `(u + p a v)^2 = 0`, given `u.u = 0 mod p` and `u.v` a
/// unit. Solves `(u.u)/p + 2 a (u.v) + p a^2 (v.v) = 0` modulo `p^(n-1)`
/// for the root with `a = -(u.u) / (2 p (u.v)) mod p`.
pub fn isotropic_combination(lattice: &WittLattice, u: &[PadicScalar], v: &[PadicScalar]) -> Result<IsotropicLift> {
    let ctx = lattice.ctx().clone();
    let uu = lattice.try_pairing(u, u)?;
    let uv = lattice.pairing(u, v);
    let vv = lattice.pairing(v, v);
    if !uv.is_unit() {
        return Err(Error::BadPairing);
    }
    if uu.is_unit() {
        return Err(Error::NotNearIsotropic);
    }
    let n = ctx.n();
    if n == 1 {
        return Ok(IsotropicLift {
            a: PadicScalar::zero(&ctx),
            w: u.to_vec(),
        });
    }
    let low = ctx.with_precision(n - 1)?;
    let c = uu.div_p_power(1)?.reduce_to(&low)?;
    let b2 = uv.mul_int(2).reduce_to(&low)?;
    let pd = vv.mul_int(ctx.p() as i64).reduce_to(&low)?;
    let f = Polynomial::new(vec![c.clone(), b2.clone(), pd]);
    let x0 = -&(&c * &b2.inv()?);
    let root = hensel_root(&f, &x0)?;
    let a = root.reduce_to(&ctx)?;
    let pa = a.mul_p_power(1);
    let w = vector::axpy(u, &pa, v);
    debug_assert!(lattice.is_isotropic_vector(&w));
    Ok(IsotropicLift { a, w })
}

/// Result of [`orthogonalize_against`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthogonalized {
    pub a: PadicScalar,
    pub vector: Vector,
}

/// `v + a u` with `a = -(v.c)/(u.c)`, so that the result pairs to zero with
/// `c`. Needs `c.u` a unit.
pub fn orthogonalize_against(
    lattice: &WittLattice,
    target: &[PadicScalar],
    v: &[PadicScalar],
    u: &[PadicScalar],
) -> Result<Orthogonalized> {
    let cu = lattice.try_pairing(target, u)?;
    if !cu.is_unit() {
        return Err(Error::NonUnitPivot);
    }
    let vc = lattice.try_pairing(v, target)?;
    let a = -&(&vc * &cu.inv()?);
    let out = vector::axpy(v, &a, u);
    Ok(Orthogonalized { a, vector: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(ctx: &Arc<RingContext>, v: i64) -> PadicScalar {
        PadicScalar::from_int(ctx, v)
    }

    #[test]
    fn sqrt_two_mod_49() {
        let ctx = RingContext::prime_field(7, 2).unwrap();
        let scan: Vec<i64> = (0..49)
            .filter(|x| (x * x - 2i64).rem_euclid(49) == 0 && x % 7 == 3)
            .collect();
        assert_eq!(scan, vec![10]);
        let f = Polynomial::from_ints(&ctx, &[-2, 0, 1]);
        assert_eq!(hensel_root(&f, &z(&ctx, 3)).unwrap(), z(&ctx, 10));
    }

    #[test]
    fn linear_and_degenerate() {
        let ctx = RingContext::prime_field(5, 4).unwrap();
        let f = Polynomial::from_ints(&ctx, &[-17, 1]);
        assert_eq!(hensel_root(&f, &z(&ctx, 2)).unwrap(), z(&ctx, 17));
        let sq = Polynomial::from_ints(&ctx, &[0, 0, 1]);
        assert_eq!(hensel_root(&sq, &z(&ctx, 0)), Err(Error::NonSimpleRoot));
        let f = Polynomial::from_ints(&ctx, &[-2, 1]);
        assert_eq!(hensel_root(&f, &z(&ctx, 0)), Err(Error::NotARootModP));
    }

    #[test]
    fn isotropic_combination_worked_example() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        // brute force over a in Z/25 of 5 + 10 a = 0 mod 125
        let scan: Vec<i64> = (0..25).filter(|a| (5 + 10 * a) % 125 == 0).collect();
        assert_eq!(scan, vec![12]);
        let l = WittLattice::from_ints(&ctx, 2, &[5, 1, 1, 0]).unwrap();
        let u = vector::from_ints(&ctx, &[1, 0]);
        let v = vector::from_ints(&ctx, &[0, 1]);
        let lift = isotropic_combination(&l, &u, &v).unwrap();
        assert_eq!(lift.a, z(&ctx, 12));
        assert_eq!(lift.w, vector::from_ints(&ctx, &[1, 60]));
        assert!(l.is_isotropic_vector(&lift.w));
    }

    #[test]
    fn isotropic_combination_edge_cases() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let u_iso = WittLattice::from_ints(&ctx, 2, &[0, 1, 1, 0]).unwrap();
        let u = vector::from_ints(&ctx, &[1, 0]);
        let v = vector::from_ints(&ctx, &[0, 1]);
        assert_eq!(isotropic_combination(&u_iso, &u, &v).unwrap().a, z(&ctx, 0));
        let bad = WittLattice::from_ints(&ctx, 2, &[5, 5, 5, 0]).unwrap();
        assert_eq!(isotropic_combination(&bad, &u, &v), Err(Error::BadPairing));
        let far = WittLattice::from_ints(&ctx, 2, &[1, 1, 1, 0]).unwrap();
        assert_eq!(isotropic_combination(&far, &u, &v), Err(Error::NotNearIsotropic));
    }

    #[test]
    fn orthogonalization() {
        let ctx = RingContext::prime_field(5, 2).unwrap();
        // basis c, v, u with c.v = 5, c.u = 1
        let l = WittLattice::from_ints(&ctx, 3, &[0, 5, 1, 5, 0, 0, 1, 0, 0]).unwrap();
        let c = vector::basis(&ctx, 3, 0);
        let v = vector::basis(&ctx, 3, 1);
        let u = vector::basis(&ctx, 3, 2);
        let out = orthogonalize_against(&l, &c, &v, &u).unwrap();
        assert_eq!(out.a, z(&ctx, 20));
        assert!(l.pairing(&out.vector, &c).is_zero());
        // c.v = 5 is not a unit pivot
        assert_eq!(orthogonalize_against(&l, &c, &u, &v), Err(Error::NonUnitPivot));
        let w = vector::from_ints(&ctx, &[0, 0, 0]);
        assert_eq!(orthogonalize_against(&l, &c, &w, &u).unwrap().a, z(&ctx, 0));
    }
}
