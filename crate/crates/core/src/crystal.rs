//! Constant-coefficient model of a Gauss-Manin connection over a
//! deformation base, with divided-power transport and the local Torelli
//! map `Phi` together with its Newton inverse.
//!
//! For commuting `D_1, ..., D_d` and a point `g = (pa_1, ..., pa_d)`,
//!
//! ```text
//! chi(g)(y) = sum_m gamma_{m_1}(pa_1) ... gamma_{m_d}(pa_d) D^m y
//! ```
//!
//! truncated where every remaining term vanishes modulo `p^n`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::{vector, Matrix, Vector};
use crate::period::PeriodFrame;
use crate::ring::{PadicScalar, RingContext};

/// Least `M` with `M - floor((M-1)/(p-1)) >= n`; divided-power terms of total
/// degree `>= M` vanish modulo `p^n`. Requires an odd prime.
pub fn truncation_degree(n: u32, p: u64) -> Result<u32> {
    if p == 2 {
        return Err(Error::InvalidContext(
            "divided powers of 2W do not converge; need p odd".into(),
        ));
    }
    let mut m: u64 = 1;
    while m - (m - 1) / (p - 1) < n as u64 {
        m += 1;
    }
    Ok(m as u32)
}

fn legendre(k: u64, p: u64) -> u32 {
    let mut v = 0;
    let mut q = k / p;
    while q > 0 {
        v += q as u32;
        q /= p;
    }
    v
}

/// `gamma_k(x) = x^k / k!` for `x` in `pW_n`, computed exactly: with
/// `x = pa`, it equals `p^(k - v_p(k!)) a^k` times the inverse of the unit
/// part of `k!`. Any ambiguity in the top digit of `a` is killed by the
/// factor `p^(k - v_p(k!))`, which is at least `p` for `k >= 1`.
pub fn divided_power(x: &PadicScalar, k: u64) -> Result<PadicScalar> {
    let ctx = x.ctx();
    if k == 0 {
        return Ok(PadicScalar::one(ctx));
    }
    if x.valuation_or_n() < 1 {
        return Err(Error::ValuationViolation {
            index: 1,
            valuation: x.valuation(),
            required: 1,
        });
    }
    let p = ctx.p();
    let v = legendre(k, p);
    let shift = k - v as u64;
    if shift >= ctx.n() as u64 {
        return Ok(PadicScalar::zero(ctx));
    }
    let a = x.div_p_power(1)?;
    let mut unit_part = PadicScalar::one(ctx);
    for i in 1..=k {
        let mut j = i;
        while j % p == 0 {
            j /= p;
        }
        unit_part = &unit_part * &PadicScalar::from_i128(ctx, j as i128);
    }
    Ok(&a.pow(k as u128).mul_p_power(shift as u32) * &unit_part.inv()?)
}

/// A point `(pa_1, ..., pa_d)` of the deformation base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationPoint {
    entries: Vec<PadicScalar>,
}

impl DeformationPoint {
    pub fn new(entries: Vec<PadicScalar>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if e.valuation_or_n() < 1 {
                return Err(Error::ValuationViolation {
                    index: i + 1,
                    valuation: e.valuation(),
                    required: 1,
                });
            }
        }
        Ok(DeformationPoint { entries })
    }

    pub fn zero(ctx: &Arc<RingContext>, d: usize) -> Self {
        DeformationPoint {
            entries: vector::zero(ctx, d),
        }
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.entries
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }
}

/// Commuting connection matrices `D_1, ..., D_(r-2)` on a period frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionData {
    frame: PeriodFrame,
    matrices: Vec<Matrix>,
    transversal: Matrix,
}

impl ConnectionData {
    /// Validates shapes, integrability (`D_i D_j = D_j D_i`) and
    /// transversality (the gr^1 components of `D_i v_1` form an invertible
    /// matrix modulo p).
    pub fn new(frame: PeriodFrame, matrices: Vec<Matrix>) -> Result<Self> {
        let r = frame.rank();
        let d = frame.dimension();
        if matrices.len() != d {
            return Err(Error::InvalidConnection(format!(
                "expected {d} matrices, got {}",
                matrices.len()
            )));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.rows() != r || m.cols() != r {
                return Err(Error::InvalidConnection(format!("D_{} is not {r}x{r}", i + 1)));
            }
            if **m.ctx() != **frame.ctx() {
                return Err(Error::ContextMismatch);
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                if matrices[i].mul(&matrices[j]) != matrices[j].mul(&matrices[i]) {
                    return Err(Error::InvalidConnection(format!(
                        "D_{} and D_{} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let v1 = frame.hodge_vector();
        let images: Vec<Vector> = matrices.iter().map(|m| m.mul_vec(&v1)).collect();
        let transversal = Matrix::from_fn(frame.ctx(), d, d, |j, i| images[i][j + 1].clone());
        if transversal.rank_mod_p() != d {
            return Err(Error::InvalidConnection(
                "gr^1 components of D_i v_1 are not independent modulo p".into(),
            ));
        }
        Ok(ConnectionData {
            frame,
            matrices,
            transversal,
        })
    }

    pub fn frame(&self) -> &PeriodFrame {
        &self.frame
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn dimension(&self) -> usize {
        self.matrices.len()
    }

    /// `T` with `T[j][i]` the `v_(j+2)` coordinate of `D_i v_1`; `Phi` is
    /// `T` to first order.
    pub fn transversality_matrix(&self) -> &Matrix {
        &self.transversal
    }

    /// Whether every `D_i` is skew for the pairing, `D^T G + G D = 0`. Skew
    /// connections transport isotropic vectors to isotropic vectors.
    pub fn is_skew(&self) -> bool {
        let g = self.frame.lattice().gram();
        self.matrices
            .iter()
            .all(|d| d.transpose().mul(g).add(&g.mul(d)).is_zero())
    }
}

/// Divided-power transport of `y` along `g`.
pub fn transport(conn: &ConnectionData, g: &DeformationPoint, y: &[PadicScalar]) -> Result<Vector> {
    let ctx = conn.frame.ctx().clone();
    let d = conn.dimension();
    if g.dimension() != d {
        return Err(Error::DimensionMismatch(format!(
            "point has {} coordinates, connection has {d}",
            g.dimension()
        )));
    }
    if y.len() != conn.frame.rank() {
        return Err(Error::DimensionMismatch("transported vector length".into()));
    }
    let budget = truncation_degree(ctx.n(), ctx.p())? - 1;
    let gammas = g
        .entries
        .iter()
        .map(|x| {
            (0..=budget as u64)
                .map(|k| divided_power(x, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = vector::zero(&ctx, y.len());
    accumulate(conn, &gammas, 0, y.to_vec(), PadicScalar::one(&ctx), budget, &mut acc);
    Ok(acc)
}

// Walks multi-indices in lexicographic order, applying D_i^k incrementally.
fn accumulate(
    conn: &ConnectionData,
    gammas: &[Vec<PadicScalar>],
    i: usize,
    y: Vector,
    coeff: PadicScalar,
    budget: u32,
    acc: &mut Vector,
) {
    if i == gammas.len() {
        *acc = vector::axpy(acc, &coeff, &y);
        return;
    }
    let mut cur = y;
    for k in 0..=budget {
        let c = &coeff * &gammas[i][k as usize];
        if !c.is_zero() {
            accumulate(conn, gammas, i + 1, cur.clone(), c, budget - k, acc);
        }
        if k < budget {
            cur = conn.matrices[i].mul_vec(&cur);
            if vector::is_zero(&cur) {
                break;
            }
        }
    }
}

/// `Phi(g) = h_1^(-1) (h_2, ..., h_(r-1))` where `sum h_i v_i` is the
/// transport of `v_1`.
pub fn phi_map(conn: &ConnectionData, g: &DeformationPoint) -> Result<Vec<PadicScalar>> {
    let h = transport(conn, g, &conn.frame.hodge_vector())?;
    let h1 = h[0]
        .inv()
        .map_err(|_| Error::InvalidConnection("h_1 is not a unit".into()))?;
    let r = h.len();
    Ok(h[1..r - 1].iter().map(|x| x * &h1).collect())
}

/// Result of [`phi_invert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiInverse {
    pub point: DeformationPoint,
    pub iterations: usize,
}

/// The unique `g` with `Phi(g) = target`, by the iteration
/// `g <- g + T^(-1) (target - Phi(g))`. The error gains a factor of p per
/// step, so `n` steps suffice; failure after `n + 2` steps means the
/// connection data is inconsistent.
pub fn phi_invert(conn: &ConnectionData, target: &[PadicScalar]) -> Result<PhiInverse> {
    let ctx = conn.frame.ctx().clone();
    let d = conn.dimension();
    if target.len() != d {
        return Err(Error::DimensionMismatch(format!(
            "target has {} coordinates, connection has {d}",
            target.len()
        )));
    }
    for (i, t) in target.iter().enumerate() {
        if t.valuation_or_n() < 1 {
            return Err(Error::ValuationViolation {
                index: i + 2,
                valuation: t.valuation(),
                required: 1,
            });
        }
    }
    let t_inv = conn.transversal.inverse()?;
    let max_iter = ctx.n() as usize + 2;
    let mut g = DeformationPoint::zero(&ctx, d);
    for iterations in 0..=max_iter {
        let residual = vector::sub(target, &phi_map(conn, &g)?);
        if vector::is_zero(&residual) {
            return Ok(PhiInverse { point: g, iterations });
        }
        if iterations == max_iter {
            break;
        }
        let step = t_inv.mul_vec(&residual);
        g = DeformationPoint::new(vector::add(&g.entries, &step))?;
    }
    Err(Error::NoConvergence { iterations: max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::WittLattice;

    fn nilpotent_toy(n: u32) -> ConnectionData {
        let ctx = RingContext::prime_field(5, n).unwrap();
        let l = WittLattice::from_ints(&ctx, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]).unwrap();
        let frame = PeriodFrame::new(l).unwrap();
        // D v1 = v2, D v2 = -v3, D v3 = 0 (skew for this Gram)
        let d = Matrix::from_ints(&ctx, 3, 3, &[0, 0, 0, 1, 0, 0, 0, -1, 0]).unwrap();
        ConnectionData::new(frame, vec![d]).unwrap()
    }

    #[test]
    fn truncation_degrees() {
        assert_eq!(truncation_degree(3, 5).unwrap(), 3);
        assert_eq!(truncation_degree(1, 3).unwrap(), 1);
        assert_eq!(truncation_degree(4, 3).unwrap(), 6);
        assert!(truncation_degree(3, 2).is_err());
        // every divided power of degree >= M has valuation >= n
        for p in [3u64, 5, 7] {
            for n in 1..8u32 {
                let m = truncation_degree(n, p).unwrap() as u64;
                assert!((m..m + 200).all(|k| k - legendre(k, p) as u64 >= n as u64));
                let brute = (1..).find(|&m: &u64| m - (m - 1) / (p - 1) >= n as u64).unwrap();
                assert_eq!(m, brute);
            }
        }
    }

    #[test]
    fn divided_powers_match_integers() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let x = PadicScalar::from_int(&ctx, 5);
        // gamma_2(5) = 25/2, gamma_5(10) = 10^5/120 = 2500/3
        let inv2 = PadicScalar::from_int(&ctx, 2).inv().unwrap();
        assert_eq!(divided_power(&x, 2).unwrap(), &PadicScalar::from_int(&ctx, 25) * &inv2);
        let inv3 = PadicScalar::from_int(&ctx, 3).inv().unwrap();
        assert_eq!(
            divided_power(&PadicScalar::from_int(&ctx, 10), 5).unwrap(),
            &PadicScalar::from_int(&ctx, 2500) * &inv3
        );
        assert!(divided_power(&PadicScalar::one(&ctx), 2).is_err());
    }

    #[test]
    fn nilpotent_transport_closed_form() {
        let conn = nilpotent_toy(3);
        let ctx = conn.frame().ctx().clone();
        let g = DeformationPoint::new(vector::from_ints(&ctx, &[5])).unwrap();
        let v1 = conn.frame().hodge_vector();
        // v1 + 5 v2 + gamma_2(5) D^2 v1 with D^2 v1 = -v3
        let out = transport(&conn, &g, &v1).unwrap();
        let inv2 = PadicScalar::from_int(&ctx, 2).inv().unwrap();
        let expected = vec![
            PadicScalar::one(&ctx),
            PadicScalar::from_int(&ctx, 5),
            -&(&PadicScalar::from_int(&ctx, 25) * &inv2),
        ];
        assert_eq!(out, expected);
        assert!(conn.frame().lattice().is_isotropic_vector(&out));
        assert_eq!(phi_map(&conn, &g).unwrap(), vector::from_ints(&ctx, &[5]));
        let inv = phi_invert(&conn, &vector::from_ints(&ctx, &[5])).unwrap();
        assert_eq!(inv.point, g);
    }

    #[test]
    fn square_zero_connection() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let l = WittLattice::from_ints(&ctx, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]).unwrap();
        let frame = PeriodFrame::new(l).unwrap();
        let d = Matrix::from_ints(&ctx, 3, 3, &[0, 0, 0, 1, 0, 0, 0, 0, 0]).unwrap();
        assert!(d.mul(&d).is_zero());
        let conn = ConnectionData::new(frame, vec![d.clone()]).unwrap();
        let g = DeformationPoint::new(vector::from_ints(&ctx, &[5])).unwrap();
        let y = vector::from_ints(&ctx, &[2, 7, 1]);
        let expected = vector::axpy(&y, &PadicScalar::from_int(&ctx, 5), &d.mul_vec(&y));
        assert_eq!(transport(&conn, &g, &y).unwrap(), expected);
        assert_eq!(phi_map(&conn, &g).unwrap(), vector::from_ints(&ctx, &[5]));
        assert_eq!(phi_invert(&conn, &vector::from_ints(&ctx, &[5])).unwrap().point, g);
    }

    #[test]
    fn zero_point_is_identity() {
        let conn = nilpotent_toy(4);
        let ctx = conn.frame().ctx().clone();
        let y = vector::from_ints(&ctx, &[3, 1, 4]);
        assert_eq!(transport(&conn, &DeformationPoint::zero(&ctx, 1), &y).unwrap(), y);
        let inv = phi_invert(&conn, &vector::zero(&ctx, 1)).unwrap();
        assert_eq!(inv.iterations, 0);
    }

    #[test]
    fn connection_validation() {
        let ctx = RingContext::prime_field(5, 2).unwrap();
        let l = WittLattice::from_ints(&ctx, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]).unwrap();
        let frame = PeriodFrame::new(l).unwrap();
        let flat = Matrix::zeros(&ctx, 3, 3);
        assert!(matches!(
            ConnectionData::new(frame.clone(), vec![flat]),
            Err(Error::InvalidConnection(_))
        ));
        assert!(matches!(
            ConnectionData::new(frame, vec![]),
            Err(Error::InvalidConnection(_))
        ));
    }
}
