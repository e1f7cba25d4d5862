//! Quadratic lattices over `Z` and over `W_n`.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::intmat::IntMatrix;
use crate::matrix::{vector, Matrix, Vector};
use crate::ring::{PadicScalar, RingContext};

/// The named lattices used in K3 cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardLattice {
    /// Hyperbolic plane, Gram `[[0,1],[1,0]]`.
    U,
    /// Negative definite E8 root lattice.
    E8,
    /// `U^3 + E8^2`, even unimodular of signature (3, 19).
    K3,
}

/// A free `Z`-module with a symmetric integer Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: IntMatrix,
}

/// Elementary divisors `d_1 | d_2 | ...` of a nondegenerate Gram matrix,
/// with unit divisors dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    divisors: Vec<i128>,
}

impl DiscriminantGroup {
    pub fn divisors(&self) -> &[i128] {
        &self.divisors
    }

    pub fn order(&self) -> i128 {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// `Some(sigma)` when the group is `(Z/p)^(2 sigma)`, the shape of the
    /// discriminant group of a supersingular Neron-Severi lattice.
    pub fn artin_invariant(&self, p: u64) -> Option<usize> {
        let k = self.divisors.len();
        (k > 0 && k.is_multiple_of(2) && self.divisors.iter().all(|&d| d == p as i128)).then_some(k / 2)
    }
}

const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

pub fn standard_lattice(name: StandardLattice) -> IntLattice {
    match name {
        StandardLattice::U => IntLattice::new(IntMatrix::new(2, 2, vec![0, 1, 1, 0]).unwrap()).unwrap(),
        StandardLattice::E8 => {
            let mut g = IntMatrix::zeros(8, 8);
            for i in 0..8 {
                g.set(i, i, -2);
            }
            for &(a, b) in &E8_EDGES {
                g.set(a, b, 1);
                g.set(b, a, 1);
            }
            IntLattice::new(g).unwrap()
        }
        StandardLattice::K3 => {
            let u = standard_lattice(StandardLattice::U);
            let e8 = standard_lattice(StandardLattice::E8);
            u.direct_sum(&u).direct_sum(&u).direct_sum(&e8).direct_sum(&e8)
        }
    }
}

impl IntLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
        }
        Ok(IntLattice { gram })
    }

    pub fn from_gram(rank: usize, entries: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::new(
            rank,
            rank,
            entries.iter().map(|&x| x as i128).collect(),
        )?)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut g = IntMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            g.set(i, i, e as i128);
        }
        IntLattice { gram: g }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = IntMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g.set(i, j, self.gram.get(i, j));
            }
        }
        for i in 0..b {
            for j in 0..b {
                g.set(a + i, a + j, other.gram.get(i, j));
            }
        }
        IntLattice { gram: g }
    }

    pub fn pairing(&self, v: &[i128], w: &[i128]) -> Result<i128> {
        if v.len() != self.rank() || w.len() != self.rank() {
            return Err(Error::DimensionMismatch(
                "vector length differs from lattice rank".into(),
            ));
        }
        let gw = self.gram.mul_vec(w)?;
        v.iter()
            .zip(&gw)
            .try_fold(0i128, |acc, (a, b)| acc.checked_add(a.checked_mul(*b)?))
            .ok_or(Error::Overflow)
    }

    pub fn is_isotropic_vector(&self, v: &[i128]) -> Result<bool> {
        Ok(self.pairing(v, v)? == 0)
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2 == 0)
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        d == BigInt::from(1) || d == BigInt::from(-1)
    }

    /// `(positive, negative)` index of inertia; fails on a degenerate form.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let (pos, neg, zero) = self.gram.signature();
        if zero > 0 {
            return Err(Error::DegenerateForm);
        }
        Ok((pos, neg))
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        let inv = self.gram.smith_invariants()?;
        if inv.contains(&0) {
            return Err(Error::DegenerateForm);
        }
        Ok(DiscriminantGroup {
            divisors: inv.into_iter().filter(|&d| d != 1).collect(),
        })
    }

    /// Saturated basis of `{x : x.s = 0 for all s in S}`.
    pub fn orthogonal_complement(&self, s: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
        let r = self.rank();
        if s.is_empty() {
            return Ok((0..r).map(|i| (0..r).map(|j| i128::from(i == j)).collect()).collect());
        }
        let rows: Vec<Vec<i128>> = s
            .iter()
            .map(|v| {
                if v.len() != r {
                    return Err(Error::DimensionMismatch("vector length".into()));
                }
                // row = v^T G
                self.gram.transpose().mul_vec(v)
            })
            .collect::<Result<_>>()?;
        IntMatrix::from_rows(&rows)?.kernel()
    }

    /// The same Gram matrix read in `W_n`.
    pub fn base_change(&self, ctx: &Arc<RingContext>) -> WittLattice {
        let r = self.rank();
        let gram = Matrix::from_fn(ctx, r, r, |i, j| PadicScalar::from_i128(ctx, self.gram.get(i, j)));
        WittLattice { gram }
    }
}

/// A free `W_n`-module with a symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittLattice {
    gram: Matrix,
}

impl WittLattice {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix is not square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
        }
        Ok(WittLattice { gram })
    }

    pub fn from_ints(ctx: &Arc<RingContext>, rank: usize, entries: &[i64]) -> Result<Self> {
        Self::new(Matrix::from_ints(ctx, rank, rank, entries)?)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        self.gram.ctx()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pairing(&self, v: &[PadicScalar], w: &[PadicScalar]) -> PadicScalar {
        let gw = self.gram.mul_vec(w);
        v.iter()
            .zip(&gw)
            .fold(PadicScalar::zero(self.ctx()), |acc, (a, b)| acc + a * b)
    }

    pub fn try_pairing(&self, v: &[PadicScalar], w: &[PadicScalar]) -> Result<PadicScalar> {
        if v.len() != self.rank() || w.len() != self.rank() {
            return Err(Error::DimensionMismatch(
                "vector length differs from lattice rank".into(),
            ));
        }
        Ok(self.pairing(v, w))
    }

    pub fn norm(&self, v: &[PadicScalar]) -> PadicScalar {
        self.pairing(v, v)
    }

    /// `v.v = 0` at the ambient precision.
    pub fn is_isotropic_vector(&self, v: &[PadicScalar]) -> bool {
        self.norm(v).is_zero()
    }

    /// Unit determinant, i.e. the pairing is perfect.
    pub fn is_perfect(&self) -> bool {
        self.gram.rank_mod_p() == self.rank()
    }

    /// Basis of `{x : x.s = 0 for all s in S}`; fails with
    /// [`Error::PrecisionLoss`] when that submodule is not free at this
    /// precision.
    pub fn orthogonal_complement(&self, s: &[Vector]) -> Result<Vec<Vector>> {
        let r = self.rank();
        if s.is_empty() {
            return Ok((0..r).map(|i| vector::basis(self.ctx(), r, i)).collect());
        }
        if s.iter().any(|v| v.len() != r) {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let gt = self.gram.transpose();
        let rows: Vec<Vector> = s.iter().map(|v| gt.mul_vec(v)).collect();
        let m = Matrix::from_fn(self.ctx(), rows.len(), r, |i, j| rows[i][j].clone());
        m.kernel()
    }

    /// Gram matrix of the sublattice spanned by the given vectors.
    pub fn restrict(&self, basis: &[Vector]) -> Result<WittLattice> {
        let b = Matrix::from_columns(self.ctx(), self.rank(), basis)?;
        WittLattice::new(b.transpose().mul(&self.gram).mul(&b))
    }

    pub fn direct_sum(&self, other: &WittLattice) -> Result<WittLattice> {
        if **self.ctx() != **other.ctx() {
            return Err(Error::ContextMismatch);
        }
        let (a, b) = (self.rank(), other.rank());
        let zero = PadicScalar::zero(self.ctx());
        let gram = Matrix::from_fn(self.ctx(), a + b, a + b, |i, j| {
            if i < a && j < a {
                self.gram.get(i, j).clone()
            } else if i >= a && j >= a {
                other.gram.get(i - a, j - a).clone()
            } else {
                zero.clone()
            }
        });
        Ok(WittLattice { gram })
    }
}

/// Either kind of lattice, as carried by the JSON lattice format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadLattice {
    Integral(IntLattice),
    Witt(WittLattice),
}

impl QuadLattice {
    pub fn rank(&self) -> usize {
        match self {
            QuadLattice::Integral(l) => l.rank(),
            QuadLattice::Witt(l) => l.rank(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_lattices() {
        let u = standard_lattice(StandardLattice::U);
        assert_eq!(u.determinant(), BigInt::from(-1));
        assert!(u.is_even());
        assert_eq!(u.rank(), 2);

        let e8 = standard_lattice(StandardLattice::E8);
        assert_eq!(e8.determinant(), BigInt::from(1));
        assert!(e8.is_even());
        assert_eq!(e8.signature().unwrap(), (0, 8));
        assert!(e8.discriminant_group().unwrap().is_trivial());

        let k3 = standard_lattice(StandardLattice::K3);
        assert_eq!(k3.rank(), 22);
        assert!(k3.is_unimodular());
        assert!(k3.is_even());
        assert_eq!(k3.signature().unwrap(), (3, 19));
    }

    #[test]
    fn discriminant_groups() {
        let d = IntLattice::diagonal(&[5, 5]);
        assert_eq!(d.discriminant_group().unwrap().divisors(), &[5, 5]);
        let l = standard_lattice(StandardLattice::U).direct_sum(&IntLattice::diagonal(&[3, 3, 3, 3]));
        let g = l.discriminant_group().unwrap();
        assert_eq!(g.divisors(), &[3, 3, 3, 3]);
        assert_eq!(g.artin_invariant(3), Some(2));
        let deg = IntLattice::diagonal(&[1, 0]);
        assert_eq!(deg.discriminant_group(), Err(Error::DegenerateForm));
    }

    #[test]
    fn integral_orthogonal_complements() {
        let u = standard_lattice(StandardLattice::U);
        assert_eq!(u.orthogonal_complement(&[vec![1, 0]]).unwrap(), vec![vec![1, 0]]);
        assert_eq!(u.orthogonal_complement(&[]).unwrap().len(), 2);

        let uu = u.direct_sum(&u); // basis e1, f1, e2, f2
        let comp = uu.orthogonal_complement(&[vec![1, 1, 0, 0]]).unwrap();
        assert_eq!(comp.len(), 3);
        for v in &comp {
            assert_eq!(uu.pairing(v, &[1, 1, 0, 0]).unwrap(), 0);
        }
        // e1 - f1 lies in the integer span of the complement.
        let b = IntMatrix::from_rows(&comp).unwrap().transpose();
        let mut aug = comp.clone();
        aug.push(vec![1, -1, 0, 0]);
        let with = IntMatrix::from_rows(&aug).unwrap().transpose();
        assert_eq!(b.smith_invariants().unwrap(), vec![1, 1, 1]);
        assert_eq!(with.smith_invariants().unwrap(), vec![1, 1, 1, 0]);
    }

    #[test]
    fn witt_pairing_and_isotropy() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let u = standard_lattice(StandardLattice::U).base_change(&ctx);
        assert!(u.is_isotropic_vector(&vector::from_ints(&ctx, &[1, 0])));
        let e8 = standard_lattice(StandardLattice::E8).base_change(&ctx);
        let root = vector::basis(&ctx, 8, 0);
        assert!(!e8.is_isotropic_vector(&root));
        let l = WittLattice::from_ints(&ctx, 2, &[5, 1, 1, 0]).unwrap();
        let v = vector::from_ints(&ctx, &[1, 12]);
        assert_eq!(l.norm(&v), PadicScalar::from_int(&ctx, 29));
        assert!(!l.is_isotropic_vector(&v));
    }

    #[test]
    fn witt_orthogonal_complement_and_precision_loss() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let u = standard_lattice(StandardLattice::U).base_change(&ctx);
        let c = u.orthogonal_complement(&[vector::from_ints(&ctx, &[1, 0])]).unwrap();
        assert_eq!(c, vec![vector::from_ints(&ctx, &[1, 0])]);
        let l = WittLattice::from_ints(&ctx, 2, &[5, 0, 0, 1]).unwrap();
        assert_eq!(
            l.orthogonal_complement(&[vector::from_ints(&ctx, &[1, 0])]),
            Err(Error::PrecisionLoss)
        );
    }
}
