//! Finite-order isometries and their eigenspace splitting over `W_n`.
//!
//! For an automorphism `A` with `A^N = 1` and `p` not dividing `N`, the
//! averaging operators
//!
//! ```text
//! e_z = N^-1 * sum_{i < N} z^-i A^i
//! ```
//!
//! over the `N`-th roots of unity `z` are orthogonal idempotents summing to
//! the identity, and `A e_z = z e_z`. Their images are the eigenspaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::WittLattice;
use crate::matrix::{vector, Matrix, Vector};
use crate::ring::{nth_roots_of_unity, PadicScalar, RingContext};

/// A Gram-preserving automorphism of a [`WittLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    lattice: WittLattice,
    matrix: Matrix,
    order: Option<u64>,
}

/// `A^T G A = G`.
pub fn verify_isometry(lattice: &WittLattice, a: &Matrix) -> bool {
    let r = lattice.rank();
    if a.rows() != r || a.cols() != r || **a.ctx() != **lattice.ctx() {
        return false;
    }
    a.transpose().mul(lattice.gram()).mul(a) == *lattice.gram()
}

/// Least `N <= bound` with `A^N = 1`.
pub fn order(a: &Matrix, bound: u64) -> Option<u64> {
    let mut cur = a.clone();
    for k in 1..=bound {
        if cur.is_identity() {
            return Some(k);
        }
        cur = cur.mul(a);
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

impl Isometry {
    /// Validates Gram preservation and, when given, that `order` is the
    /// exact order of the matrix.
    pub fn new(lattice: WittLattice, matrix: Matrix, order: Option<u64>) -> Result<Self> {
        if matrix.rows() != lattice.rank() || matrix.cols() != lattice.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix on a rank-{} lattice",
                matrix.rows(),
                matrix.cols(),
                lattice.rank()
            )));
        }
        if **matrix.ctx() != **lattice.ctx() {
            return Err(Error::ContextMismatch);
        }
        if !verify_isometry(&lattice, &matrix) {
            return Err(Error::InvalidInput("matrix does not preserve the Gram form".into()));
        }
        if let Some(n) = order {
            if n == 0 || !matrix.pow(n).is_identity() {
                return Err(Error::OrderMismatch { order: n });
            }
            if divisors(n)
                .into_iter()
                .filter(|&d| d < n)
                .any(|d| matrix.pow(d).is_identity())
            {
                return Err(Error::OrderMismatch { order: n });
            }
        }
        Ok(Isometry { lattice, matrix, order })
    }

    pub fn lattice(&self) -> &WittLattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn declared_order(&self) -> Option<u64> {
        self.order
    }

    pub fn order(&self, bound: u64) -> Option<u64> {
        order(&self.matrix, bound)
    }

    pub fn char_poly(&self) -> CharPoly {
        char_poly(&self.matrix)
    }

    pub fn eigen_split(&self, order: u64) -> Result<EigenSplit> {
        eigen_split(&self.matrix, order)
    }

    pub fn lift_eigenvector(&self, order: u64, residue_vector: &[PadicScalar]) -> Result<EigenLift> {
        lift_eigenvector(&self.matrix, order, residue_vector)
    }
}

/// Characteristic polynomial together with its candidate integer
/// representatives. Integrality of the true polynomial cannot be decided at
/// finite precision; the candidates are a report only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    /// Ascending coefficients of `det(t - A)` modulo `p^n`.
    pub coeffs: Vec<PadicScalar>,
    /// Representative in `(-p^n/2, p^n/2]` per coefficient, `None` when
    /// the coefficient is not in the prime subring.
    pub integer_candidates: Vec<Option<i128>>,
}

pub fn char_poly(a: &Matrix) -> CharPoly {
    let coeffs = a.char_poly();
    let integer_candidates = coeffs.iter().map(|c| c.to_symmetric_int()).collect();
    CharPoly {
        coeffs,
        integer_candidates,
    }
}

/// One eigenspace: eigenvalue, idempotent projector, and a basis of its
/// image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenComponent {
    pub eigenvalue: PadicScalar,
    pub projector: Matrix,
    pub basis: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSplit {
    pub order: u64,
    pub components: Vec<EigenComponent>,
}

impl EigenSplit {
    pub fn component(&self, eigenvalue: &PadicScalar) -> Option<&EigenComponent> {
        self.components.iter().find(|c| &c.eigenvalue == eigenvalue)
    }

    /// All bases concatenated as the columns of one matrix.
    pub fn basis_matrix(&self) -> Matrix {
        let cols: Vec<Vector> = self.components.iter().flat_map(|c| c.basis.iter().cloned()).collect();
        let ctx = self.components[0].projector.ctx();
        let r = self.components[0].projector.rows();
        Matrix::from_columns(ctx, r, &cols).expect("consistent lengths")
    }

    /// The bases together form a basis of the ambient module.
    pub fn is_direct_sum(&self) -> bool {
        let b = self.basis_matrix();
        b.cols() == b.rows() && b.rank_mod_p() == b.rows()
    }
}

fn check_tame(ctx: &Arc<RingContext>, order: u64) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    if order.is_multiple_of(ctx.p()) {
        return Err(Error::NotTame { p: ctx.p(), order });
    }
    Ok(())
}

fn powers(a: &Matrix, order: u64) -> Result<Vec<Matrix>> {
    let mut out = Vec::with_capacity(order as usize);
    let mut cur = Matrix::identity(a.ctx(), a.rows());
    for _ in 0..order {
        out.push(cur.clone());
        cur = cur.mul(a);
    }
    if !cur.is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    Ok(out)
}

fn projector(powers: &[Matrix], zeta: &PadicScalar) -> Result<Matrix> {
    let ctx = zeta.ctx();
    let n = powers.len() as u64;
    let zeta_inv = zeta.pow(n as u128 - 1);
    let mut acc = Matrix::zeros(ctx, powers[0].rows(), powers[0].cols());
    let mut coeff = PadicScalar::one(ctx);
    for a_i in powers {
        acc = acc.add(&a_i.scale(&coeff));
        coeff = &coeff * &zeta_inv;
    }
    let n_inv = PadicScalar::from_int(ctx, n as i64).inv()?;
    Ok(acc.scale(&n_inv))
}

/// The idempotent `e_z` onto the `zeta`-eigenspace of `a`, where
/// `a^order = 1`, `zeta^order = 1` and p does not divide `order`.
pub fn eigenprojector(a: &Matrix, order: u64, zeta: &PadicScalar) -> Result<Matrix> {
    check_tame(a.ctx(), order)?;
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigenprojector of a non-square matrix".into()));
    }
    if !zeta.pow(order as u128).is_one() {
        return Err(Error::InvalidInput(format!(
            "eigenvalue is not an {order}-th root of unity"
        )));
    }
    projector(&powers(a, order)?, zeta)
}

/// Basis of the image of a projector, from its columns independent mod p.
pub fn image_basis(e: &Matrix) -> Vec<Vector> {
    e.independent_columns_mod_p().into_iter().map(|j| e.column(j)).collect()
}

/// The scalar `l` with `b m = l m`, if `b` stabilises the line spanned by
/// `m` (which must be nonzero mod p).
pub fn line_eigenvalue(b: &Matrix, m: &[PadicScalar]) -> Option<PadicScalar> {
    let i = m.iter().position(|x| x.is_unit())?;
    let bm = b.try_mul_vec(m).ok()?;
    let l = &bm[i] * &m[i].inv().ok()?;
    vector::is_zero(&vector::sub(&bm, &vector::scale(&l, m))).then_some(l)
}

/// Splits `W_n^r` into eigenspaces of `a`, where `a^order = 1` and p does
/// not divide `order`. Components with zero image are omitted.
pub fn eigen_split(a: &Matrix, order: u64) -> Result<EigenSplit> {
    let ctx = a.ctx().clone();
    check_tame(&ctx, order)?;
    if !a.is_square() {
        return Err(Error::DimensionMismatch("eigen_split of a non-square matrix".into()));
    }
    let roots = nth_roots_of_unity(&ctx, order)?;
    let pw = powers(a, order)?;
    let mut components = Vec::new();
    for zeta in roots {
        let e = projector(&pw, &zeta)?;
        let idx = e.independent_columns_mod_p();
        if idx.is_empty() {
            continue;
        }
        let basis = idx.into_iter().map(|j| e.column(j)).collect();
        components.push(EigenComponent {
            eigenvalue: zeta,
            projector: e,
            basis,
        });
    }
    Ok(EigenSplit { order, components })
}

/// Exact eigenvector together with its eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenLift {
    pub eigenvalue: PadicScalar,
    pub vector: Vector,
}

/// Eigenvalue of `a` on `v` modulo p, if `v` is an eigenvector there.
pub fn residue_eigenvalue(a: &Matrix, v: &[PadicScalar]) -> Result<PadicScalar> {
    let res = a.ctx().residue();
    let vbar = vector::reduce_to(v, &res)?;
    let abar = a.reduce_to(&res)?;
    let Some(i) = vbar.iter().position(|x| !x.is_zero()) else {
        return Err(Error::NotAnEigenvector);
    };
    let av = abar.try_mul_vec(&vbar)?;
    let lambda = &av[i] * &vbar[i].inv()?;
    if vector::sub(&av, &vector::scale(&lambda, &vbar))
        .iter()
        .any(|x| !x.is_zero())
    {
        return Err(Error::NotAnEigenvector);
    }
    Ok(lambda)
}

/// Lifts an eigenvector of `a mod p` to an exact eigenvector over `W_n`
/// with the same reduction, projecting any lift with `e_z` for the
/// Teichmüller lift `z` of the residue eigenvalue.
pub fn lift_eigenvector(a: &Matrix, order: u64, residue_vector: &[PadicScalar]) -> Result<EigenLift> {
    let ctx = a.ctx().clone();
    check_tame(&ctx, order)?;
    if residue_vector.len() != a.cols() {
        return Err(Error::DimensionMismatch("vector length".into()));
    }
    let lambda_bar = residue_eigenvalue(a, residue_vector)?;
    if !lambda_bar.pow(order as u128).is_one() {
        return Err(Error::NotAnEigenvector);
    }
    let zeta = lambda_bar.reduce_to(&ctx)?.teichmuller();
    let pw = powers(a, order)?;
    let e = projector(&pw, &zeta)?;
    let lift = vector::reduce_to(residue_vector, &ctx)?;
    let mut v = e.mul_vec(&lift);
    let vbar = vector::residue(&lift);
    if vector::residue(&v).iter().all(|x| x.is_zero()) {
        return Err(Error::ProjectionCollapse);
    }
    // e_z fixes the residue eigenvector, so the reduction already matches;
    // normalise anyway so that the contract holds even for sloppy inputs.
    let i = vbar.iter().position(|x| !x.is_zero()).expect("nonzero");
    let ratio = vbar[i].reduce_to(&ctx)?.try_mul(&v[i].inv()?)?;
    if !ratio.residue().is_one() {
        v = vector::scale(&ratio, &v);
    }
    debug_assert!(vector::is_zero(&vector::sub(&a.mul_vec(&v), &vector::scale(&zeta, &v))));
    Ok(EigenLift {
        eigenvalue: zeta,
        vector: v,
    })
}
