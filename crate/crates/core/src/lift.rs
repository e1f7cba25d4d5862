//! Constructive lifting: builds an isometry-stable isotropic line reducing to
//! the Hodge line and packages it as a certificate that can be re-verified
//! from the certificate alone.
//!
//! Three builders cover the finite-height case (the line lives in the top
//! slope piece), the supersingular non-symplectic case (eigenvector lift,
//! or a Hensel correction when the eigenvalue is `-1`), and the
//! supersingular symplectic case (a line inside the orthogonal complement
//! of an invariant ample class).

use crate::error::{Error, Result};
use crate::hensel::{isotropic_combination, orthogonalize_against};
use crate::lattice::WittLattice;
use crate::matrix::{vector, Matrix, Vector};
use crate::ring::PadicScalar;
use crate::spectral::{
    eigenprojector, image_basis, lift_eigenvector, line_eigenvalue, residue_eigenvalue, verify_isometry, Isometry,
};

pub use crate::arith::{phi_rank_check, PhiRankCheck};

/// Slope pieces `H_[1-1/h]`, `H_[1]`, `H_[1+1/h]` of a finite-height
/// lattice, each given by a sub-basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeDecomposition {
    lattice: WittLattice,
    lower: Vec<Vector>,
    middle: Vec<Vector>,
    upper: Vec<Vector>,
    frobenius: Option<Matrix>,
    inverse_basis: Matrix,
}

fn gram_block(l: &WittLattice, a: &[Vector], b: &[Vector]) -> Matrix {
    Matrix::from_fn(l.ctx(), a.len(), b.len(), |i, j| l.pairing(&a[i], &b[j]))
}

impl SlopeDecomposition {
    /// Checks that the pieces concatenate to a basis, that the outer pieces
    /// are isotropic, mutually dual and orthogonal to the unimodular middle.
    pub fn new(
        lattice: WittLattice,
        lower: Vec<Vector>,
        middle: Vec<Vector>,
        upper: Vec<Vector>,
        frobenius: Option<Matrix>,
    ) -> Result<Self> {
        let r = lattice.rank();
        let h = upper.len();
        if h == 0 || lower.len() != h || lower.len() + middle.len() + upper.len() != r {
            return Err(Error::InvalidInput(format!(
                "slope pieces of ranks {}, {}, {} do not fit rank {r}",
                lower.len(),
                middle.len(),
                upper.len()
            )));
        }
        if lower.iter().chain(&middle).chain(&upper).any(|v| v.len() != r) {
            return Err(Error::DimensionMismatch("slope basis vector length".into()));
        }
        let all: Vec<Vector> = lower.iter().chain(&middle).chain(&upper).cloned().collect();
        let inverse_basis = Matrix::from_columns(lattice.ctx(), r, &all)?
            .inverse()
            .map_err(|_| Error::InvalidInput("slope pieces do not form a basis".into()))?;
        if !gram_block(&lattice, &lower, &lower).is_zero() || !gram_block(&lattice, &upper, &upper).is_zero() {
            return Err(Error::InvalidInput("outer slope pieces are not isotropic".into()));
        }
        if gram_block(&lattice, &lower, &upper).inverse().is_err() {
            return Err(Error::InvalidInput("outer slope pieces are not dual".into()));
        }
        if !gram_block(&lattice, &middle, &lower).is_zero() || !gram_block(&lattice, &middle, &upper).is_zero() {
            return Err(Error::InvalidInput(
                "middle slope piece is not orthogonal to the outer pieces".into(),
            ));
        }
        if !middle.is_empty() && gram_block(&lattice, &middle, &middle).inverse().is_err() {
            return Err(Error::InvalidInput("middle slope piece is not unimodular".into()));
        }
        if let Some(f) = &frobenius {
            if f.rows() != r || f.cols() != r {
                return Err(Error::DimensionMismatch("Frobenius matrix".into()));
            }
        }
        Ok(SlopeDecomposition {
            lattice,
            lower,
            middle,
            upper,
            frobenius,
            inverse_basis,
        })
    }

    pub fn lattice(&self) -> &WittLattice {
        &self.lattice
    }

    pub fn height(&self) -> usize {
        self.upper.len()
    }

    pub fn lower(&self) -> &[Vector] {
        &self.lower
    }

    pub fn middle(&self) -> &[Vector] {
        &self.middle
    }

    pub fn upper(&self) -> &[Vector] {
        &self.upper
    }

    pub fn frobenius(&self) -> Option<&Matrix> {
        self.frobenius.as_ref()
    }

    /// Coordinates in the concatenated basis (lower, middle, upper).
    fn coordinates(&self, v: &[PadicScalar]) -> Vector {
        self.inverse_basis.mul_vec(v)
    }
}

/// Data for the supersingular builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularInput {
    lattice: WittLattice,
    isometry: Matrix,
    hodge: Vector,
    ample: Vector,
    artin_invariant: Option<u32>,
    symplectic: Option<bool>,
}

impl SupersingularInput {
    /// Validates that `isometry` preserves the form and fixes the ample
    /// class, and that the Hodge vector is nonzero, isotropic and orthogonal
    /// to the ample class modulo p.
    pub fn new(
        lattice: WittLattice,
        isometry: Matrix,
        hodge: Vector,
        ample: Vector,
        artin_invariant: Option<u32>,
        symplectic: Option<bool>,
    ) -> Result<Self> {
        let r = lattice.rank();
        if hodge.len() != r || ample.len() != r {
            return Err(Error::DimensionMismatch("Hodge or ample vector length".into()));
        }
        if !verify_isometry(&lattice, &isometry) {
            return Err(Error::InvalidInput("matrix does not preserve the Gram form".into()));
        }
        if isometry.mul_vec(&ample) != ample {
            return Err(Error::InvalidInput("ample class is not fixed by the isometry".into()));
        }
        if vector::residue(&hodge).iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidInput("Hodge vector vanishes modulo p".into()));
        }
        if lattice.pairing(&hodge, &hodge).is_unit() {
            return Err(Error::InvalidInput("Hodge vector is not isotropic modulo p".into()));
        }
        if lattice.pairing(&hodge, &ample).is_unit() {
            return Err(Error::InvalidInput(
                "Hodge vector is not orthogonal to the ample class modulo p".into(),
            ));
        }
        Ok(SupersingularInput {
            lattice,
            isometry,
            hodge,
            ample,
            artin_invariant,
            symplectic,
        })
    }

    pub fn lattice(&self) -> &WittLattice {
        &self.lattice
    }

    pub fn isometry(&self) -> &Matrix {
        &self.isometry
    }

    pub fn hodge(&self) -> &[PadicScalar] {
        &self.hodge
    }

    pub fn ample(&self) -> &[PadicScalar] {
        &self.ample
    }

    pub fn artin_invariant(&self) -> Option<u32> {
        self.artin_invariant
    }

    pub fn symplectic(&self) -> Option<bool> {
        self.symplectic
    }

    /// The residue eigenvalue on the Hodge line, checked against the
    /// declared symplectic flag.
    pub fn hodge_eigenvalue(&self) -> Result<PadicScalar> {
        let z = residue_eigenvalue(&self.isometry, &self.hodge).map_err(|_| Error::HodgeLineNotEigen)?;
        if let Some(flag) = self.symplectic {
            if flag != z.is_one() {
                return Err(Error::InvalidInput(
                    "declared symplectic flag disagrees with the Hodge eigenvalue".into(),
                ));
            }
        }
        Ok(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    FiniteHeight,
    NonSymplectic,
    Symplectic,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::FiniteHeight => "finite-height",
            Branch::NonSymplectic => "ss-nonsymplectic",
            Branch::Symplectic => "ss-symplectic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "finite-height" => Some(Branch::FiniteHeight),
            "ss-nonsymplectic" => Some(Branch::NonSymplectic),
            "ss-symplectic" => Some(Branch::Symplectic),
            _ => None,
        }
    }
}

/// A transcript entry beyond the always-checked core (stability, isotropy,
/// reduction to the Hodge line, eigenvalue order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// The generator pairs to zero with every listed vector.
    OrthogonalTo { label: String, vectors: Vec<Vector> },
    /// The generator lies in the span of the listed vectors.
    InSpan { label: String, basis: Vec<Vector> },
    /// A recorded construction coefficient has at least this valuation.
    Valuation {
        label: String,
        value: PadicScalar,
        min: u32,
    },
}

impl Claim {
    pub fn label(&self) -> &str {
        match self {
            Claim::OrthogonalTo { label, .. } | Claim::InSpan { label, .. } | Claim::Valuation { label, .. } => label,
        }
    }
}

/// The isometry-stable line `span(m)` with its transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingCertificate {
    pub branch: Branch,
    pub lattice: WittLattice,
    pub isometry: Matrix,
    pub order: u64,
    pub generator: Vector,
    pub eigenvalue: PadicScalar,
    pub hodge_line: Vector,
    pub claims: Vec<Claim>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

/// Recomputes every claim of `cert` from its lattice, isometry and
/// generator.
pub fn verify_certificate(cert: &LiftingCertificate) -> VerificationReport {
    let l = &cert.lattice;
    let m = &cert.generator;
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool| checks.push(CheckOutcome { name, passed });
    let shapes_ok = m.len() == l.rank() && cert.isometry.rows() == l.rank() && cert.isometry.cols() == l.rank();
    push("shapes".into(), shapes_ok);
    if !shapes_ok {
        return VerificationReport { valid: false, checks };
    }
    push("isometry".into(), verify_isometry(l, &cert.isometry));
    let stable = line_eigenvalue(&cert.isometry, m);
    push("stable".into(), stable.is_some());
    push("eigenvalue".into(), stable.as_ref() == Some(&cert.eigenvalue));
    push(
        "eigenvalue-order".into(),
        cert.order > 0 && cert.eigenvalue.pow(cert.order as u128).is_one(),
    );
    push("isotropic".into(), l.is_isotropic_vector(m));
    push("hodge-line".into(), vector::same_line_mod_p(m, &cert.hodge_line));
    for claim in &cert.claims {
        let passed = match claim {
            Claim::OrthogonalTo { vectors, .. } => vectors
                .iter()
                .all(|v| l.try_pairing(m, v).map(|x| x.is_zero()).unwrap_or(false)),
            Claim::InSpan { basis, .. } => Matrix::from_columns(l.ctx(), l.rank(), basis)
                .and_then(|b| b.solve(m))
                .map(|s| s.is_some())
                .unwrap_or(false),
            Claim::Valuation { value, min, .. } => value.valuation_or_n() >= *min,
        };
        let kind = match claim {
            Claim::OrthogonalTo { .. } => "orthogonal",
            Claim::InSpan { .. } => "span",
            Claim::Valuation { .. } => "valuation",
        };
        push(format!("{kind}:{}", claim.label()), passed);
    }
    let valid = checks.iter().all(|c| c.passed);
    VerificationReport { valid, checks }
}

fn check_order(a: &Matrix, order: u64, p: u64, weak: bool) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    if order.is_multiple_of(p) {
        return Err(if weak {
            Error::NotWeaklyTame { p, order }
        } else {
            Error::NotTame { p, order }
        });
    }
    if !a.pow(order).is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    Ok(())
}

/// Finite-height branch: the eigenvector lift of the Hodge line inside
/// `H_[1+1/h]`, on which `a` has order `order`.
pub fn lift_finite_height(
    sd: &SlopeDecomposition,
    a: &Isometry,
    order: u64,
    hodge_line: &[PadicScalar],
) -> Result<LiftingCertificate> {
    let l = &sd.lattice;
    let ctx = l.ctx().clone();
    if a.lattice() != l {
        return Err(Error::InvalidInput(
            "isometry and slope decomposition use different lattices".into(),
        ));
    }
    if hodge_line.len() != l.rank() {
        return Err(Error::DimensionMismatch("Hodge vector length".into()));
    }
    if order == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    if order.is_multiple_of(ctx.p()) {
        return Err(Error::NotWeaklyTame { p: ctx.p(), order });
    }
    let (h, r) = (sd.height(), l.rank());
    let offset = r - h;
    // the action of A on the top piece, in its own basis
    let mut restricted = Matrix::zeros(&ctx, h, h);
    for (j, u) in sd.upper.iter().enumerate() {
        let coords = sd.coordinates(&a.matrix().mul_vec(u));
        if coords[..offset].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidInput(
                "isometry does not preserve the top slope piece".into(),
            ));
        }
        for i in 0..h {
            restricted.set(i, j, coords[offset + i].clone());
        }
    }
    if !restricted.pow(order).is_identity() {
        return Err(Error::OrderMismatch { order });
    }
    let x = vector::reduce_to(&vector::residue(hodge_line), &ctx)?;
    let coords = sd.coordinates(&x);
    if coords[..offset].iter().any(|c| c.is_unit()) {
        return Err(Error::InvalidInput(
            "Hodge line does not reduce into the top slope piece".into(),
        ));
    }
    let y = vector::residue(&coords[offset..]);
    if y.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput("Hodge vector vanishes modulo p".into()));
    }
    let lift = lift_eigenvector(&restricted, order, &vector::reduce_to(&y, &ctx)?).map_err(|e| match e {
        Error::NotAnEigenvector | Error::ProjectionCollapse => Error::HodgeLineNotEigen,
        other => other,
    })?;
    let mut m = vector::zero(&ctx, r);
    for (c, u) in lift.vector.iter().zip(&sd.upper) {
        m = vector::axpy(&m, c, u);
    }
    let mut claims = vec![Claim::InSpan {
        label: "H[1+1/h]".into(),
        basis: sd.upper.clone(),
    }];
    if !sd.middle.is_empty() {
        claims.push(Claim::OrthogonalTo {
            label: "H[1]".into(),
            vectors: sd.middle.clone(),
        });
    }
    Ok(LiftingCertificate {
        branch: Branch::FiniteHeight,
        lattice: l.clone(),
        isometry: a.matrix().clone(),
        order,
        generator: m,
        eigenvalue: lift.eigenvalue,
        hodge_line: x,
        claims,
    })
}

// first basis vector pairing to a unit with `u`, scaled so the pairing is 1
fn unit_partner(l: &WittLattice, u: &[PadicScalar], candidates: &[Vector]) -> Result<Vector> {
    for b in candidates {
        let s = l.pairing(u, b);
        if s.is_unit() {
            return Ok(vector::scale(&s.inv()?, b));
        }
    }
    Err(Error::NoUnitPartner)
}

/// Supersingular, non-symplectic branch.
pub fn lift_ss_nonsymplectic(inp: &SupersingularInput, order: u64) -> Result<LiftingCertificate> {
    let l = &inp.lattice;
    let ctx = l.ctx().clone();
    let a = &inp.isometry;
    check_order(a, order, ctx.p(), false)?;
    let z0 = inp.hodge_eigenvalue()?;
    if z0.is_one() {
        return Err(Error::SymplecticInput);
    }
    let u = lift_eigenvector(a, order, &inp.hodge).map_err(|e| match e {
        Error::NotAnEigenvector | Error::ProjectionCollapse => Error::HodgeLineNotEigen,
        other => other,
    })?;
    let zeta = u.eigenvalue.clone();
    let space = image_basis(&eigenprojector(a, order, &zeta)?);
    let minus_one = PadicScalar::from_int(&ctx, -1);
    let mut claims = vec![
        Claim::InSpan {
            label: "L_zeta0".into(),
            basis: space.clone(),
        },
        Claim::OrthogonalTo {
            label: "c".into(),
            vectors: vec![inp.ample.clone()],
        },
    ];
    let generator = if zeta == minus_one {
        let v = unit_partner(l, &u.vector, &space)?;
        let lift = isotropic_combination(l, &u.vector, &v)?;
        claims.push(Claim::Valuation {
            label: "a".into(),
            value: lift.a.clone(),
            min: 0,
        });
        lift.w
    } else {
        u.vector
    };
    Ok(LiftingCertificate {
        branch: Branch::NonSymplectic,
        lattice: l.clone(),
        isometry: a.clone(),
        order,
        generator,
        eigenvalue: zeta,
        hodge_line: vector::reduce_to(&vector::residue(&inp.hodge), &ctx)?,
        claims,
    })
}

/// Supersingular, symplectic branch: an isotropic line inside
/// `c^perp` in the invariant part `L_1`.
pub fn lift_ss_symplectic(inp: &SupersingularInput, order: u64) -> Result<LiftingCertificate> {
    let l = &inp.lattice;
    let ctx = l.ctx().clone();
    let a = &inp.isometry;
    let c = &inp.ample;
    check_order(a, order, ctx.p(), false)?;
    let z0 = inp.hodge_eigenvalue()?;
    if !z0.is_one() {
        return Err(Error::NotSymplectic);
    }
    let pair = Matrix::from_columns(&ctx, l.rank(), &[inp.hodge.clone(), c.clone()])?;
    if pair.rank_mod_p() < 2 {
        return Err(Error::IndependenceFailure);
    }
    let one = PadicScalar::one(&ctx);
    let l1 = image_basis(&eigenprojector(a, order, &one)?);
    let u0 = lift_eigenvector(a, order, &inp.hodge)?.vector;
    let cc = l.pairing(c, c);
    let mut claims = vec![
        Claim::InSpan {
            label: "L_1".into(),
            basis: l1.clone(),
        },
        Claim::OrthogonalTo {
            label: "c".into(),
            vectors: vec![c.clone()],
        },
    ];
    let generator = if cc.is_unit() {
        let cc_inv = cc.inv()?;
        let project = |v: &Vector| vector::axpy(v, &-&(&l.pairing(v, c) * &cc_inv), c);
        let u = project(&u0);
        let complement: Vec<Vector> = l1.iter().map(project).collect();
        let complement = image_basis(&Matrix::from_columns(&ctx, l.rank(), &complement)?);
        if complement.len() < 2 {
            return Err(Error::RankTooSmall {
                needed: 2,
                found: complement.len(),
            });
        }
        let v = unit_partner(l, &u, &complement)?;
        isotropic_combination(l, &u, &v)?.w
    } else {
        if l1.len() < 4 {
            return Err(Error::RankTooSmall {
                needed: 4,
                found: l1.len(),
            });
        }
        // u in L_1 with u.v = 0 and u.c = 1
        let conditions = Matrix::from_fn(&ctx, 2, l1.len(), |i, j| {
            let t = if i == 0 { &u0 } else { c };
            l.pairing(t, &l1[j])
        });
        let Some(y) = conditions.solve(&[PadicScalar::zero(&ctx), one.clone()])? else {
            return Err(Error::IndependenceFailure);
        };
        let mut pivot = vector::zero(&ctx, l.rank());
        for (coef, b) in y.iter().zip(&l1) {
            pivot = vector::axpy(&pivot, coef, b);
        }
        let w0 = unit_partner(l, &u0, &l1)?;
        let v = orthogonalize_against(l, c, &u0, &pivot)?;
        let w = orthogonalize_against(l, c, &w0, &pivot)?;
        claims.push(Claim::Valuation {
            label: "a".into(),
            value: v.a.clone(),
            min: 1,
        });
        isotropic_combination(l, &v.vector, &w.vector)?.w
    };
    Ok(LiftingCertificate {
        branch: Branch::Symplectic,
        lattice: l.clone(),
        isometry: a.clone(),
        order,
        generator,
        eigenvalue: one,
        hodge_line: vector::reduce_to(&vector::residue(&inp.hodge), &ctx)?,
        claims,
    })
}

/// Whether one further isometry stabilises the certified line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub index: usize,
    pub stabilizes: bool,
    pub eigenvalue: Option<PadicScalar>,
}

/// Builds the finite-height certificate for `a` and reports, for each of
/// `others`, whether it stabilises the same line.
pub fn universal_line(
    sd: &SlopeDecomposition,
    a: &Isometry,
    order: u64,
    hodge_line: &[PadicScalar],
    others: &[Matrix],
) -> Result<(LiftingCertificate, Vec<StabilityReport>)> {
    let cert = lift_finite_height(sd, a, order, hodge_line)?;
    let reports = others
        .iter()
        .enumerate()
        .map(|(index, b)| {
            let eigenvalue = line_eigenvalue(b, &cert.generator);
            StabilityReport {
                index,
                stabilizes: eigenvalue.is_some(),
                eigenvalue,
            }
        })
        .collect();
    Ok((cert, reports))
}

/// Action of an isometry on the orthogonal complement of a set of
/// algebraic classes, at the working precision. A report only: triviality
/// here says nothing about the characteristic-zero transcendental lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscendentalReport {
    pub rank: usize,
    /// `A` maps the complement into itself.
    pub preserved: bool,
    /// `A` fixes the complement pointwise.
    pub trivial: bool,
}

pub fn transcendental_action(lattice: &WittLattice, a: &Matrix, algebraic: &[Vector]) -> Result<TranscendentalReport> {
    if a.rows() != lattice.rank() || a.cols() != lattice.rank() {
        return Err(Error::DimensionMismatch("isometry size".into()));
    }
    let t = lattice.orthogonal_complement(algebraic)?;
    let images: Vec<Vector> = t.iter().map(|v| a.mul_vec(v)).collect();
    let preserved = images
        .iter()
        .all(|w| algebraic.iter().all(|c| lattice.pairing(w, c).is_zero()));
    let trivial = images.iter().zip(&t).all(|(w, v)| w == v);
    Ok(TranscendentalReport {
        rank: t.len(),
        preserved,
        trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;
    use std::sync::Arc;

    fn v(ctx: &Arc<RingContext>, xs: &[i64]) -> Vector {
        vector::from_ints(ctx, xs)
    }

    fn toy_slopes(ctx: &Arc<RingContext>) -> SlopeDecomposition {
        // basis: lower e0, middle e1 e2, upper e3
        let l = WittLattice::from_ints(ctx, 4, &[0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0]).unwrap();
        SlopeDecomposition::new(
            l,
            vec![v(ctx, &[1, 0, 0, 0])],
            vec![v(ctx, &[0, 1, 0, 0]), v(ctx, &[0, 0, 1, 0])],
            vec![v(ctx, &[0, 0, 0, 1])],
            None,
        )
        .unwrap()
    }

    #[test]
    fn finite_height_order_three() {
        let ctx = RingContext::prime_field(7, 2).unwrap();
        let sd = toy_slopes(&ctx);
        // zeta = 18, zeta^-1 = 30 mod 49
        let a = Matrix::from_ints(&ctx, 4, 4, &[30, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 18]).unwrap();
        let iso = Isometry::new(sd.lattice().clone(), a, Some(3)).unwrap();
        let cert = lift_finite_height(&sd, &iso, 3, &v(&ctx, &[0, 0, 0, 1])).unwrap();
        assert_eq!(cert.eigenvalue, PadicScalar::from_int(&ctx, 18));
        assert_eq!(cert.generator, v(&ctx, &[0, 0, 0, 1]));
        assert!(verify_certificate(&cert).valid);
        let scaled = LiftingCertificate {
            generator: vector::scale(&PadicScalar::from_int(&ctx, 3), &cert.generator),
            ..cert.clone()
        };
        assert!(verify_certificate(&scaled).valid);
        let err = lift_finite_height(&sd, &iso, 14, &v(&ctx, &[0, 0, 0, 1])).unwrap_err();
        assert_eq!(err, Error::NotWeaklyTame { p: 7, order: 14 });
    }

    #[test]
    fn finite_height_identity() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let sd = toy_slopes(&ctx);
        let iso = Isometry::new(sd.lattice().clone(), Matrix::identity(&ctx, 4), Some(1)).unwrap();
        let cert = lift_finite_height(&sd, &iso, 1, &v(&ctx, &[0, 0, 0, 2])).unwrap();
        assert!(cert.eigenvalue.is_one());
        assert!(verify_certificate(&cert).valid);
    }

    fn minus_one_input(ctx: &Arc<RingContext>) -> SupersingularInput {
        // L_-1 = span(e0, e1) with Gram [[5,1],[1,0]]; L_1 = span(e2, e3) hyperbolic
        let l = WittLattice::from_ints(ctx, 4, &[5, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]).unwrap();
        let a = Matrix::from_ints(ctx, 4, 4, &[-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        SupersingularInput::new(l, a, v(ctx, &[1, 0, 0, 0]), v(ctx, &[0, 0, 1, 1]), None, Some(false)).unwrap()
    }

    #[test]
    fn nonsymplectic_minus_one() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let inp = minus_one_input(&ctx);
        let cert = lift_ss_nonsymplectic(&inp, 2).unwrap();
        assert_eq!(cert.generator, v(&ctx, &[1, 60, 0, 0]));
        assert_eq!(cert.eigenvalue, PadicScalar::from_int(&ctx, -1));
        assert!(verify_certificate(&cert).valid);
        assert_eq!(lift_ss_symplectic(&inp, 2), Err(Error::NotSymplectic));
    }

    #[test]
    fn identity_is_symplectic() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let base = minus_one_input(&ctx);
        let inp = SupersingularInput::new(
            base.lattice().clone(),
            Matrix::identity(&ctx, 4),
            base.hodge().to_vec(),
            base.ample().to_vec(),
            None,
            None,
        )
        .unwrap();
        assert_eq!(lift_ss_nonsymplectic(&inp, 1), Err(Error::SymplecticInput));
    }

    #[test]
    fn perturbation_breaks_certificate() {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let cert = lift_ss_nonsymplectic(&minus_one_input(&ctx), 2).unwrap();
        let mut bad = cert.clone();
        bad.generator[1] = &bad.generator[1] + &PadicScalar::from_int(&ctx, 25);
        let report = verify_certificate(&bad);
        assert!(!report.valid);
        assert!(report.failures().contains(&"isotropic"));
    }

    #[test]
    fn transcendental_report() {
        let ctx = RingContext::prime_field(5, 2).unwrap();
        // U + U, algebraic classes span the first copy
        let l = WittLattice::from_ints(&ctx, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]).unwrap();
        let alg = [v(&ctx, &[1, 0, 0, 0]), v(&ctx, &[0, 1, 0, 0])];
        let swap = Matrix::from_ints(&ctx, 4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]).unwrap();
        let rep = transcendental_action(&l, &swap, &alg).unwrap();
        assert_eq!((rep.rank, rep.preserved, rep.trivial), (2, true, true));
        let neg = Matrix::from_ints(&ctx, 4, 4, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1]).unwrap();
        let rep = transcendental_action(&l, &neg, &alg).unwrap();
        assert!(rep.preserved && !rep.trivial);
    }
}
