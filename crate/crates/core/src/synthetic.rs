//! Seeded generators for test and demo inputs: random scalars and
//! matrices, tame isometries with known eigenstructure, skew connections,
//! and a fixed corpus of lifting problems covering every builder branch.

use std::sync::Arc;

use rand::Rng;

use crate::crystal::ConnectionData;
use crate::error::{Error, Result};
use crate::lattice::WittLattice;
use crate::lift::{
    lift_finite_height, lift_ss_nonsymplectic, lift_ss_symplectic, Branch, LiftingCertificate, SlopeDecomposition,
    SupersingularInput,
};
use crate::matrix::{vector, Matrix, Vector};
use crate::period::PeriodFrame;
use crate::ring::{nth_roots_of_unity, PadicScalar, RingContext};
use crate::spectral::Isometry;

pub fn random_scalar<R: Rng + ?Sized>(ctx: &Arc<RingContext>, rng: &mut R) -> PadicScalar {
    let pn = ctx.modulus_integer() as i64;
    let coeffs: Vec<i64> = (0..ctx.m()).map(|_| rng.gen_range(0..pn)).collect();
    PadicScalar::from_coeffs(ctx, &coeffs).expect("m coefficients")
}

pub fn random_unit<R: Rng + ?Sized>(ctx: &Arc<RingContext>, rng: &mut R) -> PadicScalar {
    loop {
        let x = random_scalar(ctx, rng);
        if x.is_unit() {
            return x;
        }
    }
}

/// Uniform element of `p^k W_n`.
pub fn random_multiple<R: Rng + ?Sized>(ctx: &Arc<RingContext>, k: u32, rng: &mut R) -> PadicScalar {
    random_scalar(ctx, rng).mul_p_power(k)
}

pub fn random_vector<R: Rng + ?Sized>(ctx: &Arc<RingContext>, len: usize, rng: &mut R) -> Vector {
    (0..len).map(|_| random_scalar(ctx, rng)).collect()
}

/// Uniform coordinates `a_2, ..., a_(r-1)` in `pW_n`.
pub fn random_period_coordinates<R: Rng + ?Sized>(ctx: &Arc<RingContext>, len: usize, rng: &mut R) -> Vector {
    (0..len).map(|_| random_multiple(ctx, 1, rng)).collect()
}

/// Random matrix invertible over `W_n`.
pub fn random_invertible<R: Rng + ?Sized>(ctx: &Arc<RingContext>, r: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_entries(ctx, r, r, random_vector(ctx, r * r, rng)).expect("square");
        if m.det().is_unit() {
            return m;
        }
    }
}

/// Random symmetric matrix with unit determinant, `P^T D P` for a random
/// invertible `P` and diagonal of units.
pub fn random_unimodular_gram<R: Rng + ?Sized>(ctx: &Arc<RingContext>, r: usize, rng: &mut R) -> Matrix {
    let p = random_invertible(ctx, r, rng);
    let mut d = Matrix::zeros(ctx, r, r);
    for i in 0..r {
        d.set(i, i, random_unit(ctx, rng));
    }
    p.transpose().mul(&d).mul(&p)
}

/// A random isometry `A` with `A^order = 1` of a random perfect lattice of
/// rank `r`: a block-diagonal model (hyperbolic planes carrying
/// `diag(z, z^-1)`, unit lines carrying `+-1`) conjugated by a random
/// change of basis. The context must contain the `order`-th roots of unity.
pub fn random_tame_isometry<R: Rng + ?Sized>(
    ctx: &Arc<RingContext>,
    r: usize,
    order: u64,
    rng: &mut R,
) -> Result<Isometry> {
    if r == 0 {
        return Err(Error::InvalidInput("rank must be positive".into()));
    }
    let roots = nth_roots_of_unity(ctx, order)?;
    let one = PadicScalar::one(ctx);
    let minus_one = -&one;
    let signs: Vec<&PadicScalar> = roots.iter().filter(|z| **z == one || **z == minus_one).collect();
    let generic: Vec<&PadicScalar> = roots.iter().filter(|z| **z != one && **z != minus_one).collect();
    let primitive = roots.iter().find(|z| (1..order).all(|k| !z.pow(k as u128).is_one()));
    let mut g0 = Matrix::zeros(ctx, r, r);
    let mut d = Matrix::zeros(ctx, r, r);
    let mut i = 0;
    let mut first = true;
    while i < r {
        let want_pair = r - i >= 2 && !generic.is_empty() && (first || rng.gen_bool(0.6));
        if want_pair {
            let z = match (first, primitive) {
                (true, Some(z)) if *z != one && *z != minus_one => z.clone(),
                _ => generic[rng.gen_range(0..generic.len())].clone(),
            };
            g0.set(i, i + 1, PadicScalar::one(ctx));
            g0.set(i + 1, i, PadicScalar::one(ctx));
            d.set(i + 1, i + 1, z.inv()?);
            d.set(i, i, z);
            i += 2;
        } else {
            g0.set(i, i, random_unit(ctx, rng));
            d.set(i, i, signs[rng.gen_range(0..signs.len())].clone());
            i += 1;
        }
        first = false;
    }
    let p = random_invertible(ctx, r, rng);
    let a = p.inverse()?.mul(&d).mul(&p);
    let g = p.transpose().mul(&g0).mul(&p);
    Isometry::new(WittLattice::new(g)?, a, None)
}

/// Eichler transvection `y -> y + (y.e) x - (y.x) e - (x.x)/2 (y.e) e` for
/// isotropic `e` and `x` orthogonal to `e`; an isometry.
pub fn eichler_transform(l: &WittLattice, e: &[PadicScalar], x: &[PadicScalar]) -> Result<Matrix> {
    let ctx = l.ctx();
    let half = PadicScalar::from_int(ctx, 2).inv()?;
    let xx_half = &l.norm(x) * &half;
    let r = l.rank();
    let cols: Vec<Vector> = (0..r)
        .map(|j| {
            let y = vector::basis(ctx, r, j);
            let ye = l.pairing(&y, e);
            let yx = l.pairing(&y, x);
            let mut out = vector::axpy(&y, &ye, x);
            out = vector::axpy(&out, &-&yx, e);
            vector::axpy(&out, &-&(&xx_half * &ye), e)
        })
        .collect();
    Matrix::from_columns(ctx, r, &cols)
}

/// Random frame `[[0,0,1],[0,B,0],[1,0,0]]` with `B` random unimodular of
/// rank `d`, and commuting skew connection matrices `D_i = Q N_i Q^-1`.
/// Here `N_i` sends `v_1 -> x_i`, a middle `y -> -(x_i.y) v_r`, and
/// `v_r -> 0`, with `x_i = e_i + p(random)`; `Q` is a product of Eichler
/// transforms congruent to the identity mod p. The transversality matrix is
/// therefore the identity mod p.
pub fn random_connection<R: Rng + ?Sized>(ctx: &Arc<RingContext>, d: usize, rng: &mut R) -> Result<ConnectionData> {
    let r = d + 2;
    let middle = WittLattice::new(random_unimodular_gram(ctx, d, rng))?;
    let frame = PeriodFrame::hyperbolic(&middle)?;
    let l = frame.lattice().clone();
    let embed = |m: &Vector| -> Vector {
        let mut v = vector::zero(ctx, r);
        v[1..r - 1].clone_from_slice(m);
        v
    };
    let mut nilpotents = Vec::with_capacity(d);
    for i in 0..d {
        let noise: Vector = (0..d).map(|_| random_multiple(ctx, 1, rng)).collect();
        let x = vector::add(&vector::basis(ctx, d, i), &noise);
        let xv = embed(&x);
        let cols: Vec<Vector> = (0..r)
            .map(|j| {
                if j == 0 {
                    xv.clone()
                } else if j == r - 1 {
                    vector::zero(ctx, r)
                } else {
                    let s = -&l.pairing(&xv, &vector::basis(ctx, r, j));
                    vector::scale(&s, &vector::basis(ctx, r, r - 1))
                }
            })
            .collect();
        nilpotents.push(Matrix::from_columns(ctx, r, &cols)?);
    }
    let v1 = vector::basis(ctx, r, 0);
    let vr = vector::basis(ctx, r, r - 1);
    let x1: Vector = embed(&(0..d).map(|_| random_multiple(ctx, 1, rng)).collect::<Vec<_>>());
    let x2: Vector = embed(&(0..d).map(|_| random_multiple(ctx, 1, rng)).collect::<Vec<_>>());
    let q = eichler_transform(&l, &v1, &x1)?.mul(&eichler_transform(&l, &vr, &x2)?);
    let q_inv = q.inverse()?;
    let matrices = nilpotents.iter().map(|n| q.mul(n).mul(&q_inv)).collect();
    ConnectionData::new(frame, matrices)
}

/// Returns a copy of `cert` whose generator is moved by `p^(n-1) r`, with
/// `r` redrawn until the move is a genuine corruption: perturbations with
/// `r` in the residue eigenspace and orthogonal to the generator mod p
/// produce another valid line and are skipped.
pub fn perturb_certificate<R: Rng + ?Sized>(cert: &LiftingCertificate, rng: &mut R) -> LiftingCertificate {
    let ctx = cert.lattice.ctx().clone();
    let n = ctx.n();
    let res = ctx.residue();
    let a_bar = cert.isometry.reduce_to(&res).expect("residue");
    let lambda_bar = cert.eigenvalue.reduce_to(&res).expect("residue");
    let m_bar = vector::reduce_to(&cert.generator, &res).expect("residue");
    let g_bar = cert.lattice.gram().reduce_to(&res).expect("residue");
    loop {
        let r = random_vector(&ctx, cert.generator.len(), rng);
        let r_bar = vector::reduce_to(&r, &res).expect("residue");
        if vector::is_zero(&r_bar) {
            continue;
        }
        let stable = vector::is_zero(&vector::sub(
            &a_bar.mul_vec(&r_bar),
            &vector::scale(&lambda_bar, &r_bar),
        ));
        let orthogonal = m_bar
            .iter()
            .zip(g_bar.mul_vec(&r_bar))
            .fold(PadicScalar::zero(&res), |acc, (x, y)| &acc + &(x * &y))
            .is_zero();
        if stable && orthogonal {
            continue;
        }
        let shift = vector::scale(&PadicScalar::one(&ctx).mul_p_power(n - 1), &r);
        let mut out = cert.clone();
        out.generator = vector::add(&cert.generator, &shift);
        return out;
    }
}

/// One lifting problem of the regression corpus.
#[derive(Debug, Clone)]
pub enum LiftProblem {
    FiniteHeight {
        slopes: SlopeDecomposition,
        isometry: Isometry,
        order: u64,
        hodge: Vector,
    },
    Supersingular {
        input: SupersingularInput,
        order: u64,
        branch: Branch,
    },
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub problem: LiftProblem,
}

impl CorpusCase {
    pub fn branch(&self) -> Branch {
        match &self.problem {
            LiftProblem::FiniteHeight { .. } => Branch::FiniteHeight,
            LiftProblem::Supersingular { branch, .. } => *branch,
        }
    }

    pub fn build(&self) -> Result<LiftingCertificate> {
        match &self.problem {
            LiftProblem::FiniteHeight {
                slopes,
                isometry,
                order,
                hodge,
            } => lift_finite_height(slopes, isometry, *order, hodge),
            LiftProblem::Supersingular { input, order, branch } => match branch {
                Branch::NonSymplectic => lift_ss_nonsymplectic(input, *order),
                Branch::Symplectic => lift_ss_symplectic(input, *order),
                Branch::FiniteHeight => Err(Error::InvalidInput("supersingular problem tagged finite-height".into())),
            },
        }
    }
}

fn ints(ctx: &Arc<RingContext>, xs: &[i64]) -> Vector {
    vector::from_ints(ctx, xs)
}

fn block_diag(ctx: &Arc<RingContext>, blocks: &[Matrix]) -> Matrix {
    let r: usize = blocks.iter().map(|b| b.rows()).sum();
    let mut out = Matrix::zeros(ctx, r, r);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    out
}

fn mat(ctx: &Arc<RingContext>, r: usize, xs: &[i64]) -> Matrix {
    Matrix::from_ints(ctx, r, r, xs).expect("square literal")
}

fn diag_scalars(ctx: &Arc<RingContext>, d: &[PadicScalar]) -> Matrix {
    let mut out = Matrix::zeros(ctx, d.len(), d.len());
    for (i, x) in d.iter().enumerate() {
        out.set(i, i, x.clone());
    }
    out
}

fn root(ctx: &Arc<RingContext>, order: u64) -> PadicScalar {
    nth_roots_of_unity(ctx, order)
        .expect("roots exist")
        .into_iter()
        .find(|z| (1..order).all(|k| !z.pow(k as u128).is_one()))
        .expect("primitive root")
}

/// Rewrites a problem in the basis given by the columns of `p`.
fn conjugate_ss(inp: &SupersingularInput, p: &Matrix) -> Result<SupersingularInput> {
    let p_inv = p.inverse()?;
    SupersingularInput::new(
        WittLattice::new(p.transpose().mul(inp.lattice().gram()).mul(p))?,
        p_inv.mul(inp.isometry()).mul(p),
        p_inv.mul_vec(inp.hodge()),
        p_inv.mul_vec(inp.ample()),
        inp.artin_invariant(),
        inp.symplectic(),
    )
}

fn conjugate_fh(
    slopes: &SlopeDecomposition,
    iso: &Isometry,
    hodge: &[PadicScalar],
    p: &Matrix,
) -> Result<(SlopeDecomposition, Isometry, Vector)> {
    let p_inv = p.inverse()?;
    let l = WittLattice::new(p.transpose().mul(slopes.lattice().gram()).mul(p))?;
    let map = |vs: &[Vector]| vs.iter().map(|v| p_inv.mul_vec(v)).collect::<Vec<_>>();
    let sd = SlopeDecomposition::new(
        l.clone(),
        map(slopes.lower()),
        map(slopes.middle()),
        map(slopes.upper()),
        None,
    )?;
    let a = Isometry::new(l, p_inv.mul(iso.matrix()).mul(p), None)?;
    Ok((sd, a, p_inv.mul_vec(hodge)))
}

fn fh_case(
    ctx: &Arc<RingContext>,
    h: usize,
    middle_gram: &Matrix,
    upper_action: &[PadicScalar],
    middle_action: &Matrix,
    order: u64,
) -> Result<(SlopeDecomposition, Isometry, Vector)> {
    // basis: lower (h), middle, upper (h); lower_i . upper_i = 1
    let k = middle_gram.rows();
    let r = 2 * h + k;
    let mut g = Matrix::zeros(ctx, r, r);
    for i in 0..h {
        g.set(i, r - h + i, PadicScalar::one(ctx));
        g.set(r - h + i, i, PadicScalar::one(ctx));
    }
    for i in 0..k {
        for j in 0..k {
            g.set(h + i, h + j, middle_gram.get(i, j).clone());
        }
    }
    let lower_action: Vec<PadicScalar> = upper_action.iter().map(|z| z.inv()).collect::<Result<_>>()?;
    let a = block_diag(
        ctx,
        &[
            diag_scalars(ctx, &lower_action),
            middle_action.clone(),
            diag_scalars(ctx, upper_action),
        ],
    );
    let l = WittLattice::new(g)?;
    let basis = |i: usize| vector::basis(ctx, r, i);
    let sd = SlopeDecomposition::new(
        l.clone(),
        (0..h).map(basis).collect(),
        (h..h + k).map(basis).collect(),
        (r - h..r).map(basis).collect(),
        None,
    )?;
    let iso = Isometry::new(l, a, Some(order))?;
    Ok((sd, iso, basis(r - h)))
}

/// The fixed regression corpus: finite-height problems, non-symplectic
/// problems with `zeta_0` of order 3, 4, 6 and `zeta_0 = -1`, and
/// symplectic problems with unit and with p-divisible `c.c`. A few cases
/// are conjugated by seeded random bases so that nothing is diagonal.
pub fn lift_corpus<R: Rng + ?Sized>(rng: &mut R) -> Result<Vec<CorpusCase>> {
    let mut out = Vec::new();
    let mut push = |name: &str, problem: LiftProblem| {
        out.push(CorpusCase {
            name: name.to_string(),
            problem,
        })
    };

    // finite height
    {
        let ctx = RingContext::prime_field(7, 2)?;
        let z = root(&ctx, 3);
        let (sd, iso, hodge) = fh_case(&ctx, 1, &Matrix::identity(&ctx, 2), &[z], &Matrix::identity(&ctx, 2), 3)?;
        push(
            "fh-h1-order3-p7",
            LiftProblem::FiniteHeight {
                slopes: sd.clone(),
                isometry: iso.clone(),
                order: 3,
                hodge: hodge.clone(),
            },
        );
        let p = random_invertible(&ctx, 4, rng);
        let (sd, iso, hodge) = conjugate_fh(&sd, &iso, &hodge, &p)?;
        push(
            "fh-h1-order3-p7-conjugated",
            LiftProblem::FiniteHeight {
                slopes: sd,
                isometry: iso,
                order: 3,
                hodge,
            },
        );
    }
    {
        let ctx = RingContext::prime_field(5, 3)?;
        let z = root(&ctx, 4);
        let swap = mat(&ctx, 2, &[0, 1, 1, 0]);
        let (sd, iso, hodge) = fh_case(&ctx, 1, &mat(&ctx, 2, &[0, 1, 1, 0]), &[z], &swap, 4)?;
        push(
            "fh-h1-order4-p5",
            LiftProblem::FiniteHeight {
                slopes: sd,
                isometry: iso,
                order: 4,
                hodge,
            },
        );
    }
    {
        let ctx = RingContext::prime_field(7, 3)?;
        let z = root(&ctx, 3);
        let z2 = z.pow(2);
        let (sd, iso, hodge) = fh_case(
            &ctx,
            2,
            &mat(&ctx, 2, &[1, 0, 0, 3]),
            &[z, z2],
            &Matrix::identity(&ctx, 2),
            3,
        )?;
        let p = random_invertible(&ctx, 6, rng);
        let (sd, iso, hodge) = conjugate_fh(&sd, &iso, &hodge, &p)?;
        push(
            "fh-h2-order3-p7-conjugated",
            LiftProblem::FiniteHeight {
                slopes: sd,
                isometry: iso,
                order: 3,
                hodge,
            },
        );
    }

    // supersingular, non-symplectic
    let ss =
        |input: SupersingularInput, order: u64, branch: Branch| LiftProblem::Supersingular { input, order, branch };
    {
        // zeta_0 = -1 on span(e0, e1) with Gram [[5,1],[1,0]]; c in the hyperbolic L_1
        let ctx = RingContext::prime_field(5, 3)?;
        let l = WittLattice::new(block_diag(
            &ctx,
            &[mat(&ctx, 2, &[5, 1, 1, 0]), mat(&ctx, 2, &[0, 1, 1, 0])],
        ))?;
        let a = block_diag(&ctx, &[mat(&ctx, 2, &[-1, 0, 0, -1]), Matrix::identity(&ctx, 2)]);
        let inp = SupersingularInput::new(
            l,
            a,
            ints(&ctx, &[1, 0, 0, 0]),
            ints(&ctx, &[0, 0, 1, 1]),
            None,
            Some(false),
        )?;
        push("ns-minus-one-p5", ss(inp.clone(), 2, Branch::NonSymplectic));
        let p = random_invertible(&ctx, 4, rng);
        push(
            "ns-minus-one-p5-conjugated",
            ss(conjugate_ss(&inp, &p)?, 2, Branch::NonSymplectic),
        );
    }
    {
        let ctx = RingContext::prime_field(3, 4)?;
        let l = WittLattice::new(block_diag(&ctx, &[mat(&ctx, 2, &[3, 1, 1, 0]), mat(&ctx, 1, &[1])]))?;
        let a = block_diag(&ctx, &[mat(&ctx, 2, &[-1, 0, 0, -1]), mat(&ctx, 1, &[1])]);
        let inp = SupersingularInput::new(l, a, ints(&ctx, &[1, 0, 0]), ints(&ctx, &[0, 0, 1]), None, None)?;
        push("ns-minus-one-p3-n4", ss(inp, 2, Branch::NonSymplectic));
    }
    for (p, n, order) in [(5u64, 3u32, 4u64), (7, 2, 3), (7, 3, 6), (13, 2, 12)] {
        let ctx = RingContext::prime_field(p, n)?;
        let z = root(&ctx, order);
        let l = WittLattice::new(block_diag(
            &ctx,
            &[mat(&ctx, 2, &[0, 1, 1, 0]), mat(&ctx, 2, &[0, 1, 1, 0])],
        ))?;
        let a = block_diag(
            &ctx,
            &[diag_scalars(&ctx, &[z.clone(), z.inv()?]), Matrix::identity(&ctx, 2)],
        );
        let inp = SupersingularInput::new(
            l,
            a,
            ints(&ctx, &[1, 0, 0, 0]),
            ints(&ctx, &[0, 0, 1, 1]),
            None,
            Some(false),
        )?;
        let inp = if order == 6 {
            conjugate_ss(&inp, &random_invertible(&ctx, 4, rng))?
        } else {
            inp
        };
        push(&format!("ns-order{order}-p{p}"), ss(inp, order, Branch::NonSymplectic));
    }

    // supersingular, symplectic with c.c a unit
    {
        let ctx = RingContext::prime_field(5, 3)?;
        let l = WittLattice::new(block_diag(
            &ctx,
            &[
                mat(&ctx, 2, &[5, 1, 1, 0]),
                mat(&ctx, 1, &[1]),
                mat(&ctx, 2, &[0, 1, 1, 0]),
                mat(&ctx, 1, &[2]),
            ],
        ))?;
        let a = block_diag(
            &ctx,
            &[Matrix::identity(&ctx, 3), mat(&ctx, 3, &[-1, 0, 0, 0, -1, 0, 0, 0, -1])],
        );
        let inp = SupersingularInput::new(
            l,
            a,
            ints(&ctx, &[1, 0, 0, 0, 0, 0]),
            ints(&ctx, &[0, 0, 1, 0, 0, 0]),
            Some(2),
            Some(true),
        )?;
        push("sy-unit-p5", ss(inp.clone(), 2, Branch::Symplectic));
        let p = random_invertible(&ctx, 6, rng);
        push(
            "sy-unit-p5-conjugated",
            ss(conjugate_ss(&inp, &p)?, 2, Branch::Symplectic),
        );
    }
    {
        let ctx = RingContext::prime_field(7, 3)?;
        let z = root(&ctx, 3);
        let l = WittLattice::new(block_diag(
            &ctx,
            &[
                mat(&ctx, 2, &[7, 1, 1, 0]),
                mat(&ctx, 1, &[3]),
                mat(&ctx, 2, &[0, 1, 1, 0]),
            ],
        ))?;
        let a = block_diag(
            &ctx,
            &[Matrix::identity(&ctx, 3), diag_scalars(&ctx, &[z.clone(), z.inv()?])],
        );
        let inp = SupersingularInput::new(
            l,
            a,
            ints(&ctx, &[1, 0, 0, 0, 0]),
            ints(&ctx, &[0, 0, 1, 0, 0]),
            Some(2),
            Some(true),
        )?;
        push("sy-unit-order3-p7", ss(inp, 3, Branch::Symplectic));
    }

    // supersingular, symplectic with p | c.c
    for (p, n) in [(5u64, 3u32), (3, 4)] {
        let ctx = RingContext::prime_field(p, n)?;
        let q = p as i64;
        // L_1 = span(f0..f3): f0.f0 = p, f0.f1 = 1, f2.f2 = p, f2.f3 = 1, f0.f2 = p
        let l1 = mat(&ctx, 4, &[q, 1, q, 0, 1, 0, 0, 0, q, 0, q, 1, 0, 0, 1, 0]);
        let l = WittLattice::new(block_diag(&ctx, &[l1, mat(&ctx, 2, &[0, 1, 1, 0])]))?;
        let a = block_diag(&ctx, &[Matrix::identity(&ctx, 4), mat(&ctx, 2, &[-1, 0, 0, -1])]);
        let inp = SupersingularInput::new(
            l,
            a,
            ints(&ctx, &[1, 0, 0, 0, 0, 0]),
            ints(&ctx, &[0, 0, 1, 0, 0, 0]),
            Some(3),
            Some(true),
        )?;
        push(&format!("sy-divisible-p{p}"), ss(inp.clone(), 2, Branch::Symplectic));
        if p == 5 {
            let pm = random_invertible(&ctx, 6, rng);
            push(
                "sy-divisible-p5-conjugated",
                ss(conjugate_ss(&inp, &pm)?, 2, Branch::Symplectic),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::verify_certificate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_builds_and_verifies() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let corpus = lift_corpus(&mut rng).unwrap();
        assert!(corpus.len() >= 12);
        for case in &corpus {
            let cert = case.build().unwrap_or_else(|e| panic!("{}: {e}", case.name));
            let report = verify_certificate(&cert);
            assert!(report.valid, "{}: {:?}", case.name, report.failures());
            assert_eq!(cert.branch, case.branch());
        }
    }

    #[test]
    fn random_connections_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in 1..=3 {
            let ctx = RingContext::prime_field(5, 3).unwrap();
            let conn = random_connection(&ctx, d, &mut rng).unwrap();
            assert!(conn.is_skew());
            assert!(conn.transversality_matrix().residue().is_identity());
        }
    }

    #[test]
    fn random_isometries_have_the_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ctx = RingContext::for_roots_of_unity(7, 3, 12).unwrap();
        for r in 1..=6 {
            let iso = random_tame_isometry(&ctx, r, 12, &mut rng).unwrap();
            assert!(iso.matrix().pow(12).is_identity());
        }
    }
}
